#include "qcd/blackhole.hpp"

#include <algorithm>
#include <limits>

#include "qcd/errors.hpp"

namespace qcd::blackhole {

SearchRegion SearchRegion::from_bounds(const Eigen::VectorXd& lo, const Eigen::VectorXd& hi) {
  if (lo.size() != hi.size()) throw LengthMismatch("SearchRegion: bound size mismatch");
  for (Eigen::Index j = 0; j < lo.size(); ++j)
    if (lo(j) > hi(j)) throw ValidationError("SearchRegion: lower exceeds upper");
  SearchRegion r;
  r.lower = lo;
  r.upper = hi;
  r.frozen.assign(static_cast<std::size_t>(lo.size()), false);
  return r;
}

bool SearchRegion::all_frozen() const {
  for (bool f : frozen)
    if (!f) return false;
  return !frozen.empty();
}

DesignVector SearchRegion::clamp(const DesignVector& p) const {
  return p.cwiseMax(lower).cwiseMin(upper);
}

bool SearchRegion::contains(const DesignVector& p) const {
  return (p.array() >= lower.array()).all() && (p.array() <= upper.array()).all();
}

std::vector<DesignVector> init_population(const SearchRegion& region, int n, Rng& rng) {
  std::vector<DesignVector> pop(static_cast<std::size_t>(n));
  for (auto& p : pop) {
    p.resize(region.size());
    for (Eigen::Index j = 0; j < region.size(); ++j)
      p(j) = rng.uniform(region.lower(j), region.upper(j));
  }
  return pop;
}

int bh_step(std::vector<DesignVector>& pop, const std::vector<double>& costs,
            const SearchRegion& region, Rng& rng) {
  if (pop.size() != costs.size() || pop.empty())
    throw LengthMismatch("bh_step: population/cost size mismatch");
  int best = 0;
  for (std::size_t i = 1; i < pop.size(); ++i)
    if (costs[i] < costs[static_cast<std::size_t>(best)]) best = static_cast<int>(i);

  const DesignVector star = pop[static_cast<std::size_t>(best)];
  for (std::size_t r = 0; r < pop.size(); ++r) {
    if (static_cast<int>(r) == best) continue;
    DesignVector& p = pop[r];
    for (Eigen::Index j = 0; j < p.size(); ++j) {
      const double xi = rng.uniform01();
      p(j) += xi * (star(j) - p(j));
    }
    p = region.clamp(p);
  }
  return best;
}

SearchRegion recalibrate(const std::vector<DesignVector>& pop, const SearchRegion& prev,
                         const Eigen::VectorXd& thresholds) {
  if (pop.empty()) throw LengthMismatch("recalibrate: empty population");
  SearchRegion next = prev;
  for (Eigen::Index j = 0; j < prev.size(); ++j) {
    if (prev.frozen[static_cast<std::size_t>(j)]) continue;
    double lo = pop.front()(j), hi = pop.front()(j);
    for (const auto& p : pop) {
      lo = std::min(lo, p(j));
      hi = std::max(hi, p(j));
    }
    next.lower(j) = lo;
    next.upper(j) = hi;
    if (hi - lo <= thresholds(j)) next.frozen[static_cast<std::size_t>(j)] = true;
  }
  return next;
}

CalibrationResult calibrate(const Objective& objective, const SearchRegion& region,
                            const BhSettings& settings, Rng& rng, const Executor& exec) {
  CalibrationResult result;
  std::vector<DesignVector> pop = init_population(region, settings.population, rng);
  result.region = recalibrate(pop, region, settings.freeze_thresholds);

  std::vector<double> costs(pop.size());
  auto evaluate = [&] {
    exec.parallel_for(pop.size(), [&](std::size_t i) { costs[i] = objective(pop[i]); });
    result.evaluations += static_cast<int>(pop.size());
  };

  evaluate();
  result.best_cost = std::numeric_limits<double>::infinity();
  auto track_best = [&] {
    for (std::size_t i = 0; i < pop.size(); ++i) {
      if (costs[i] < result.best_cost) {
        result.best_cost = costs[i];
        result.best_point = pop[i];
      }
    }
  };
  track_best();

  for (int it = 0; it < settings.max_iters && !result.region.all_frozen(); ++it) {
    bh_step(pop, costs, result.region, rng);
    evaluate();
    track_best();
    result.region = recalibrate(pop, result.region, settings.freeze_thresholds);
    result.iterations = it + 1;
  }
  return result;
}

}  // namespace qcd::blackhole
