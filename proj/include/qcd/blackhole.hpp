#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <vector>

#include "qcd/util.hpp"

namespace qcd::blackhole {

using DesignVector = Eigen::VectorXd;

// Per-parameter closed intervals; a coordinate freezes once its width drops
// to the calibration threshold and keeps its interval from then on.
struct SearchRegion {
  Eigen::VectorXd lower;
  Eigen::VectorXd upper;
  std::vector<bool> frozen;

  static SearchRegion from_bounds(const Eigen::VectorXd& lo, const Eigen::VectorXd& hi);
  Eigen::Index size() const { return lower.size(); }
  double width(Eigen::Index j) const { return upper(j) - lower(j); }
  bool all_frozen() const;
  DesignVector clamp(const DesignVector& p) const;
  bool contains(const DesignVector& p) const;
};

struct BhSettings {
  int population = 20;
  int max_iters = 100;
  Eigen::VectorXd freeze_thresholds;  // delta_j, one per parameter
  std::uint64_t seed = 0;             // unused when an external Rng is supplied
};

struct CalibrationResult {
  SearchRegion region;
  DesignVector best_point;
  double best_cost = 0.0;
  int iterations = 0;   // attraction rounds actually executed
  int evaluations = 0;  // objective calls consumed
};

// n i.i.d. uniform draws per coordinate inside the region.
std::vector<DesignVector> init_population(const SearchRegion& region, int n, Rng& rng);

// One attraction step: everyone but the best moves toward the best with a
// fresh uniform coefficient per coordinate, then is clamped to the region.
// Returns the index of the best (lowest-cost, ties to lowest index) candidate.
int bh_step(std::vector<DesignVector>& pop, const std::vector<double>& costs,
            const SearchRegion& region, Rng& rng);

// Contract each non-frozen interval to the population min/max; freeze
// coordinates whose width reaches the threshold.
SearchRegion recalibrate(const std::vector<DesignVector>& pop, const SearchRegion& prev,
                         const Eigen::VectorXd& thresholds);

using Objective = std::function<double(const DesignVector&)>;

// Full calibration loop: initialize, contract once, then iterate
// evaluate / attract / contract until the budget runs out or every
// coordinate is frozen. Population evaluations use the executor; the RNG is
// consumed only in the sequential sections.
CalibrationResult calibrate(const Objective& objective, const SearchRegion& region,
                            const BhSettings& settings, Rng& rng,
                            const Executor& exec = Executor(1));

}  // namespace qcd::blackhole
