#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <thread>
#include <vector>

namespace qcd {

// Deterministic uniform source. All randomness in a run flows from one master
// seed through explicit Rng instances; the double conversion avoids the
// implementation-defined behaviour of std::uniform_real_distribution so that
// identical seeds give identical streams on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Uniform n-bit value, 0 <= n <= 63.
  std::uint64_t bits(int n) {
    if (n <= 0) return 0;
    return engine_() >> (64 - n);
  }

  // splitmix64 finalizer; used to derive child seeds (per epoch, per stream)
  // from a master seed without correlated streams.
  static std::uint64_t derive(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  std::mt19937_64 engine_;
};

// Static-partition parallel map. Each index writes only its own slot, so the
// result is independent of the thread count; reductions stay sequential in
// the caller.
class Executor {
 public:
  explicit Executor(int threads = 0)
      : threads_(threads > 0 ? threads
                             : static_cast<int>(std::thread::hardware_concurrency())) {
    if (threads_ < 1) threads_ = 1;
  }

  int threads() const { return threads_; }

  template <typename Fn>
  void parallel_for(std::size_t n, Fn&& fn) const {
    if (n == 0) return;
    const std::size_t workers =
        std::min<std::size_t>(static_cast<std::size_t>(threads_), n);
    if (workers <= 1) {
      for (std::size_t i = 0; i < n; ++i) fn(i);
      return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::size_t chunk = (n + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
      const std::size_t lo = w * chunk;
      const std::size_t hi = std::min(n, lo + chunk);
      if (lo >= hi) break;
      pool.emplace_back([lo, hi, &fn] {
        for (std::size_t i = lo; i < hi; ++i) fn(i);
      });
    }
    for (auto& t : pool) t.join();
  }

 private:
  int threads_;
};

}  // namespace qcd
