#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "qcd/blackhole.hpp"

namespace qcd::encoding {

// Concatenated binary word, MSB-first within each parameter substring.
using Bitstring = std::vector<std::uint8_t>;

enum class BitMode { adaptive, fixed };

struct BitAllocation {
  std::vector<int> bits_per_param;
  std::vector<int> offsets;  // start of each substring in the concatenation
  int n_total = 0;
};

// Adaptive mode: bits_j = clamp(ceil(log2(width_j / delta_j)), 2, 4), with
// zero-width intervals getting the minimum. Fixed mode: every parameter gets
// fixed_bits.
BitAllocation allocate_bits(const blackhole::SearchRegion& region,
                            const Eigen::VectorXd& thresholds, BitMode mode,
                            int fixed_bits = 3);

// Affine decoding: value_j = lower_j + width_j/(2^n - 1) * integer(substring),
// MSB first. A zero-width interval decodes to its lower endpoint.
blackhole::DesignVector decode(const Bitstring& b, const BitAllocation& alloc,
                               const blackhole::SearchRegion& region);

// Nearest representable code for p (clamped into the region first); exact
// half-step ties round up.
Bitstring encode_nearest(const blackhole::DesignVector& p, const BitAllocation& alloc,
                         const blackhole::SearchRegion& region);

// Helpers shared with the quantum register convention: bit r of the
// concatenated word is qubit r; the basis index carries bit r in its r-th
// binary digit.
std::uint64_t bits_to_basis_index(const Bitstring& b);
Bitstring basis_index_to_bits(std::uint64_t index, int n_bits);
// MSB-first integer value of the whole word (used for deterministic ordering).
std::uint64_t bits_to_msb_integer(const Bitstring& b);
std::string bits_to_string(const Bitstring& b);

}  // namespace qcd::encoding
