#include "qcd/encoding.hpp"

#include <cmath>

#include "qcd/errors.hpp"

namespace qcd::encoding {

BitAllocation allocate_bits(const blackhole::SearchRegion& region,
                            const Eigen::VectorXd& thresholds, BitMode mode,
                            int fixed_bits) {
  BitAllocation alloc;
  const Eigen::Index n = region.size();
  alloc.bits_per_param.resize(static_cast<std::size_t>(n));
  alloc.offsets.resize(static_cast<std::size_t>(n));
  for (Eigen::Index j = 0; j < n; ++j) {
    int bits;
    if (mode == BitMode::fixed) {
      bits = fixed_bits;
    } else {
      const double width = region.width(j);
      if (width <= 0.0) {
        bits = 2;
      } else {
        const double raw = std::ceil(std::log2(width / thresholds(j)));
        bits = static_cast<int>(std::clamp(raw, 2.0, 4.0));
      }
    }
    alloc.offsets[static_cast<std::size_t>(j)] = alloc.n_total;
    alloc.bits_per_param[static_cast<std::size_t>(j)] = bits;
    alloc.n_total += bits;
  }
  return alloc;
}

blackhole::DesignVector decode(const Bitstring& b, const BitAllocation& alloc,
                               const blackhole::SearchRegion& region) {
  if (static_cast<int>(b.size()) != alloc.n_total)
    throw LengthMismatch("decode: bitstring length does not match allocation");
  blackhole::DesignVector p(region.size());
  for (Eigen::Index j = 0; j < region.size(); ++j) {
    const int nb = alloc.bits_per_param[static_cast<std::size_t>(j)];
    const int off = alloc.offsets[static_cast<std::size_t>(j)];
    std::uint64_t nu = 0;
    for (int l = 0; l < nb; ++l) nu = (nu << 1) | b[static_cast<std::size_t>(off + l)];
    const double width = region.width(j);
    const std::uint64_t levels = (std::uint64_t{1} << nb) - 1;
    if (width <= 0.0) {
      p(j) = region.lower(j);
    } else if (nu == levels) {
      p(j) = region.upper(j);  // keep the interval closed exactly
    } else {
      p(j) = region.lower(j) + width / static_cast<double>(levels) * static_cast<double>(nu);
    }
  }
  return p;
}

Bitstring encode_nearest(const blackhole::DesignVector& p, const BitAllocation& alloc,
                         const blackhole::SearchRegion& region) {
  const blackhole::DesignVector q = region.clamp(p);
  Bitstring b(static_cast<std::size_t>(alloc.n_total), 0);
  for (Eigen::Index j = 0; j < region.size(); ++j) {
    const int nb = alloc.bits_per_param[static_cast<std::size_t>(j)];
    const int off = alloc.offsets[static_cast<std::size_t>(j)];
    const double width = region.width(j);
    std::uint64_t nu = 0;
    if (width > 0.0) {
      const std::uint64_t levels = (std::uint64_t{1} << nb) - 1;
      const double step = width / static_cast<double>(levels);
      // floor(x + 1/2) rounds exact halves up.
      const double r = std::floor((q(j) - region.lower(j)) / step + 0.5);
      nu = static_cast<std::uint64_t>(std::min(std::max(r, 0.0), static_cast<double>(levels)));
    }
    for (int l = nb - 1; l >= 0; --l) {
      b[static_cast<std::size_t>(off + l)] = static_cast<std::uint8_t>(nu & 1);
      nu >>= 1;
    }
  }
  return b;
}

std::uint64_t bits_to_basis_index(const Bitstring& b) {
  std::uint64_t idx = 0;
  for (std::size_t r = 0; r < b.size(); ++r)
    if (b[r]) idx |= (std::uint64_t{1} << r);
  return idx;
}

Bitstring basis_index_to_bits(std::uint64_t index, int n_bits) {
  Bitstring b(static_cast<std::size_t>(n_bits), 0);
  for (int r = 0; r < n_bits; ++r)
    b[static_cast<std::size_t>(r)] = static_cast<std::uint8_t>((index >> r) & 1);
  return b;
}

std::uint64_t bits_to_msb_integer(const Bitstring& b) {
  std::uint64_t v = 0;
  for (std::uint8_t bit : b) v = (v << 1) | bit;
  return v;
}

std::string bits_to_string(const Bitstring& b) {
  std::string s;
  s.reserve(b.size());
  for (std::uint8_t bit : b) s.push_back(bit ? '1' : '0');
  return s;
}

}  // namespace qcd::encoding
