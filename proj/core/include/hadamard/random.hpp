#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace hadamard {

/// Value-typed, explicitly advanced random stream.
///
/// Every consumer derives its own stream from a master seed with `split`, so
/// sampling for one purpose never shifts the draws of another. Only the raw
/// 64-bit engine output is used; conversions to doubles are done here with
/// plain IEEE arithmetic so that draws are identical on every platform (the
/// standard distributions are implementation-defined).
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed);

  std::uint64_t seed() const noexcept { return seed_; }

  RandomStream split(std::uint64_t stream_id) const;
  RandomStream split(std::string_view purpose) const;

  std::uint64_t next_u64();
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  double uniform(double lo, double hi);
  /// Uniform index in [0, n).
  std::size_t index(std::size_t n);
  /// Uniformly distributed unit vector in R^dim.
  std::vector<double> unit_direction(int dim);

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

/// SplitMix64 finalizer; used to derive child seeds.
std::uint64_t mix_seed(std::uint64_t value) noexcept;

}  // namespace hadamard
