#include "hadamard/random.hpp"

#include <cmath>

namespace hadamard {

std::uint64_t mix_seed(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

RandomStream::RandomStream(std::uint64_t seed) : seed_(seed), engine_(mix_seed(seed)) {}

RandomStream RandomStream::split(std::uint64_t stream_id) const {
  return RandomStream(mix_seed(seed_ ^ mix_seed(stream_id + 0x632be59bd9b4e019ULL)));
}

RandomStream RandomStream::split(std::string_view purpose) const {
  // FNV-1a, stable across platforms unlike std::hash.
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : purpose) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return split(h);
}

std::uint64_t RandomStream::next_u64() { return engine_(); }

double RandomStream::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RandomStream::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

std::size_t RandomStream::index(std::size_t n) {
  return static_cast<std::size_t>(uniform() * static_cast<double>(n)) % n;
}

std::vector<double> RandomStream::unit_direction(int dim) {
  std::vector<double> v(static_cast<std::size_t>(dim));
  if (dim <= 6) {
    // Rejection from the cube needs nothing beyond sqrt.
    for (;;) {
      double sq = 0.0;
      for (auto& c : v) {
        c = uniform(-1.0, 1.0);
        sq += c * c;
      }
      if (sq > 1e-6 && sq <= 1.0) {
        const double inv = 1.0 / std::sqrt(sq);
        for (auto& c : v) c *= inv;
        return v;
      }
    }
  }
  // Marsaglia polar method for higher dimensions.
  double sq = 0.0;
  for (std::size_t i = 0; i < v.size(); i += 2) {
    double a = 0.0, b = 0.0, s = 0.0;
    do {
      a = uniform(-1.0, 1.0);
      b = uniform(-1.0, 1.0);
      s = a * a + b * b;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    v[i] = a * f;
    if (i + 1 < v.size()) v[i + 1] = b * f;
  }
  for (double c : v) sq += c * c;
  const double inv = 1.0 / std::sqrt(sq);
  for (auto& c : v) c *= inv;
  return v;
}

}  // namespace hadamard
