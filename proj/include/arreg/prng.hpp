#pragma once

#include <cstdint>

#include "arreg/matrix.hpp"

namespace arreg {

/// splitmix64 stream.  Hand-rolled so that seeded runs are bit-identical on
/// every platform (std distributions are not portable).
class Prng {
 public:
  explicit Prng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : next() % n; }

  long long range(long long lo, long long hi) {  // inclusive
    return lo + static_cast<long long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  /// Random field element; over Q a small integer in [-max_mag, max_mag].
  Scalar scalar(const FieldSpec& field, long long max_mag = 4) {
    if (field.is_finite()) return Scalar::fp(below(field.modulus()), field.modulus());
    return field.from_int(range(-max_mag, max_mag));
  }

  Vec vector(const FieldSpec& field, std::size_t n, long long max_mag = 4) {
    Vec v;
    v.reserve(n);
    for (std::size_t i = 0; i < n; ++i) v.push_back(scalar(field, max_mag));
    return v;
  }

  Matrix matrix(const FieldSpec& field, std::size_t rows, std::size_t cols,
                long long max_mag = 4) {
    Matrix m(field, rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = scalar(field, max_mag);
    return m;
  }

 private:
  std::uint64_t state_;
};

}  // namespace arreg
