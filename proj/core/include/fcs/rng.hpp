#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "fcs/matrix.hpp"

namespace fcs {

// Deterministic random source.  The bit-to-double mapping and the Box-Muller
// transform are spelled out here so the stream depends only on the seed, not
// on the standard library's distribution internals (which are unspecified).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }  // [0,1)

  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    while (u1 <= 1e-300) u1 = uniform();
    const double u2 = uniform();
    constexpr double two_pi = 6.283185307179586476925286766559;
    const double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(two_pi * u2);
    have_spare_ = true;
    return r * std::cos(two_pi * u2);
  }

  complexd cgaussian() { return {gaussian(), gaussian()}; }

  std::uint64_t integer(std::uint64_t bound) { return gen_() % bound; }

  Matrix gaussian_matrix(std::size_t rows, std::size_t cols) {
    Matrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = cgaussian();
    return m;
  }

  Matrix hermitian(std::size_t n) {
    const Matrix g = gaussian_matrix(n, n);
    return 0.5 * (g + dagger(g));
  }

  Matrix psd(std::size_t n) {
    const Matrix g = gaussian_matrix(n, n);
    return dagger(g) * g;
  }

 private:
  std::mt19937_64 gen_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace fcs
