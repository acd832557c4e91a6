#pragma once

#include <random>

#include "blockpr/core.hpp"

namespace blockpr::testing {

inline CVec rand_vec(Index d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, std::sqrt(0.5));
  CVec x(d);
  for (Index j = 0; j < d; ++j) {
    const double re = gauss(rng);
    const double im = gauss(rng);
    x[j] = Complex(re, im);
  }
  return x;
}

inline CMat rand_hermitian(Index d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  CMat A(d, d);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) A(i, j) = Complex(gauss(rng), gauss(rng));
  return 0.5 * (A + A.adjoint());
}

// T_delta as a dense operation, the comparison route for the banded type
inline CMat project_band_dense(const CMat& A, Index delta) {
  const Index d = A.rows();
  CMat out = CMat::Zero(d, d);
  for (Index k = 0; k < d; ++k) {
    for (Index j = 0; j < d; ++j) {
      const Index dist = std::abs(k - j);
      if (dist < delta || dist > d - delta) out(k, j) = A(k, j);
    }
  }
  return out;
}

}  // namespace blockpr::testing
