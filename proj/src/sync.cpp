#include "blockpr/sync.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

namespace blockpr {

namespace {

constexpr double kZeroTol = 1e-12;

Complex phase_of(Complex value) {
  const double a = std::abs(value);
  return a > 0.0 ? value / a : Complex(1.0, 0.0);
}

// w = (X + shift I) v over the stored band, O(d delta)
CVec shifted_band_product(const BandedHermitian& X, const CVec& v, double shift) {
  const Index d = X.dim();
  CVec w(d);
  for (Index z = 0; z < d; ++z) w[z] = (X.main_diagonal()[z] + shift) * v[z];
  for (Index o = 1; o < X.band_delta(); ++o) {
    const CVec& ud = X.upper_diagonal(o);
    for (Index z = 0; z < d; ++z) {
      const Index zo = (z + o) % d;
      w[z] += ud[z] * v[zo];
      w[zo] += std::conj(ud[z]) * v[z];
    }
  }
  return w;
}

}  // namespace

PhaseMatrix normalize_phases(const BandedHermitian& X) {
  const Index d = X.dim();
  PhaseMatrix out{BandedHermitian(d, X.band_delta())};
  for (Index z = 0; z < d; ++z)
    out.band.main_diagonal()[z] = std::abs(X.main_diagonal()[z]) > kZeroTol
                                      ? (X.main_diagonal()[z] > 0 ? 1.0 : -1.0)
                                      : 0.0;
  for (Index o = 1; o < X.band_delta(); ++o) {
    const CVec& src = X.upper_diagonal(o);
    CVec& dst = out.band.upper_diagonal(o);
    for (Index z = 0; z < d; ++z) {
      const double a = std::abs(src[z]);
      dst[z] = a > kZeroTol ? src[z] / a : Complex(0.0);
    }
  }
  return out;
}

CVec top_eigenvector(const PhaseMatrix& X, const PowerIterationOptions& options) {
  const Index d = X.band.dim();
  const double shift = 2.0 * static_cast<double>(X.band.band_delta());
  const double sqrt_d = std::sqrt(static_cast<double>(d));

  // deterministic start: all-ones with a small fixed asymmetric perturbation
  CVec v(d);
  for (Index j = 0; j < d; ++j) {
    const double t = static_cast<double>(j);
    v[j] = Complex(1.0 + 1e-3 * std::cos(0.7 * t + 0.3), 1e-3 * std::sin(1.3 * t + 0.5));
  }
  v /= v.norm();

  for (Index iter = 0; iter < options.max_iterations; ++iter) {
    CVec w = shifted_band_product(X.band, v, shift);
    w /= w.norm();  // shift keeps the operator positive definite, so w != 0
    const Complex overlap = v.dot(w);
    const Complex align = std::abs(overlap) > 0.0 ? std::conj(overlap) / std::abs(overlap) : Complex(1.0);
    const double diff = (w * align - v).norm();
    v = w;
    if (diff < options.tol) return v * sqrt_d;
  }
  throw NoConvergenceError("top_eigenvector: power iteration did not converge", v * sqrt_d);
}

RVec magnitudes_diagonal(const BandedHermitian& X) {
  return X.main_diagonal().cwiseMax(0.0).cwiseSqrt();
}

RVec magnitudes_block(const BandedHermitian& X, Index block_size) {
  const Index d = X.dim();
  const Index B = block_size == 0 ? X.band_delta() : block_size;
  if (B < 1 || B > X.band_delta())
    throw std::invalid_argument("magnitudes_block: block size outside [1, delta]");
  if (B == 1) return magnitudes_diagonal(X);

  RVec sums = RVec::Zero(d);
  Eigen::SelfAdjointEigenSolver<CMat> solver;
  CMat block(B, B);
  for (Index s = 0; s < d; ++s) {
    for (Index i = 0; i < B; ++i)
      for (Index j = 0; j < B; ++j) block(i, j) = X.entry((s + i) % d, (s + j) % d);
    const double trace = std::max(block.real().trace(), 0.0);
    solver.compute(block);
    const CVec top = solver.eigenvectors().col(B - 1) * std::sqrt(trace);
    for (Index i = 0; i < B; ++i) sums[(s + i) % d] += std::abs(top[i]);
  }
  return sums / static_cast<double>(B);
}

CVec assemble_signal(const BandedHermitian& X, MagnitudeMode mode,
                     const PowerIterationOptions& options) {
  const RVec mags =
      mode == MagnitudeMode::diagonal ? magnitudes_diagonal(X) : magnitudes_block(X);
  const PhaseMatrix phases = normalize_phases(X);
  const auto combine = [&](const CVec& eigvec) {
    CVec x(X.dim());
    for (Index j = 0; j < X.dim(); ++j) x[j] = mags[j] * phase_of(eigvec[j]);
    return x;
  };
  try {
    return combine(top_eigenvector(phases, options));
  } catch (const NoConvergenceError& err) {
    throw NoConvergenceError(err.what(), combine(err.last_iterate));
  }
}

}  // namespace blockpr
