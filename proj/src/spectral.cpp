#include "blockpr/spectral.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace blockpr {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Complex unit_phase(double angle) { return {std::cos(angle), std::sin(angle)}; }

// Unitary DFT matrix of size n, F(a,b) = e^{-2 pi i a b / n} / sqrt(n).
CMat unitary_dft_matrix(Index n) {
  CMat F(n, n);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (Index a = 0; a < n; ++a)
    for (Index b = 0; b < n; ++b)
      F(a, b) = scale * unit_phase(-kTwoPi * static_cast<double>(a * b) / static_cast<double>(n));
  return F;
}

}  // namespace

CMat build_block(Index l, const CVec& window, Index delta) {
  const Index nd = 2 * delta - 1;
  if (l < 1 || l > delta) throw std::invalid_argument("build_block: l outside [1, delta]");
  if (window.size() < delta) throw std::invalid_argument("build_block: window shorter than delta");
  CMat M = CMat::Zero(nd, nd);
  const double scale = 1.0 / std::sqrt(static_cast<double>(nd));
  for (Index j = 1; j <= nd; ++j) {
    Complex coeff = 0.0;
    Index freq = 0;
    if (l == delta && j > 1) {
      continue;
    } else if (j <= delta - l + 1) {
      coeff = std::conj(window[l - 1]) * window[j + l - 2];
      freq = j - 1;
    } else if (j >= 2 * delta - l && l < delta) {
      coeff = std::conj(window[l]) * window[l + j - 2 * delta];
      freq = j - 2 * delta;
    } else {
      continue;
    }
    for (Index n = 1; n <= nd; ++n)
      M(n - 1, j - 1) = scale * coeff *
                        unit_phase(-kTwoPi * static_cast<double>((n - 1) * freq) / static_cast<double>(nd));
  }
  return M;
}

CMat compute_z(const CVec& window, Index d, Index delta) {
  const Index nd = 2 * delta - 1;
  std::vector<CMat> blocks;
  blocks.reserve(static_cast<std::size_t>(delta));
  for (Index l = 1; l <= delta; ++l) blocks.push_back(build_block(l, window, delta));
  const CMat Fadj = unitary_dft_matrix(nd).adjoint();
  CMat z(d, nd);
  for (Index k = 1; k <= d; ++k) {
    CMat Jk = CMat::Zero(nd, nd);
    for (Index l = 1; l <= delta; ++l)
      Jk += blocks[static_cast<std::size_t>(l - 1)] *
            unit_phase(kTwoPi * static_cast<double>((k - 1) * (l - 1)) / static_cast<double>(d));
    for (Index j = 0; j < nd; ++j) z(k - 1, j) = (Fadj.row(j) * Jk.col(j)).value();
  }
  return z;
}

BlockSVD make_block_svd(const CVec& window, Index d, Index delta, double epsilon) {
  if (epsilon < 0) throw std::invalid_argument("make_block_svd: epsilon must be nonnegative");
  BlockSVD svd;
  svd.d = d;
  svd.delta = delta;
  svd.window = window;
  svd.z = compute_z(window, d, delta);
  svd.epsilon = epsilon;
  svd.zero_tol = 1e-12 * svd.z.cwiseAbs().maxCoeff();
  const double threshold = svd.keep_threshold();
  svd.kept = svd.z.cwiseAbs().array() > threshold;
  return svd;
}

LostIndexSet lost_indices(const BlockSVD& svd) {
  LostIndexSet lost;
  lost.min_abs_z = svd.z.cwiseAbs().colwise().minCoeff().transpose();
  for (Index k = 1; k <= svd.d; ++k)
    for (Index j = 1; j <= svd.z.cols(); ++j)
      if (!svd.kept(k - 1, j - 1)) lost.pairs.emplace_back(k, j);
  return lost;
}

BandedHermitian apply_regularized_inverse(const BlockSVD& svd, const MeasurementGrid& y) {
  const Index d = svd.d;
  const Index nd = 2 * svd.delta - 1;
  if (y.values.rows() != d || y.values.cols() != nd)
    throw std::invalid_argument("apply_regularized_inverse: grid shape mismatch");
  const double sqrt_d = std::sqrt(static_cast<double>(d));
  const double sqrt_nd = std::sqrt(static_cast<double>(nd));

  // U* y: unitary DFT across the d shift blocks, one transform per inner slot
  CMat t(d, nd);
  for (Index j = 0; j < nd; ++j)
    t.col(j) = dft(y.values.col(j).cast<Complex>()) / sqrt_d;

  // F* per block: rows of t are the blocks, so an inverse DFT along rows
  CMat s(d, nd);
  for (Index k = 0; k < d; ++k)
    s.row(k) = (idft(t.row(k).transpose()) * sqrt_nd).transpose();

  // conj(sgn(z)) / |z| on kept triples is 1/z; discarded triples go to zero
  CMat c = CMat::Zero(d, nd);
  for (Index k = 0; k < d; ++k)
    for (Index j = 0; j < nd; ++j)
      if (svd.kept(k, j)) c(k, j) = s(k, j) / svd.z(k, j);

  // vec(X_S) = U c: inverse unitary DFT across the blocks
  CMat vblocks(d, nd);
  for (Index j = 0; j < nd; ++j)
    vblocks.col(j) = idft(c.col(j)) * sqrt_d;

  CVec v(vec_length(d, svd.delta));
  for (Index xi = 0; xi < d; ++xi)
    for (Index j = 0; j < nd; ++j) v[nd * xi + j] = vblocks(xi, j);
  return unvec(v, d, svd.delta);
}

CMat dense_M(const CVec& window, Index d, Index delta) {
  const Index nd = 2 * delta - 1;
  const Index D = d * nd;
  if (D > 2000) throw std::invalid_argument("dense_M: D exceeds the 2000 guard");
  std::vector<CMat> blocks;
  for (Index l = 1; l <= delta; ++l) blocks.push_back(build_block(l, window, delta));
  CMat M = CMat::Zero(D, D);
  for (Index i = 0; i < d; ++i) {
    for (Index jb = 0; jb < d; ++jb) {
      const Index s = ((jb - i) % d + d) % d;
      if (s < delta) M.block(i * nd, jb * nd, nd, nd) = blocks[static_cast<std::size_t>(s)];
    }
  }
  return M;
}

CMat dense_U_blocks(Index d, Index delta) {
  const Index nd = 2 * delta - 1;
  const Index D = d * nd;
  if (D > 2000) throw std::invalid_argument("dense_U_blocks: D exceeds the 2000 guard");
  CMat U = CMat::Zero(D, D);
  const double scale = 1.0 / std::sqrt(static_cast<double>(d));
  const CMat eye = CMat::Identity(nd, nd);
  for (Index i = 0; i < d; ++i)
    for (Index k = 0; k < d; ++k)
      U.block(i * nd, k * nd, nd, nd) =
          eye * (scale * unit_phase(kTwoPi * static_cast<double>(i * k) / static_cast<double>(d)));
  return U;
}

std::vector<SingularValueBin> singular_value_bins(const BlockSVD& svd) {
  const double edges[] = {1e-4, 1e-3, std::pow(10.0, -2.5), 1e-2, 1e-1, 10.0};
  std::vector<SingularValueBin> bins;
  bins.push_back({0.0, 0.0, 0});
  double lo = 0.0;
  for (double hi : edges) {
    bins.push_back({lo, hi, 0});
    lo = hi;
  }
  for (Index k = 0; k < svd.d; ++k) {
    for (Index j = 0; j < svd.z.cols(); ++j) {
      const double a = std::abs(svd.z(k, j));
      if (a <= svd.zero_tol) {
        ++bins[0].count;
        continue;
      }
      for (std::size_t b = 1; b < bins.size(); ++b) {
        if (a > bins[b].lo && a <= bins[b].hi) {
          ++bins[b].count;
          break;
        }
      }
    }
  }
  return bins;
}

}  // namespace blockpr
