#pragma once

#include <utility>
#include <vector>

#include "blockpr/core.hpp"
#include "blockpr/masks.hpp"

namespace blockpr {

/// Block M_l of the measurement matrix, (2delta-1) x (2delta-1), l in
/// [1, delta]. Entry (n, j) follows the four-case rule: a modulated
/// conj(w)_l w_{j+l-1} for j <= delta-l+1, a wrapped conj(w)_{l+1}
/// w_{l+j-2delta+1} for j >= 2delta-l (l < delta), zero in between and for
/// every j > 1 when l = delta.
CMat build_block(Index l, const CVec& window, Index delta);

/// Table of z_{k,j}, d rows by 2delta-1 columns, computed as the diagonal
/// of F* J_k with J_k = sum_l M_l e^{2 pi i (k-1)(l-1)/d} and F the unitary
/// DFT of size 2delta-1. The |z_{k,j}| are exactly the singular values of
/// the measurement matrix M.
CMat compute_z(const CVec& window, Index d, Index delta);

/// The analytic SVD of M split at threshold epsilon: a singular triple
/// (k, j) is kept when |z_{k,j}| > max(epsilon, zero_tol), where
/// zero_tol = 1e-12 max|z| identifies exact zeros.
struct BlockSVD {
  Index d = 0;
  Index delta = 0;
  double epsilon = 0.0;
  double zero_tol = 0.0;
  CVec window;
  CMat z;          // d x (2delta-1)
  BoolArray kept;  // d x (2delta-1)

  double keep_threshold() const { return epsilon > 0.0 ? epsilon : zero_tol; }
};

BlockSVD make_block_svd(const CVec& window, Index d, Index delta, double epsilon);

/// Discarded singular triples as 1-based (k, j) pairs; min_abs_z[j-1] is
/// min_k |z_{k,j}|, the conditioning of diagonal j under the inverse.
struct LostIndexSet {
  std::vector<std::pair<Index, Index>> pairs;
  RVec min_abs_z;
};

LostIndexSet lost_indices(const BlockSVD& svd);

/// vec(X_S) = M_S^{-1} y through the factorization: unitary DFT across the
/// shift blocks, F* per block, division by z on kept triples (zero on
/// discarded ones), inverse block DFT back. O(d delta (log d + delta)).
/// The result is Hermitian-symmetrized by unvec.
BandedHermitian apply_regularized_inverse(const BlockSVD& svd, const MeasurementGrid& y);

/// Explicit circulant-of-blocks measurement matrix, D x D. Cross-validation
/// oracle only; guarded to D <= 2000.
CMat dense_M(const CVec& window, Index d, Index delta);

/// Dense U_{2delta-1} (the matrix of right singular vectors), D x D.
CMat dense_U_blocks(Index d, Index delta);

struct SingularValueBin {
  double lo = 0.0;
  double hi = 0.0;
  Index count = 0;
};

/// |z| histogram over the edges {0}, (0,1e-4], (1e-4,1e-3], (1e-3,1e-2.5],
/// (1e-2.5,1e-2], (1e-2,1e-1], (1e-1,10]. Zeros are |z| <= zero_tol.
std::vector<SingularValueBin> singular_value_bins(const BlockSVD& svd);

}  // namespace blockpr
