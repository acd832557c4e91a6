#pragma once

#include <stdexcept>

#include "blockpr/core.hpp"
#include "blockpr/spectral.hpp"

namespace blockpr {

/// Fourier coefficients of the diagonals L^r of X_S together with flags for
/// the positions wiped out by the truncated inversion. Positions flagged
/// missing hold the value 0.
struct CompletionProblem {
  Index d = 0;
  Index delta = 0;
  std::vector<CVec> fourier_diag;  // hat L^r, r in [1, 2delta-1]
  BoolArray known;                 // (2delta-1) x d
  Index reference_index = 0;       // best fully known diagonal in [1, delta], 0 if none
  RVec diag_min_abs_z;             // per-diagonal min_k |z_{k,r}|
};

/// Reads hat L^r off X_S as the DFT of its extracted diagonals (the inner
/// products sqrt(d) <vec(X_S), V^(q)> reduce to exactly that) and flags the
/// coefficients matching the lost (k, j) pairs, which the truncated inverse
/// zeroed. The preferred reference diagonal is the fully known one with the
/// largest min_k |z_{k,r}|, ties to the smallest r.
CompletionProblem extract_known_coefficients(const BandedHermitian& X_S, const LostIndexSet& lost);

/// Stacked 2x2 blocks Q_j and right-hand sides (Re, Im) of c_j - z_j for
/// j = 2..d; the j = 1 row pair is excluded since its equation is quadratic
/// in the unknown.
struct LinearCoefficientSystem {
  RMat Q;  // 2(d-1) x 2
  RVec v;  // 2(d-1)
  Index target_diag = 0;
  Index target_pos = 0;
};

class RankDeficientError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown when a diagonal has more than one missing coefficient; the caller
/// falls back to the sequential zero-fill pass.
class MultipleMissingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Builds the least-squares system for the single missing coefficient
/// hat L^l_q against the fully known reference diagonal r_star (both
/// 1-based, in [1, delta]).
LinearCoefficientSystem build_linear_system(const CompletionProblem& problem, Index r_star, Index l,
                                            Index q);

/// Least-squares solution of the 2-column system; throws RankDeficientError
/// when Q does not have rank 2.
Complex solve_missing(const LinearCoefficientSystem& system);

struct CompletionResult {
  DiagonalSet diagonals;
  bool assumptions_held = false;  // one full diagonal, at most one miss per diagonal
};

/// Fills every missing Fourier coefficient of the diagonals in [1, delta]
/// and rebuilds the rest by Hermitian symmetry. When one diagonal is full
/// and no diagonal misses more than one coefficient this is exact in the
/// noiseless case; otherwise a sequential pass runs, ordering diagonals by
/// ascending missing count (then index), treating unsolved unknowns as zero
/// and letting each processed diagonal serve as a later reference.
CompletionResult complete(const CompletionProblem& problem);

}  // namespace blockpr
