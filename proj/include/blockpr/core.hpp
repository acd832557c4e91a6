#pragma once

#include <complex>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace blockpr {

using Complex = std::complex<double>;
using CVec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;
using CMat = Eigen::MatrixXcd;
using RMat = Eigen::MatrixXd;
using Index = Eigen::Index;
using BoolArray = Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic>;

/// Circular shift: result_j = u_{j+l}, indices mod d. Negative l shifts right.
CVec circular_shift(const CVec& u, Index l);

/// Modulation W_k: multiplies entry j by e^{2 pi i (k-1) j / d}. k is the
/// 1-based frequency index, so k = 1 is the identity.
CVec modulate(const CVec& u, Index k);

/// Unnormalized forward DFT, u_hat_k = sum_n u_n e^{-2 pi i n k / d}.
CVec dft(const CVec& u);
/// Inverse DFT carrying the 1/d factor, so idft(dft(u)) == u.
CVec idft(const CVec& u);

// Direct O(d^2) transforms. Reference path for cross-checking the fast one;
// also the fallback semantics for dimensions the FFT would handle slowly.
CVec dft_direct(const CVec& u);
CVec idft_direct(const CVec& u);

CVec hadamard(const CVec& u, const CVec& v);

/// Circular convolution (u * v)_l = sum_k u_{l-k} v_k, direct evaluation.
/// Under the DFT convention above, dft(hadamard(u,v)) = dft(u)*dft(v) / d.
CVec circular_convolution(const CVec& u, const CVec& v);

/// Hermitian d x d matrix supported on the 2*delta-1 circulant diagonals
/// closest to the main one (the range of the banded projection T_delta).
/// Storage holds the real main diagonal and the delta-1 upper diagonals;
/// the lower band is implied by symmetry, so a non-Hermitian or off-band
/// value cannot be represented.
class BandedHermitian {
 public:
  BandedHermitian(Index d, Index delta);

  /// T_delta(x x*): the banded restriction of the rank-one lift of x.
  static BandedHermitian lift(const CVec& x, Index delta);
  /// T_delta(A) for Hermitian A (upper part of A is read; band is kept).
  static BandedHermitian project(const CMat& dense, Index delta);

  Index dim() const { return d_; }
  Index band_delta() const { return delta_; }

  /// Entry (k, j), 0-based, zero off the band.
  Complex entry(Index k, Index j) const;

  /// Main diagonal, real by construction.
  RVec& main_diagonal() { return diag0_; }
  const RVec& main_diagonal() const { return diag0_; }

  /// Upper diagonal at offset o in [1, delta-1]: entry z is X(z, z+o mod d).
  CVec& upper_diagonal(Index o);
  const CVec& upper_diagonal(Index o) const;

  CMat to_dense() const;

 private:
  Index d_;
  Index delta_;
  RVec diag0_;
  std::vector<CVec> upper_;
};

/// The 2*delta-1 circulant diagonals L^r of a banded Hermitian matrix,
/// L^r_z = conj(x)_z x_{z+r-1} for r <= delta and
/// L^r_z = conj(x)_{z+1} x_{z+1+r-2delta} for r > delta in the rank-one
/// case (1-based formulas, circular). fourier_known(r-1, xi-1) flags which
/// DFT coefficients of L^r are recovered.
struct DiagonalSet {
  Index d = 0;
  Index delta = 0;
  std::vector<CVec> diag;   // L^1 .. L^{2delta-1}
  BoolArray fourier_known;  // (2delta-1) x d
};

DiagonalSet extract_diagonals(const BandedHermitian& X);

/// Rebuilds the matrix from L^1..L^delta; the remaining diagonals are
/// redundant under Hermitian symmetry and are ignored.
BandedHermitian assemble_diagonals(const DiagonalSet& L);

Index vec_length(Index d, Index delta);

/// Splits q in [1, D] as q = (2delta-1)(xi-1) + r with xi in [1, d] and
/// r in [1, 2delta-1]. Throws std::out_of_range outside [1, D].
std::pair<Index, Index> vec_index(Index q, Index d, Index delta);
Index vec_position(Index xi, Index r, Index d, Index delta);

/// Canonical vectorization of the band, length D = d(2delta-1): slot
/// q = (xi, r) holds conj(X(xi, xi+r-1)) for r <= delta and
/// X(xi+r-2delta+1, xi+1) for r > delta (1-based, circular).
CVec vec(const BandedHermitian& X);

/// Inverse of vec. The two slots that reference each off-diagonal entry are
/// averaged (conjugate-consistently) and the main diagonal takes its real
/// part, so the result is always a valid BandedHermitian.
BandedHermitian unvec(const CVec& v, Index d, Index delta);

}  // namespace blockpr
