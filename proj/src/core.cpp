#include "blockpr/core.hpp"

#include <numbers>
#include <stdexcept>

#include <unsupported/Eigen/FFT>

namespace blockpr {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Index mod(Index a, Index m) {
  Index r = a % m;
  return r < 0 ? r + m : r;
}

}  // namespace

CVec circular_shift(const CVec& u, Index l) {
  const Index d = u.size();
  CVec out(d);
  for (Index j = 0; j < d; ++j) out[j] = u[mod(j + l, d)];
  return out;
}

CVec modulate(const CVec& u, Index k) {
  const Index d = u.size();
  CVec out(d);
  for (Index j = 0; j < d; ++j) {
    const double phase = kTwoPi * static_cast<double>((k - 1) * j) / static_cast<double>(d);
    out[j] = u[j] * Complex(std::cos(phase), std::sin(phase));
  }
  return out;
}

CVec dft(const CVec& u) {
  thread_local Eigen::FFT<double> fft;
  CVec out(u.size());
  fft.fwd(out, u);
  return out;
}

CVec idft(const CVec& u) {
  thread_local Eigen::FFT<double> fft;
  CVec out(u.size());
  fft.inv(out, u);
  return out;
}

CVec dft_direct(const CVec& u) {
  const Index d = u.size();
  CVec out = CVec::Zero(d);
  for (Index k = 0; k < d; ++k) {
    Complex acc = 0.0;
    for (Index n = 0; n < d; ++n) {
      const double phase = -kTwoPi * static_cast<double>(n * k) / static_cast<double>(d);
      acc += u[n] * Complex(std::cos(phase), std::sin(phase));
    }
    out[k] = acc;
  }
  return out;
}

CVec idft_direct(const CVec& u) {
  const Index d = u.size();
  CVec out = CVec::Zero(d);
  for (Index n = 0; n < d; ++n) {
    Complex acc = 0.0;
    for (Index k = 0; k < d; ++k) {
      const double phase = kTwoPi * static_cast<double>(n * k) / static_cast<double>(d);
      acc += u[k] * Complex(std::cos(phase), std::sin(phase));
    }
    out[n] = acc / static_cast<double>(d);
  }
  return out;
}

CVec hadamard(const CVec& u, const CVec& v) { return u.cwiseProduct(v); }

CVec circular_convolution(const CVec& u, const CVec& v) {
  const Index d = u.size();
  CVec out = CVec::Zero(d);
  for (Index l = 0; l < d; ++l) {
    Complex acc = 0.0;
    for (Index k = 0; k < d; ++k) acc += u[mod(l - k, d)] * v[k];
    out[l] = acc;
  }
  return out;
}

BandedHermitian::BandedHermitian(Index d, Index delta) : d_(d), delta_(delta) {
  if (d < 2) throw std::invalid_argument("BandedHermitian: d must be at least 2");
  if (delta < 1 || 2 * delta - 1 > d)
    throw std::invalid_argument("BandedHermitian: need 1 <= 2*delta-1 <= d");
  diag0_ = RVec::Zero(d);
  upper_.assign(static_cast<std::size_t>(delta - 1), CVec::Zero(d));
}

BandedHermitian BandedHermitian::lift(const CVec& x, Index delta) {
  const Index d = x.size();
  BandedHermitian X(d, delta);
  X.diag0_ = x.cwiseAbs2();
  for (Index o = 1; o < delta; ++o) {
    CVec& diag = X.upper_[static_cast<std::size_t>(o - 1)];
    for (Index z = 0; z < d; ++z) diag[z] = x[z] * std::conj(x[mod(z + o, d)]);
  }
  return X;
}

BandedHermitian BandedHermitian::project(const CMat& dense, Index delta) {
  const Index d = dense.rows();
  BandedHermitian X(d, delta);
  for (Index z = 0; z < d; ++z) X.diag0_[z] = dense(z, z).real();
  for (Index o = 1; o < delta; ++o) {
    CVec& diag = X.upper_[static_cast<std::size_t>(o - 1)];
    for (Index z = 0; z < d; ++z) diag[z] = dense(z, mod(z + o, d));
  }
  return X;
}

Complex BandedHermitian::entry(Index k, Index j) const {
  const Index off = mod(j - k, d_);
  if (off == 0) return diag0_[k];
  if (off < delta_) return upper_[static_cast<std::size_t>(off - 1)][k];
  const Index off_low = d_ - off;
  if (off_low < delta_) return std::conj(upper_[static_cast<std::size_t>(off_low - 1)][j]);
  return 0.0;
}

CVec& BandedHermitian::upper_diagonal(Index o) {
  if (o < 1 || o >= delta_) throw std::out_of_range("upper_diagonal: offset outside [1, delta-1]");
  return upper_[static_cast<std::size_t>(o - 1)];
}

const CVec& BandedHermitian::upper_diagonal(Index o) const {
  if (o < 1 || o >= delta_) throw std::out_of_range("upper_diagonal: offset outside [1, delta-1]");
  return upper_[static_cast<std::size_t>(o - 1)];
}

CMat BandedHermitian::to_dense() const {
  CMat out = CMat::Zero(d_, d_);
  for (Index k = 0; k < d_; ++k)
    for (Index j = 0; j < d_; ++j) out(k, j) = entry(k, j);
  return out;
}

DiagonalSet extract_diagonals(const BandedHermitian& X) {
  const Index d = X.dim();
  const Index delta = X.band_delta();
  const Index nd = 2 * delta - 1;
  DiagonalSet L;
  L.d = d;
  L.delta = delta;
  L.diag.assign(static_cast<std::size_t>(nd), CVec::Zero(d));
  L.fourier_known = BoolArray::Constant(nd, d, true);
  // r <= delta: L^r_z = X(z+r-1, z) = conj of the upper diagonal at offset r-1
  L.diag[0] = X.main_diagonal().cast<Complex>();
  for (Index r = 2; r <= delta; ++r)
    L.diag[static_cast<std::size_t>(r - 1)] = X.upper_diagonal(r - 1).conjugate();
  // r > delta: L^r_z = X(z+r-2delta+1, z+1), the upper diagonal at offset
  // 2delta-r read at row z+1-o (1-based; circular)
  for (Index r = delta + 1; r <= nd; ++r) {
    const Index o = 2 * delta - r;
    const CVec& ud = X.upper_diagonal(o);
    CVec& out = L.diag[static_cast<std::size_t>(r - 1)];
    for (Index z0 = 0; z0 < d; ++z0) out[z0] = ud[((z0 + 1 - o) % d + d) % d];
  }
  return L;
}

BandedHermitian assemble_diagonals(const DiagonalSet& L) {
  BandedHermitian X(L.d, L.delta);
  X.main_diagonal() = L.diag[0].real();
  for (Index r = 2; r <= L.delta; ++r)
    X.upper_diagonal(r - 1) = L.diag[static_cast<std::size_t>(r - 1)].conjugate();
  return X;
}

Index vec_length(Index d, Index delta) { return d * (2 * delta - 1); }

std::pair<Index, Index> vec_index(Index q, Index d, Index delta) {
  const Index D = vec_length(d, delta);
  if (q < 1 || q > D) throw std::out_of_range("vec_index: q outside [1, D]");
  const Index nd = 2 * delta - 1;
  const Index xi = (q - 1) / nd + 1;
  const Index r = (q - 1) % nd + 1;
  return {xi, r};
}

Index vec_position(Index xi, Index r, Index d, Index delta) {
  const Index nd = 2 * delta - 1;
  if (xi < 1 || xi > d || r < 1 || r > nd)
    throw std::out_of_range("vec_position: (xi, r) outside [1,d] x [1,2delta-1]");
  return nd * (xi - 1) + r;
}

CVec vec(const BandedHermitian& X) {
  const Index d = X.dim();
  const Index delta = X.band_delta();
  const Index nd = 2 * delta - 1;
  const DiagonalSet L = extract_diagonals(X);
  CVec out(vec_length(d, delta));
  for (Index xi = 1; xi <= d; ++xi)
    for (Index r = 1; r <= nd; ++r)
      out[nd * (xi - 1) + r - 1] = L.diag[static_cast<std::size_t>(r - 1)][xi - 1];
  return out;
}

BandedHermitian unvec(const CVec& v, Index d, Index delta) {
  const Index nd = 2 * delta - 1;
  if (v.size() != vec_length(d, delta)) throw std::invalid_argument("unvec: wrong length");
  BandedHermitian X(d, delta);
  // slot (xi, r=1) is |x_xi|^2 in the rank-one case; keep the real part
  for (Index z = 0; z < d; ++z) X.main_diagonal()[z] = v[nd * z].real();
  // offset o is referenced by (xi=z, r=o+1) as a conjugate and by
  // (xi=z+o-1, r=2delta-o) directly; average the two reads
  for (Index o = 1; o < delta; ++o) {
    CVec& diag = X.upper_diagonal(o);
    for (Index z = 1; z <= d; ++z) {
      const Complex lower = v[nd * (z - 1) + (o + 1) - 1];
      const Index xi2 = (z + o - 2) % d + 1;
      const Complex upper = v[nd * (xi2 - 1) + (2 * delta - o) - 1];
      diag[z - 1] = 0.5 * (std::conj(lower) + upper);
    }
  }
  return X;
}

}  // namespace blockpr
