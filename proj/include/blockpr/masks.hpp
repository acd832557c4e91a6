#pragma once

#include <cstdint>
#include <iosfwd>

#include "blockpr/core.hpp"

namespace blockpr {

/// Compactly supported illumination window on [1, delta] of a length-d
/// ambient vector.
struct WindowSpec {
  enum class Kind { gaussian, exponential, custom };

  Kind kind = Kind::gaussian;
  double param = 0.3;  // sigma for gaussian, decay a for exponential
  CVec custom_values;  // support values, length delta
  Index delta = 0;
  Index d = 0;

  static WindowSpec gaussian(Index d, Index delta, double sigma);
  static WindowSpec exponential(Index d, Index delta, double a);
  static WindowSpec custom(Index d, Index delta, CVec values);
};

/// Window values: gaussian w_n = exp(-(n-(delta+1)/2)^2 / (2 sigma^2 delta^2))
/// and exponential w_n = exp(-n/a) on n in [1, delta], zero elsewhere.
CVec make_window(const WindowSpec& spec);

/// w scaled to unit l2 norm. The measurement pipeline always runs on
/// unit-energy windows; raw window values only feed this normalization.
CVec unit_energy(const CVec& w);

/// The 2*delta-1 masks m_j with
/// (m_j)_n = (2delta-1)^{-1/4} conj(w_n) e^{2 pi i (n-1)(j-1)/(2delta-1)}
/// on the window support and zero outside.
struct MaskSet {
  Index d = 0;
  Index delta = 0;
  CVec window;
  std::vector<CVec> masks;
};

MaskSet build_masks(const CVec& window, Index delta);

/// Intensities y(l, j) = |<S_l x, m_j>|^2 over all shifts l in [0, d-1]
/// (rows) and frequencies j in [1, 2delta-1] (columns).
struct MeasurementGrid {
  Index d = 0;
  Index delta = 0;
  RMat values;  // d x (2delta-1)
};

MeasurementGrid forward_measure(const CVec& x, const MaskSet& masks);

/// Adds i.i.d. real Gaussian noise with variance
/// nu^2 = sum(y^2) / (d(2delta-1) 10^{snr/10}). Non-finite snr_db is
/// treated as noiseless. Deterministic for a given seed. Entries may go
/// negative; downstream code tolerates that.
MeasurementGrid add_noise(const MeasurementGrid& y, double snr_db, std::uint64_t seed);

/// CSV with header shift,freq,value; floats as shortest round-trip decimals.
void write_csv(const MeasurementGrid& y, std::ostream& out);

/// Shortest decimal that round-trips to the same double.
std::string format_double(double value);

}  // namespace blockpr
