#include "blockpr/masks.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <ostream>
#include <random>
#include <stdexcept>
#include <string>

namespace blockpr {

WindowSpec WindowSpec::gaussian(Index d, Index delta, double sigma) {
  if (sigma <= 0) throw std::invalid_argument("gaussian window: sigma must be positive");
  WindowSpec spec;
  spec.kind = Kind::gaussian;
  spec.param = sigma;
  spec.delta = delta;
  spec.d = d;
  return spec;
}

WindowSpec WindowSpec::exponential(Index d, Index delta, double a) {
  if (a <= 0) throw std::invalid_argument("exponential window: a must be positive");
  WindowSpec spec;
  spec.kind = Kind::exponential;
  spec.param = a;
  spec.delta = delta;
  spec.d = d;
  return spec;
}

WindowSpec WindowSpec::custom(Index d, Index delta, CVec values) {
  if (values.size() != delta) throw std::invalid_argument("custom window: need delta values");
  WindowSpec spec;
  spec.kind = Kind::custom;
  spec.delta = delta;
  spec.d = d;
  spec.custom_values = std::move(values);
  return spec;
}

CVec make_window(const WindowSpec& spec) {
  if (spec.delta < 1 || spec.delta > spec.d)
    throw std::invalid_argument("make_window: need 1 <= delta <= d");
  CVec w = CVec::Zero(spec.d);
  for (Index n = 1; n <= spec.delta; ++n) {
    switch (spec.kind) {
      case WindowSpec::Kind::gaussian: {
        const double num = std::pow(static_cast<double>(n) - (static_cast<double>(spec.delta) + 1) / 2.0, 2);
        const double den = 2.0 * spec.param * spec.param * static_cast<double>(spec.delta * spec.delta);
        w[n - 1] = std::exp(-num / den);
        break;
      }
      case WindowSpec::Kind::exponential:
        w[n - 1] = std::exp(-static_cast<double>(n) / spec.param);
        break;
      case WindowSpec::Kind::custom:
        w[n - 1] = spec.custom_values[n - 1];
        break;
    }
  }
  return w;
}

CVec unit_energy(const CVec& w) {
  const double norm = w.norm();
  if (norm == 0.0) throw std::invalid_argument("unit_energy: zero window");
  return w / norm;
}

MaskSet build_masks(const CVec& window, Index delta) {
  const Index d = window.size();
  const Index nd = 2 * delta - 1;
  MaskSet set;
  set.d = d;
  set.delta = delta;
  set.window = window;
  set.masks.assign(static_cast<std::size_t>(nd), CVec::Zero(d));
  const double scale = std::pow(static_cast<double>(nd), -0.25);
  for (Index j = 1; j <= nd; ++j) {
    CVec& m = set.masks[static_cast<std::size_t>(j - 1)];
    for (Index n = 1; n <= delta; ++n) {
      const double phase =
          2.0 * std::numbers::pi * static_cast<double>((n - 1) * (j - 1)) / static_cast<double>(nd);
      m[n - 1] = scale * std::conj(window[n - 1]) * Complex(std::cos(phase), std::sin(phase));
    }
  }
  return set;
}

MeasurementGrid forward_measure(const CVec& x, const MaskSet& masks) {
  const Index d = masks.d;
  const Index delta = masks.delta;
  if (x.size() != d) throw std::invalid_argument("forward_measure: dimension mismatch");
  const Index nd = 2 * delta - 1;
  MeasurementGrid y;
  y.d = d;
  y.delta = delta;
  y.values.resize(d, nd);
  // <S_l x, m_j> = sum_{n<delta} x_{n+l} conj(m_j)_n, so each measurement is
  // a length-delta product over the mask support
  for (Index l = 0; l < d; ++l) {
    for (Index j = 0; j < nd; ++j) {
      const CVec& m = masks.masks[static_cast<std::size_t>(j)];
      Complex acc = 0.0;
      for (Index n = 0; n < delta; ++n) acc += x[(n + l) % d] * std::conj(m[n]);
      y.values(l, j) = std::norm(acc);
    }
  }
  return y;
}

MeasurementGrid add_noise(const MeasurementGrid& y, double snr_db, std::uint64_t seed) {
  if (!std::isfinite(snr_db)) return y;
  const double energy = y.values.squaredNorm();
  if (energy == 0.0) throw std::invalid_argument("add_noise: zero measurements at finite snr");
  const double count = static_cast<double>(y.values.size());
  const double variance = energy / (count * std::pow(10.0, snr_db / 10.0));
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, std::sqrt(variance));
  MeasurementGrid out = y;
  for (Index l = 0; l < out.values.rows(); ++l)
    for (Index j = 0; j < out.values.cols(); ++j) out.values(l, j) += gauss(rng);
  return out;
}

std::string format_double(double value) {
  if (value == 0.0) value = 0.0;  // canonicalize -0
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc()) throw std::runtime_error("format_double: conversion failed");
  return std::string(buf, ptr);
}

void write_csv(const MeasurementGrid& y, std::ostream& out) {
  out << "shift,freq,value\n";
  for (Index l = 0; l < y.values.rows(); ++l)
    for (Index j = 0; j < y.values.cols(); ++j)
      out << l << ',' << (j + 1) << ',' << format_double(y.values(l, j)) << '\n';
}

}  // namespace blockpr
