#include <doctest.h>

#include <cmath>
#include <sstream>

#include "blockpr/masks.hpp"
#include "test_support.hpp"

using namespace blockpr;
using blockpr::testing::rand_vec;

TEST_CASE("gaussian window values") {
  const CVec w = make_window(WindowSpec::gaussian(16, 8, 0.3));
  // w_1 = exp(-(1-4.5)^2 / (2 * 0.09 * 64))
  CHECK(w[0].real() == doctest::Approx(std::exp(-12.25 / 11.52)).epsilon(1e-12));
  CHECK(w[0].real() == doctest::Approx(0.34533).epsilon(1e-4));
  for (Index n = 1; n <= 8; ++n) {
    CHECK(std::abs(w[n - 1] - w[8 - n]) < 1e-15);  // w_n = w_{delta-n+1}
    CHECK(w[n - 1].imag() == 0.0);
  }
  for (Index n = 8; n < 16; ++n) CHECK(w[n] == Complex(0.0));
}

TEST_CASE("exponential window values") {
  const CVec w = make_window(WindowSpec::exponential(12, 6, 1.0));
  CHECK(w[0].real() == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
  CHECK(w[0].real() == doctest::Approx(0.36788).epsilon(1e-4));
  for (Index n = 1; n < 6; ++n) CHECK(w[n].real() < w[n - 1].real());
}

TEST_CASE("window validation") {
  CHECK_THROWS_AS(make_window(WindowSpec::gaussian(4, 6, 0.3)), std::invalid_argument);
  CHECK_THROWS_AS(WindowSpec::gaussian(8, 4, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(WindowSpec::exponential(8, 4, -1.0), std::invalid_argument);
}

TEST_CASE("mask structure") {
  const Index d = 10, delta = 3;
  const CVec w = make_window(WindowSpec::gaussian(d, delta, 0.3));
  const MaskSet set = build_masks(w, delta);
  REQUIRE(set.masks.size() == 5);

  const double scale = std::pow(5.0, -0.25);
  for (Index n = 0; n < delta; ++n)
    CHECK(std::abs(set.masks[0][n] - scale * std::conj(w[n])) < 1e-14);
  for (const CVec& m : set.masks) {
    CHECK(m.norm() == doctest::Approx(set.masks[0].norm()).epsilon(1e-12));
    for (Index n = delta; n < d; ++n) CHECK(m[n] == Complex(0.0));
  }
}

TEST_CASE("mask modulation for delta = 2") {
  const Index d = 6, delta = 2;
  const CVec w = make_window(WindowSpec::gaussian(d, delta, 0.3));
  const MaskSet set = build_masks(w, delta);
  const double scale = std::pow(3.0, -0.25);
  const Complex spin = std::polar(1.0, 2.0 * M_PI / 3.0);
  CHECK(std::abs(set.masks[1][0] - scale * std::conj(w[0])) < 1e-14);
  CHECK(std::abs(set.masks[1][1] - scale * std::conj(w[1]) * spin) < 1e-14);
  CHECK(set.masks[1][2] == Complex(0.0));
}

TEST_CASE("forward measurements of the zero signal") {
  const MaskSet set = build_masks(make_window(WindowSpec::gaussian(8, 3, 0.3)), 3);
  const MeasurementGrid y = forward_measure(CVec::Zero(8), set);
  CHECK(y.values.norm() == 0.0);
}

TEST_CASE("forward measurements ignore a global phase") {
  const Index d = 8, delta = 3;
  const MaskSet set = build_masks(make_window(WindowSpec::gaussian(d, delta, 0.3)), delta);
  const CVec x = rand_vec(d, 7);
  const MeasurementGrid y1 = forward_measure(x, set);
  const MeasurementGrid y2 = forward_measure(std::polar(1.0, 0.7) * x, set);
  CHECK((y1.values - y2.values).norm() < 1e-12);
}

TEST_CASE("forward measurements match the dense lifted operator") {
  // y(l, j) = <T_delta(x x*), S_l* m_j m_j* S_l>_F
  const std::pair<Index, Index> sizes[] = {{6, 2}, {8, 3}, {10, 4}};
  for (const auto& [d, delta] : sizes) {
    const CVec w = unit_energy(make_window(WindowSpec::gaussian(d, delta, 0.3)));
    const MaskSet set = build_masks(w, delta);
    for (int rep = 0; rep < 20; ++rep) {
      const CVec x = rand_vec(d, static_cast<std::uint64_t>(100 * d + rep));
      const MeasurementGrid y = forward_measure(x, set);
      CHECK((y.values.array() >= 0.0).all());
      const CMat X0 = blockpr::testing::project_band_dense(x * x.adjoint(), delta);
      for (Index l = 0; l < d; ++l) {
        for (Index j = 0; j < 2 * delta - 1; ++j) {
          CVec a = CVec::Zero(d);  // S_l* m_j
          for (Index n = 0; n < d; ++n) a[(n + l) % d] = set.masks[static_cast<std::size_t>(j)][n];
          const CMat R = a * a.adjoint();
          const double oracle = (R.adjoint() * X0).trace().real();
          CHECK(std::abs(y.values(l, j) - oracle) < 1e-10);
        }
      }
    }
  }
}

TEST_CASE("noise injection") {
  MeasurementGrid y;
  y.d = 20000;
  y.delta = 3;
  y.values = RMat::Ones(20000, 5);

  SUBCASE("infinite snr leaves the grid untouched") {
    const MeasurementGrid out = add_noise(y, std::numeric_limits<double>::infinity(), 1);
    CHECK((out.values - y.values).norm() == 0.0);
  }

  SUBCASE("empirical snr lands within 0.2 dB of the target") {
    const double target = 20.0;
    const MeasurementGrid out = add_noise(y, target, 11);
    const double noise_var = (out.values - y.values).array().square().mean();
    const double measured = 10.0 * std::log10(y.values.array().square().mean() / noise_var);
    CHECK(std::abs(measured - target) < 0.2);
  }

  SUBCASE("fixed seed reproduces the draw") {
    const MeasurementGrid a = add_noise(y, 10.0, 77);
    const MeasurementGrid b = add_noise(y, 10.0, 77);
    CHECK((a.values - b.values).norm() == 0.0);
    const MeasurementGrid c = add_noise(y, 10.0, 78);
    CHECK((a.values - c.values).norm() > 0.0);
  }

  SUBCASE("zero grid with finite snr is rejected") {
    MeasurementGrid zero;
    zero.d = 4;
    zero.delta = 2;
    zero.values = RMat::Zero(4, 3);
    CHECK_THROWS_AS(add_noise(zero, 10.0, 1), std::invalid_argument);
  }
}

TEST_CASE("grid csv serialization") {
  MeasurementGrid y;
  y.d = 2;
  y.delta = 1;
  y.values = RMat::Zero(2, 1);
  y.values(0, 0) = 0.1;
  y.values(1, 0) = 2.0;
  std::ostringstream out;
  write_csv(y, out);
  CHECK(out.str() == "shift,freq,value\n0,1,0.1\n1,1,2\n");
}

TEST_CASE("shortest round-trip formatting") {
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(-0.0) == "0");
  CHECK(format_double(std::pow(10.0, -2.5)) == "0.0031622776601683794");
  const double value = 1.0 / 3.0;
  CHECK(std::stod(format_double(value)) == value);
}
