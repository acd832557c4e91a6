#include <doctest.h>

#include <cmath>
#include <sstream>

#include "blockpr/experiments.hpp"
#include "test_support.hpp"

using namespace blockpr;

namespace {

MeasurementSetup gaussian_setup(Index d, Index delta) {
  return make_setup(WindowSpec::gaussian(d, delta, 0.3));
}

}  // namespace

TEST_CASE("random signals are deterministic with unit complex variance") {
  const CVec a = random_signal(64, 7);
  const CVec b = random_signal(64, 7);
  CHECK((a - b).norm() == 0.0);
  CHECK((a - random_signal(64, 8)).norm() > 0.0);

  Complex mean = 0.0;
  double power = 0.0;
  const int samples = 1000;
  const Index d = 100;
  for (int s = 0; s < samples; ++s) {
    const CVec x = random_signal(d, derive_seed(1234, 0xabc, static_cast<std::uint64_t>(s)));
    mean += x.sum();
    power += x.squaredNorm();
  }
  const double count = static_cast<double>(samples) * static_cast<double>(d);
  CHECK(std::abs(mean) / count < 0.02);
  CHECK(power / count == doctest::Approx(1.0).epsilon(0.03));
}

TEST_CASE("relative error closed form") {
  const CVec x0 = blockpr::testing::rand_vec(12, 3);
  CHECK(relative_error(std::polar(1.0, 0.7) * x0, x0) < 1e-12);
  CHECK(relative_error(2.0 * x0, x0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(relative_error(CVec::Zero(12), x0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(relative_error(x0, CVec::Zero(12)), std::invalid_argument);
}

TEST_CASE("blockpr variants agree in odd dimension with no truncation") {
  const MeasurementSetup setup = gaussian_setup(63, 8);
  const BlockSVD svd = make_block_svd(setup.window, 63, 8, 0.0);
  const CVec x0 = random_signal(63, 42);
  const MeasurementGrid y = forward_measure(x0, setup.masks);
  const Reconstruction plain = run_blockpr(y, svd);
  const Reconstruction sc = run_blockpr_sc(y, svd);
  CHECK(sc.complete);
  CHECK((plain.signal - sc.signal).norm() < 1e-8);
  CHECK(relative_error(plain.signal, x0) < 1e-8);
}

TEST_CASE("completion separates the algorithms in even dimension") {
  const MeasurementSetup setup = gaussian_setup(64, 8);
  const BlockSVD svd = make_block_svd(setup.window, 64, 8, 0.0);
  const CVec x0 = random_signal(64, derive_seed(3, 0x5167a1, 0));
  const MeasurementGrid y = forward_measure(x0, setup.masks);
  CHECK(relative_error(run_blockpr_sc(y, svd, MagnitudeMode::diagonal).signal, x0) < 1e-6);
  CHECK(relative_error(run_blockpr(y, svd, MagnitudeMode::diagonal).signal, x0) > 1e-1);
}

TEST_CASE("zero measurements reconstruct to zero") {
  const MeasurementSetup setup = gaussian_setup(16, 3);
  const BlockSVD svd = make_block_svd(setup.window, 16, 3, 0.0);
  MeasurementGrid y;
  y.d = 16;
  y.delta = 3;
  y.values = RMat::Zero(16, 5);
  CHECK(run_blockpr(y, svd).signal.norm() == 0.0);
  CHECK(run_blockpr_sc(y, svd).signal.norm() == 0.0);
  CHECK(run_wirtinger_flow(y, setup.masks).norm() == 0.0);
}

TEST_CASE("wirtinger flow converges on an easy noiseless instance") {
  const MeasurementSetup setup = gaussian_setup(16, 4);
  const CVec x0 = random_signal(16, 5);
  const MeasurementGrid y = forward_measure(x0, setup.masks);
  const CVec a = run_wirtinger_flow(y, setup.masks);
  CHECK(relative_error(a, x0) < 1e-3);
  const CVec b = run_wirtinger_flow(y, setup.masks);
  CHECK((a - b).norm() == 0.0);
}

TEST_CASE("seed derivation is stable and spreads") {
  CHECK(derive_seed(1, 2, 3) == derive_seed(1, 2, 3));
  CHECK(derive_seed(1, 2, 3) != derive_seed(1, 2, 4));
  CHECK(derive_seed(1, 2, 3) != derive_seed(2, 2, 3));
}

TEST_CASE("noiseless sweep on an odd dimension is exact") {
  ExperimentConfig config;
  config.d = 63;
  config.delta = 8;
  config.window = WindowSpec::gaussian(63, 8, 0.3);
  config.trials = 1;
  config.seed = 11;
  config.algorithms = {Algorithm::blockpr};
  const SweepResult result = run_sweep(config);
  REQUIRE(result.rows.size() == 1);
  CHECK(result.rows[0].mean_error < 1e-8);
  CHECK(result.rows[0].trials == 1);
}

TEST_CASE("sweeps are deterministic functions of the config") {
  ExperimentConfig config;
  config.d = 16;
  config.delta = 3;
  config.window = WindowSpec::gaussian(16, 3, 0.3);
  config.trials = 3;
  config.seed = 99;
  config.epsilons = {0.0, 1e-2};
  config.snrs_db = {20.0, std::numeric_limits<double>::infinity()};
  config.algorithms = {Algorithm::blockpr, Algorithm::blockpr_sc};

  std::ostringstream a, b;
  write_csv(run_sweep(config), a);
  write_csv(run_sweep(config), b);
  CHECK(a.str() == b.str());
  CHECK(a.str().substr(0, 39) == "algorithm,epsilon,snr,mean_error,trials");

  // rows sorted by (algorithm, epsilon, snr); snr inf spelled out
  std::istringstream lines(a.str());
  std::string line;
  std::getline(lines, line);
  std::vector<std::string> rows;
  while (std::getline(lines, line)) rows.push_back(line);
  REQUIRE(rows.size() == 8);
  CHECK(rows[0].starts_with("blockpr,0,20,"));
  CHECK(rows[1].starts_with("blockpr,0,inf,"));
  CHECK(rows[2].starts_with("blockpr,0.01,20,"));
  CHECK(rows[7].starts_with("blockpr_sc,0.01,inf,"));
}

TEST_CASE("error decays with snr for the completed pipeline" * doctest::timeout(120)) {
  // d = 63, epsilon = 0: mean error over the snr grid is nonincreasing up to
  // a 5 percent Monte Carlo slack
  ExperimentConfig config;
  config.d = 63;
  config.delta = 8;
  config.window = WindowSpec::gaussian(63, 8, 0.3);
  config.trials = 100;
  config.seed = 5;
  config.snrs_db = {10, 20, 30, 40, 50, 60};
  config.algorithms = {Algorithm::blockpr_sc};
  const SweepResult result = run_sweep(config);
  REQUIRE(result.rows.size() == 6);
  for (std::size_t i = 1; i < result.rows.size(); ++i)
    CHECK(result.rows[i].mean_error <= result.rows[i - 1].mean_error * 1.05);
}
