#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "blockpr/completion.hpp"
#include "blockpr/core.hpp"
#include "blockpr/masks.hpp"
#include "blockpr/spectral.hpp"
#include "blockpr/sync.hpp"

namespace blockpr {

enum class Algorithm { blockpr, blockpr_sc, wirtinger_flow };

std::string algorithm_name(Algorithm algorithm);

struct WirtingerOptions {
  Index max_iterations = 2500;
  double tau0 = 330.0;
  double mu_max = 0.4;
};

struct ExperimentConfig {
  Index d = 0;
  Index delta = 0;
  WindowSpec window;
  std::vector<double> epsilons = {0.0};
  std::vector<double> snrs_db = {std::numeric_limits<double>::infinity()};
  int trials = 100;
  std::uint64_t seed = 0;
  std::vector<Algorithm> algorithms = {Algorithm::blockpr_sc};
  MagnitudeMode magnitude_mode = MagnitudeMode::block;
  WirtingerOptions wirtinger;
};

/// Counter-based split of a master seed; stable under reordering of draws.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream, std::uint64_t counter);

/// Entries with independent real and imaginary parts N(0, 1/2), so unit
/// complex variance. Deterministic per seed.
CVec random_signal(Index d, std::uint64_t seed);

/// min over a global phase of ||x - e^{i theta} x0|| / ||x0||; the optimal
/// theta aligns the inner product, with theta = 0 when <x, x0> vanishes.
double relative_error(const CVec& x, const CVec& x0);

/// Measurement setup shared by all algorithms: the unit-energy window with
/// its masks. Windows enter the measurement model normalized; the paper's
/// singular value table and truncation levels presume unit window energy.
struct MeasurementSetup {
  Index d = 0;
  Index delta = 0;
  CVec window;  // unit energy
  MaskSet masks;
};

MeasurementSetup make_setup(const WindowSpec& spec);

struct Reconstruction {
  CVec signal;
  bool complete = true;  // subspace completion assumptions held (or nothing was lost)
};

/// Truncated inversion, phase normalization, synchronization, magnitudes.
Reconstruction run_blockpr(const MeasurementGrid& y, const BlockSVD& svd,
                           MagnitudeMode mode = MagnitudeMode::block);

/// Same pipeline with the subspace completion step between inversion and
/// phase normalization.
Reconstruction run_blockpr_sc(const MeasurementGrid& y, const BlockSVD& svd,
                              MagnitudeMode mode = MagnitudeMode::block);

/// Baseline: spectral initialization scaled to the measurement energy,
/// then Wirtinger gradient descent with the ramped step
/// mu_t = min(1 - e^{-t/tau0}, mu_max). Returns the iterate with the
/// smallest measurement residual.
CVec run_wirtinger_flow(const MeasurementGrid& y, const MaskSet& masks,
                        const WirtingerOptions& options = {});

struct SweepRow {
  Algorithm algorithm = Algorithm::blockpr;
  double epsilon = 0.0;
  double snr_db = 0.0;
  double mean_error = 0.0;
  int trials = 0;
};

struct SweepResult {
  std::vector<SweepRow> rows;  // sorted by (algorithm, epsilon, snr)
};

/// One row per (algorithm, epsilon, snr) cell, each the mean relative error
/// over config.trials independent signals. Signals and noise draws depend
/// only on (seed, trial, snr), so every algorithm and epsilon sees the same
/// data.
SweepResult run_sweep(const ExperimentConfig& config);

/// Columns algorithm,epsilon,snr,mean_error,trials; infinite snr spelled inf.
void write_csv(const SweepResult& result, std::ostream& out);

}  // namespace blockpr
