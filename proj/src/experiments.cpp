#include "blockpr/experiments.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <ostream>
#include <random>

#include <Eigen/Eigenvalues>

namespace blockpr {

namespace {

struct CellKey {
  int algorithm;
  double epsilon;
  double snr;
  bool operator<(const CellKey& other) const {
    if (algorithm != other.algorithm) return algorithm < other.algorithm;
    if (epsilon != other.epsilon) return epsilon < other.epsilon;
    return snr < other.snr;
  }
};

constexpr std::uint64_t kSignalStream = 0x5167a1;
constexpr std::uint64_t kNoiseStream = 0x901532;

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// a sweep cell keeps its mean well-defined even when the synchronization
// stalls; the error carries the signal assembled from the last iterate
template <typename Fn>
CVec recover_or_last(Fn&& fn) {
  try {
    return fn();
  } catch (const NoConvergenceError& err) {
    return err.last_iterate;
  }
}

}  // namespace

std::string algorithm_name(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::blockpr:
      return "blockpr";
    case Algorithm::blockpr_sc:
      return "blockpr_sc";
    case Algorithm::wirtinger_flow:
      return "wirtinger_flow";
  }
  return "unknown";
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream, std::uint64_t counter) {
  return splitmix(splitmix(master ^ stream) + counter);
}

CVec random_signal(Index d, std::uint64_t seed) {
  if (d < 1) throw std::invalid_argument("random_signal: d must be positive");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, std::sqrt(0.5));
  CVec x(d);
  for (Index j = 0; j < d; ++j) {
    const double re = gauss(rng);
    const double im = gauss(rng);
    x[j] = Complex(re, im);
  }
  return x;
}

double relative_error(const CVec& x, const CVec& x0) {
  const double norm0 = x0.norm();
  if (norm0 == 0.0) throw std::invalid_argument("relative_error: zero reference signal");
  const Complex inner = x0.dot(x);  // <x, x0> = sum x conj(x0)
  const Complex rotation = std::abs(inner) > 0.0 ? inner / std::abs(inner) : Complex(1.0);
  return (x - rotation * x0).norm() / norm0;
}

MeasurementSetup make_setup(const WindowSpec& spec) {
  MeasurementSetup setup;
  setup.d = spec.d;
  setup.delta = spec.delta;
  if (2 * spec.delta - 1 > spec.d) throw std::invalid_argument("make_setup: need 2*delta-1 <= d");
  setup.window = unit_energy(make_window(spec));
  setup.masks = build_masks(setup.window, spec.delta);
  return setup;
}

Reconstruction run_blockpr(const MeasurementGrid& y, const BlockSVD& svd, MagnitudeMode mode) {
  const BandedHermitian X = apply_regularized_inverse(svd, y);
  return {assemble_signal(X, mode), true};
}

Reconstruction run_blockpr_sc(const MeasurementGrid& y, const BlockSVD& svd, MagnitudeMode mode) {
  const BandedHermitian X_S = apply_regularized_inverse(svd, y);
  const LostIndexSet lost = lost_indices(svd);
  if (lost.pairs.empty()) return {assemble_signal(X_S, mode), true};
  const CompletionProblem problem = extract_known_coefficients(X_S, lost);
  CompletionResult completed = complete(problem);
  const BandedHermitian X = assemble_diagonals(completed.diagonals);
  return {assemble_signal(X, mode), completed.assumptions_held};
}

CVec run_wirtinger_flow(const MeasurementGrid& y, const MaskSet& masks,
                        const WirtingerOptions& options) {
  const Index d = masks.d;
  const Index delta = masks.delta;
  const Index nd = 2 * delta - 1;
  if (y.values.sum() <= 0.0) return CVec::Zero(d);

  // The step-size rule expects isotropically normalized measurement vectors,
  // (1/m) sum a a* = I. For these masks sum_{l,j} a a* = sqrt(2delta-1)
  // ||w||^2 I, so rescale a -> alpha a, y -> alpha^2 y internally; the
  // minimizer is unchanged.
  const double m_count = static_cast<double>(d * nd);
  const double alpha_sq =
      static_cast<double>(d) * std::sqrt(static_cast<double>(nd)) / masks.window.squaredNorm();
  const double alpha = std::sqrt(alpha_sq);
  std::vector<CVec> scaled;
  scaled.reserve(masks.masks.size());
  for (const CVec& m : masks.masks) scaled.push_back(alpha * m);
  const RMat ys = alpha_sq * y.values;

  // spectral initialization: top eigenvector of (1/m) sum y_{l,j} a a* with
  // a = S_l* m_j, scaled so the estimate carries the measurement energy
  CMat Y = CMat::Zero(d, d);
  for (Index l = 0; l < d; ++l) {
    for (Index j = 0; j < nd; ++j) {
      const CVec& m = scaled[static_cast<std::size_t>(j)];
      const double weight = ys(l, j) / m_count;
      for (Index a = 0; a < delta; ++a)
        for (Index b = 0; b < delta; ++b)
          Y((l + a) % d, (l + b) % d) += weight * m[a] * std::conj(m[b]);
    }
  }
  Eigen::SelfAdjointEigenSolver<CMat> solver(Y);
  CVec z = solver.eigenvectors().col(d - 1);
  z *= std::sqrt(std::max(ys.mean(), 0.0));  // mean intensity estimates ||x||^2
  const double z0_norm_sq = z.squaredNorm();
  if (z0_norm_sq == 0.0) return z;

  const auto residual = [&](const CVec& v, CMat* b) {
    double loss = 0.0;
    for (Index l = 0; l < d; ++l) {
      for (Index j = 0; j < nd; ++j) {
        const CVec& m = scaled[static_cast<std::size_t>(j)];
        Complex acc = 0.0;
        for (Index n = 0; n < delta; ++n) acc += v[(n + l) % d] * std::conj(m[n]);
        if (b) (*b)(l, j) = acc;
        const double diff = std::norm(acc) - ys(l, j);
        loss += diff * diff;
      }
    }
    return loss / (2.0 * m_count);
  };

  CVec best = z;
  double best_loss = std::numeric_limits<double>::infinity();
  CMat b(d, nd);
  for (Index iter = 1; iter <= options.max_iterations; ++iter) {
    const double loss = residual(z, &b);
    if (loss < best_loss) {
      best_loss = loss;
      best = z;
    }
    CVec grad = CVec::Zero(d);
    for (Index l = 0; l < d; ++l) {
      for (Index j = 0; j < nd; ++j) {
        const CVec& m = scaled[static_cast<std::size_t>(j)];
        const Complex c = (std::norm(b(l, j)) - ys(l, j)) * b(l, j) / m_count;
        for (Index n = 0; n < delta; ++n) grad[(n + l) % d] += c * m[n];
      }
    }
    const double mu =
        std::min(1.0 - std::exp(-static_cast<double>(iter) / options.tau0), options.mu_max);
    z -= (mu / z0_norm_sq) * grad;
  }
  return residual(z, nullptr) < best_loss ? z : best;
}

SweepResult run_sweep(const ExperimentConfig& config) {
  if (config.trials < 1) throw std::invalid_argument("run_sweep: trials must be at least 1");
  if (config.d < 2 * config.delta - 1)
    throw std::invalid_argument("run_sweep: need d >= 2*delta-1");
  const MeasurementSetup setup = make_setup(config.window);

  std::map<double, BlockSVD> svds;
  for (double eps : config.epsilons)
    svds.emplace(eps, make_block_svd(setup.window, setup.d, setup.delta, eps));

  std::map<CellKey, SweepRow> cells;
  for (int trial = 0; trial < config.trials; ++trial) {
    const std::uint64_t signal_seed =
        derive_seed(config.seed, kSignalStream, static_cast<std::uint64_t>(trial));
    const CVec x0 = random_signal(config.d, signal_seed);
    const MeasurementGrid clean = forward_measure(x0, setup.masks);
    for (double snr : config.snrs_db) {
      const std::uint64_t noise_seed =
          derive_seed(config.seed, kNoiseStream,
                      static_cast<std::uint64_t>(trial) * 0x10001ULL + std::bit_cast<std::uint64_t>(snr));
      const MeasurementGrid y = add_noise(clean, snr, noise_seed);
      for (Algorithm algorithm : config.algorithms) {
        for (double eps : config.epsilons) {
          // wirtinger flow has no truncation; run it once per (trial, snr)
          if (algorithm == Algorithm::wirtinger_flow && eps != config.epsilons.front()) continue;
          CVec estimate;
          switch (algorithm) {
            case Algorithm::blockpr:
              estimate = recover_or_last(
                  [&] { return run_blockpr(y, svds.at(eps), config.magnitude_mode).signal; });
              break;
            case Algorithm::blockpr_sc:
              estimate = recover_or_last(
                  [&] { return run_blockpr_sc(y, svds.at(eps), config.magnitude_mode).signal; });
              break;
            case Algorithm::wirtinger_flow:
              estimate = run_wirtinger_flow(y, setup.masks, config.wirtinger);
              break;
          }
          const double error = relative_error(estimate, x0);
          const CellKey key{static_cast<int>(algorithm),
                            algorithm == Algorithm::wirtinger_flow ? 0.0 : eps, snr};
          SweepRow& row = cells[key];
          row.algorithm = algorithm;
          row.epsilon = key.epsilon;
          row.snr_db = snr;
          row.mean_error += error;
          row.trials += 1;
        }
      }
    }
  }

  SweepResult result;
  for (auto& [key, row] : cells) {
    row.mean_error /= static_cast<double>(row.trials);
    result.rows.push_back(row);
  }
  return result;
}

void write_csv(const SweepResult& result, std::ostream& out) {
  out << "algorithm,epsilon,snr,mean_error,trials\n";
  for (const SweepRow& row : result.rows) {
    out << algorithm_name(row.algorithm) << ',' << format_double(row.epsilon) << ','
        << (std::isfinite(row.snr_db) ? format_double(row.snr_db) : "inf") << ','
        << format_double(row.mean_error) << ',' << row.trials << '\n';
  }
}

}  // namespace blockpr
