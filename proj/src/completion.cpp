#include "blockpr/completion.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/SVD>

namespace blockpr {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Complex unit_phase(double angle) { return {std::cos(angle), std::sin(angle)}; }

Index mod(Index a, Index m) {
  Index r = a % m;
  return r < 0 ? r + m : r;
}

std::vector<Index> missing_positions(const CompletionProblem& problem, Index r) {
  std::vector<Index> out;
  for (Index xi = 1; xi <= problem.d; ++xi)
    if (!problem.known(r - 1, xi - 1)) out.push_back(xi);
  return out;
}

Index pick_reference(const CompletionProblem& problem, const std::vector<Index>& candidates) {
  Index best = 0;
  for (Index r : candidates) {
    if (best == 0 || problem.diag_min_abs_z[r - 1] > problem.diag_min_abs_z[best - 1]) best = r;
  }
  return best;
}

}  // namespace

CompletionProblem extract_known_coefficients(const BandedHermitian& X_S, const LostIndexSet& lost) {
  const Index d = X_S.dim();
  const Index delta = X_S.band_delta();
  const Index nd = 2 * delta - 1;
  CompletionProblem problem;
  problem.d = d;
  problem.delta = delta;
  problem.known = BoolArray::Constant(nd, d, true);
  problem.diag_min_abs_z = lost.min_abs_z;
  if (problem.diag_min_abs_z.size() == 0) problem.diag_min_abs_z = RVec::Zero(nd);
  if (problem.diag_min_abs_z.size() != nd)
    throw std::invalid_argument("extract_known_coefficients: lost set does not match the band");

  const DiagonalSet L = extract_diagonals(X_S);
  problem.fourier_diag.reserve(static_cast<std::size_t>(nd));
  for (Index r = 1; r <= nd; ++r) problem.fourier_diag.push_back(dft(L.diag[static_cast<std::size_t>(r - 1)]));

  for (const auto& [k, j] : lost.pairs) {
    if (k < 1 || k > d || j < 1 || j > nd)
      throw std::invalid_argument("extract_known_coefficients: lost pair outside the table");
    problem.known(j - 1, k - 1) = false;
    problem.fourier_diag[static_cast<std::size_t>(j - 1)][k - 1] = 0.0;
  }

  std::vector<Index> full;
  for (Index r = 1; r <= delta; ++r)
    if (missing_positions(problem, r).empty()) full.push_back(r);
  problem.reference_index = pick_reference(problem, full);
  return problem;
}

LinearCoefficientSystem build_linear_system(const CompletionProblem& problem, Index r_star, Index l,
                                            Index q) {
  const Index d = problem.d;
  if (r_star < 1 || r_star > problem.delta || l < 1 || l > problem.delta)
    throw std::invalid_argument("build_linear_system: diagonals must lie in [1, delta]");
  if (q < 1 || q > d) throw std::invalid_argument("build_linear_system: position outside [1, d]");
  if (!missing_positions(problem, r_star).empty())
    throw std::invalid_argument("build_linear_system: reference diagonal has missing coefficients");
  const std::vector<Index> missing = missing_positions(problem, l);
  if (missing.size() > 1)
    throw MultipleMissingError("build_linear_system: more than one missing coefficient on the diagonal");
  if (missing.size() == 1 && missing.front() != q)
    throw std::invalid_argument("build_linear_system: q is not the missing position");

  // hat L^l with the target slot zeroed; every sum below then skips the
  // unknown-bearing terms automatically
  CVec lhat = problem.fourier_diag[static_cast<std::size_t>(l - 1)];
  lhat[q - 1] = 0.0;

  // c_j = d * dft(L^{r*} o S_{l-1} conj(L^{r*}))_j, the fully known side
  const CVec ref = idft(problem.fourier_diag[static_cast<std::size_t>(r_star - 1)]);
  const CVec shifted = circular_shift(ref, l - 1).conjugate();
  const CVec c = dft(hadamard(ref, shifted)) * static_cast<double>(d);

  // z_j = sum_{p not in C} e^{2 pi i (r*-1)(p-1)/d} lhat_{j-p+1} conj(lhat)_{d-p+2}
  // for all j at once as a circular convolution of lhat with
  // g_p = e^{2 pi i (r*-1)(p-1)/d} conj(lhat)_{d-p+2}
  CVec g(d);
  for (Index p = 1; p <= d; ++p)
    g[p - 1] = unit_phase(kTwoPi * static_cast<double>((r_star - 1) * (p - 1)) / static_cast<double>(d)) *
               std::conj(lhat[mod(1 - p, d)]);
  const CVec zfull = idft(hadamard(dft(lhat), dft(g)));

  LinearCoefficientSystem system;
  system.target_diag = l;
  system.target_pos = q;
  system.Q.resize(2 * (d - 1), 2);
  system.v.resize(2 * (d - 1));
  for (Index j = 2; j <= d; ++j) {
    const Complex a =
        unit_phase(kTwoPi * static_cast<double>((r_star - 1) * (j - q)) / static_cast<double>(d)) *
        std::conj(lhat[mod(d - j + q, d)]);
    const Complex b =
        unit_phase(kTwoPi * static_cast<double>((r_star - 1) * (d - q + 1)) / static_cast<double>(d)) *
        lhat[mod(j - d + q - 2, d)];
    const Complex rhs = c[j - 1] - zfull[j - 1];
    const Index row = 2 * (j - 2);
    system.Q(row, 0) = a.real() + b.real();
    system.Q(row, 1) = -a.imag() + b.imag();
    system.Q(row + 1, 0) = a.imag() + b.imag();
    system.Q(row + 1, 1) = a.real() - b.real();
    system.v[row] = rhs.real();
    system.v[row + 1] = rhs.imag();
  }
  return system;
}

Complex solve_missing(const LinearCoefficientSystem& system) {
  Eigen::JacobiSVD<RMat> svd(system.Q, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const RVec& sigma = svd.singularValues();
  if (sigma[0] <= 0.0 || sigma[1] <= 1e-12 * sigma[0])
    throw RankDeficientError("solve_missing: coefficient system has rank below 2");
  const Eigen::Vector2d sol = svd.solve(system.v);
  return {sol[0], sol[1]};
}

CompletionResult complete(const CompletionProblem& problem) {
  const Index d = problem.d;
  const Index delta = problem.delta;
  const Index nd = 2 * delta - 1;

  std::vector<std::vector<Index>> missing(static_cast<std::size_t>(delta + 1));
  bool any_full = false;
  bool at_most_one = true;
  for (Index r = 1; r <= delta; ++r) {
    missing[static_cast<std::size_t>(r)] = missing_positions(problem, r);
    if (missing[static_cast<std::size_t>(r)].empty()) any_full = true;
    if (missing[static_cast<std::size_t>(r)].size() > 1) at_most_one = false;
  }

  CompletionResult result;
  result.assumptions_held = any_full && at_most_one;

  // working copy where every unresolved unknown counts as a zero-valued
  // known; each solve re-opens exactly its own target slot
  CompletionProblem work = problem;
  work.known = BoolArray::Constant(nd, d, true);

  std::vector<Index> order;
  for (Index r = 1; r <= delta; ++r)
    if (!missing[static_cast<std::size_t>(r)].empty()) order.push_back(r);
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) {
    return missing[static_cast<std::size_t>(a)].size() < missing[static_cast<std::size_t>(b)].size();
  });

  std::vector<Index> available;
  for (Index r = 1; r <= delta; ++r)
    if (missing[static_cast<std::size_t>(r)].empty()) available.push_back(r);

  for (Index r : order) {
    const Index ref = pick_reference(work, available);
    if (ref != 0) {
      for (Index q : missing[static_cast<std::size_t>(r)]) {
        work.known(r - 1, q - 1) = false;
        try {
          const LinearCoefficientSystem system = build_linear_system(work, ref, r, q);
          work.fourier_diag[static_cast<std::size_t>(r - 1)][q - 1] = solve_missing(system);
        } catch (const RankDeficientError&) {
          // leave the zero fill in place
        }
        work.known(r - 1, q - 1) = true;
      }
    }
    available.push_back(r);
  }

  DiagonalSet out;
  out.d = d;
  out.delta = delta;
  out.diag.assign(static_cast<std::size_t>(nd), CVec::Zero(d));
  out.fourier_known = BoolArray::Constant(nd, d, true);
  for (Index r = 1; r <= delta; ++r)
    out.diag[static_cast<std::size_t>(r - 1)] = idft(work.fourier_diag[static_cast<std::size_t>(r - 1)]);
  out.diag[0] = out.diag[0].real().cast<Complex>();
  // L^{2delta-r+1}_w = conj(L^r_{w-r+2}) closes the Hermitian pairing
  for (Index r = 2; r <= delta; ++r) {
    const Index rp = 2 * delta - r + 1;
    const CVec& src = out.diag[static_cast<std::size_t>(r - 1)];
    CVec& dst = out.diag[static_cast<std::size_t>(rp - 1)];
    for (Index w = 1; w <= d; ++w) dst[w - 1] = std::conj(src[mod(w - r + 1, d)]);
  }
  result.diagonals = std::move(out);
  return result;
}

}  // namespace blockpr
