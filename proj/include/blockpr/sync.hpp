#pragma once

#include <stdexcept>

#include "blockpr/core.hpp"

namespace blockpr {

/// Banded Hermitian matrix whose nonzero entries have unit modulus.
struct PhaseMatrix {
  BandedHermitian band;
};

/// Entrywise x/|x| on the band; entries with |x| <= 1e-12 become structural
/// zeros.
PhaseMatrix normalize_phases(const BandedHermitian& X);

class NoConvergenceError : public std::runtime_error {
 public:
  NoConvergenceError(std::string what, CVec iterate)
      : std::runtime_error(std::move(what)), last_iterate(std::move(iterate)) {}
  CVec last_iterate;
};

struct PowerIterationOptions {
  double tol = 1e-10;
  Index max_iterations = 10000;
};

/// Top eigenvector of the phase matrix, scaled to norm sqrt(d). Power
/// iteration on X + 2*delta*I (the shift dominates every eigenvalue by the
/// Gershgorin bound, so the iteration targets the largest eigenvalue of X);
/// converged when successive unit iterates differ by less than tol after
/// phase alignment. Throws NoConvergenceError with the last iterate attached.
CVec top_eigenvector(const PhaseMatrix& X, const PowerIterationOptions& options = {});

/// sqrt(max(X_jj, 0)) per entry.
RVec magnitudes_diagonal(const BandedHermitian& X);

/// Slides block_size x block_size principal submatrices circularly along the
/// diagonal, takes each block's top eigenvector scaled so its squared norm
/// matches the block trace, and averages the entrywise magnitude estimates
/// over all covering blocks. block_size defaults to delta (pass 0).
RVec magnitudes_block(const BandedHermitian& X, Index block_size = 0);

enum class MagnitudeMode { diagonal, block };

/// x_j = magnitude_j * phase(eigenvector_j) with phase(0) := 1.
CVec assemble_signal(const BandedHermitian& X, MagnitudeMode mode = MagnitudeMode::block,
                     const PowerIterationOptions& options = {});

}  // namespace blockpr
