#pragma once

#include <cstddef>
#include <vector>

#include "tempo_katz/line_space.hpp"
#include "tempo_katz/sparse.hpp"
#include "tempo_katz/temporal_graph.hpp"

namespace tempo_katz {

struct PowerIterationOptions {
  double tol = 1e-10;
  int max_iterations = 10000;
};

struct SpectralEstimate {
  double value = 0.0;
  bool converged = true;
  int iterations = 0;
};

/// Spectral radius of a square nonnegative matrix.
///
/// The matrix is split into strongly connected components; the radius is the
/// largest component radius. Trivial components contribute their diagonal
/// entry, so nilpotent inputs return exactly 0. Each nontrivial component is
/// irreducible, and shifted power iteration started from the all-ones vector
/// (never orthogonal to the positive Perron vector) is run until the
/// Collatz-Wielandt bracket min_i (Sx)_i/x_i <= rho <= max_i (Sx)_i/x_i has
/// relative width <= tol. When max_iterations is hit, `converged` is false and
/// `value` holds the midpoint of the last bracket.
///
/// Throws std::invalid_argument for non-square input or negative entries.
SpectralEstimate spectral_radius(const SparseMatrix& m,
                                 const PowerIterationOptions& options = {});

struct DegreeMatrices {
  SparseMatrix degree;      // D = diag(diag(A^2)): reciprocated partners per node
  SparseMatrix reciprocal;  // S = A o A^T
};

DegreeMatrices deg_matrices(const SparseMatrix& adjacency);

/// lambda = 1 / rho(B) for the Hashimoto matrix of one snapshot; +inf when
/// rho(B) == 0.
SpectralEstimate nbt_radius(const Snapshot& snapshot, NodeId num_nodes,
                            const PowerIterationOptions& options = {});

struct SnapshotRadii {
  double rho = 0.0;     // rho(A^{[tau]})
  double lambda = 0.0;  // 1 / rho(B^{[tau]})
  bool converged = true;
};

/// Admissible parameters are 0 < alpha < ell.
struct AlphaBound {
  Mode mode = Mode::kStandard;
  double ell = 0.0;
  std::vector<SnapshotRadii> per_snapshot;
  bool converged = true;
};

/// ell = 1 / max_tau rho(A) for Standard and NbtTime, min_tau lambda_tau for
/// NbtSpace and NbtBoth. Non-convergence is reported through `converged` with
/// all radii still filled in.
AlphaBound alpha_bound(const TemporalNetwork& net, Mode mode,
                       const PowerIterationOptions& options = {});

}  // namespace tempo_katz
