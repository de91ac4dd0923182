#include "tempo_katz/centrality.hpp"

#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "tempo_katz/errors.hpp"
#include "tempo_katz/parallel.hpp"

namespace tempo_katz {

std::string_view to_string(Measure measure) {
  switch (measure) {
    case Measure::kTotalCommunicability: return "tc";
    case Measure::kSubgraph: return "sc";
  }
  return "unknown";
}

namespace {

double limit_from(double radius, double ell) {
  if (std::isinf(radius) || std::isinf(ell)) return std::numeric_limits<double>::infinity();
  return radius * ell;
}

// Validates alpha against radius * ell(mode) and returns that limit.
double check_alpha(const TemporalNetwork& net, double alpha, double radius, Mode mode,
                   const CentralityOptions& options) {
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
    throw ParameterError("alpha must be a finite nonnegative number", alpha, 0.0);
  }
  const AlphaBound bound = alpha_bound(net, mode, options.power);
  const double limit = limit_from(radius, bound.ell);
  if (options.force) return limit;
  if (!bound.converged) {
    throw ConvergenceError("spectral radius estimate did not converge; cannot certify alpha");
  }
  if (!(alpha < limit)) {
    throw ParameterError("alpha = " + format_real(alpha) +
                             " is outside the admissible interval (0, " +
                             format_real(limit) + ") for mode " +
                             std::string(to_string(mode)),
                         alpha, limit);
  }
  return limit;
}

// (L^T x)_i = sum of x_e over edges e leaving i.
Vector project_sources(const EdgeSpaceIndex& index, NodeId n, const Vector& x) {
  Vector out = Vector::Zero(n);
  for (std::size_t e = 0; e < index.size(); ++e) out[index[e].source] += x[static_cast<int>(e)];
  return out;
}

// Applies d f(alpha M) to edge-space vectors, by linear solves when f is a
// resolvent and by truncated series otherwise. The solve runs block back
// substitution over the snapshots: one factorization per diagonal block
// instead of one of M, whose fill-in grows much faster.
class EdgeFunction {
 public:
  EdgeFunction(const BlockTransition& blocks, const SparseMatrix& m, double alpha,
               const CoefficientFunction& f, const SeriesOptions& series)
      : blocks_(blocks), m_(m), alpha_(alpha), g_(partial_op(f)), series_(series) {
    if (const auto& p = g_.resolvent_params(); p && p->gamma != 0.0) {
      scale_ = p->gamma;
      solve_alpha_ = alpha_ * p->delta;
      const EdgeSpaceIndex& index = blocks_.index();
      for (std::size_t tau = 0; tau < index.num_snapshots(); ++tau) {
        if (index.snapshot_size(tau) == 0) {
          diagonal_.emplace_back();
        } else {
          diagonal_.emplace_back(std::in_place, blocks_.block(tau, tau), solve_alpha_,
                                 series_.tol);
        }
      }
      use_solver_ = true;
    }
  }

  Vector apply(const Vector& v, bool& truncated) const {
    if (use_solver_) return scale_ * block_solve(v);
    SeriesResult r = apply_series(m_, alpha_, g_, v, series_);
    if (r.truncated) truncated = true;
    return std::move(r.value);
  }

 private:
  Vector block_solve(const Vector& v) const {
    const EdgeSpaceIndex& index = blocks_.index();
    const std::size_t n_snap = index.num_snapshots();
    Vector x = Vector::Zero(v.size());
    for (std::size_t t1 = n_snap; t1-- > 0;) {
      const int size = static_cast<int>(index.snapshot_size(t1));
      if (size == 0) continue;
      const int row0 = static_cast<int>(index.offset(t1));
      Vector rhs = v.segment(row0, size);
      for (std::size_t t2 = t1 + 1; t2 < n_snap; ++t2) {
        const SparseMatrix& c = blocks_.block(t1, t2);
        if (c.nonZeros() == 0) continue;
        rhs += solve_alpha_ * multiply(c, x.segment(static_cast<int>(index.offset(t2)),
                                                    c.cols()));
      }
      x.segment(row0, size) = diagonal_[t1]->solve(rhs);
    }
    return x;
  }

  const BlockTransition& blocks_;
  const SparseMatrix& m_;
  double alpha_;
  CoefficientFunction g_;
  SeriesOptions series_;
  double scale_ = 1.0;
  double solve_alpha_ = 0.0;
  bool use_solver_ = false;
  std::vector<std::optional<ResolventSolver>> diagonal_;
};

CentralityVector make_result(Measure measure, Mode mode, double alpha,
                             const std::string& function, const CentralityOptions& options,
                             double limit) {
  CentralityVector out;
  out.measure = measure;
  out.mode = mode;
  out.alpha = alpha;
  out.function = function;
  out.forced = options.force;
  out.alpha_limit = limit;
  return out;
}

}  // namespace

double admissible_alpha_limit(const TemporalNetwork& net, const CoefficientFunction& f,
                              Mode mode, const PowerIterationOptions& power) {
  return limit_from(f.radius(), alpha_bound(net, mode, power).ell);
}

CentralityVector dynamic_katz_node_level(const TemporalNetwork& net, double alpha,
                                         const CentralityOptions& options) {
  const double limit = check_alpha(net, alpha, 1.0, Mode::kStandard, options);
  CentralityVector out = make_result(Measure::kTotalCommunicability, Mode::kStandard,
                                     alpha, "katz", options, limit);
  Vector y = Vector::Ones(net.num_nodes());
  for (std::size_t tau = net.num_snapshots(); tau-- > 0;) {
    y = resolvent_solve(adjacency_matrix(net, tau), alpha, y, options.series.tol);
  }
  out.values = std::move(y);
  return out;
}

CentralityVector nbt_space_katz_node_level(const TemporalNetwork& net, double alpha,
                                           const CentralityOptions& options) {
  if (alpha == 1.0) {
    throw ParameterError("alpha = 1 makes the (1 - alpha^2) prefactor vanish", alpha, 1.0);
  }
  const double limit = check_alpha(net, alpha, 1.0, Mode::kNbtSpace, options);
  CentralityVector out = make_result(Measure::kTotalCommunicability, Mode::kNbtSpace,
                                     alpha, "katz", options, limit);
  const NodeId n = net.num_nodes();
  SparseMatrix identity(n, n);
  identity.setIdentity();

  Vector y = Vector::Ones(n);
  for (std::size_t tau = net.num_snapshots(); tau-- > 0;) {
    const SparseMatrix a = adjacency_matrix(net, tau);
    const DegreeMatrices ds = deg_matrices(a);
    // I - alpha K with K = A - alpha (D - I) - alpha^2 (A - S) equals
    // I - alpha A + alpha^2 (D - I) + alpha^3 (A - S).
    SparseMatrix k = a - alpha * (ds.degree - identity) - alpha * alpha * (a - ds.reciprocal);
    prune(k);
    y = resolvent_solve(k, alpha, y, options.series.tol);
  }
  y *= std::pow(1.0 - alpha * alpha, static_cast<double>(net.num_snapshots()));
  out.values = std::move(y);
  return out;
}

CentralityVector temporal_f_total_communicability(const TemporalNetwork& net,
                                                  double alpha,
                                                  const CoefficientFunction& f, Mode mode,
                                                  const CentralityOptions& options) {
  const double limit = check_alpha(net, alpha, f.radius(), mode, options);
  CentralityVector out = make_result(Measure::kTotalCommunicability, mode, alpha,
                                     f.name(), options, limit);
  const double c0 = f.coefficient(0);
  const BlockTransition blocks(net, mode);
  const SparseMatrix m = blocks.materialize();

  Vector walks = Vector::Zero(net.num_nodes());
  if (m.rows() > 0) {
    const EdgeFunction g(blocks, m, alpha, f, options.series);
    walks = project_sources(blocks.index(), net.num_nodes(),
                            g.apply(Vector::Ones(m.rows()), out.truncated));
  }
  out.values = Vector::Constant(net.num_nodes(), c0) + alpha * walks;
  return out;
}

CentralityVector temporal_f_subgraph_centrality(const TemporalNetwork& net, double alpha,
                                                const CoefficientFunction& f, Mode mode,
                                                const CentralityOptions& options) {
  const double limit = check_alpha(net, alpha, f.radius(), mode, options);
  CentralityVector out =
      make_result(Measure::kSubgraph, mode, alpha, f.name(), options, limit);
  const NodeId n = net.num_nodes();
  const double c0 = f.coefficient(0);
  const BlockTransition blocks(net, mode);
  const SparseMatrix m = blocks.materialize();
  const EdgeSpaceIndex& index = blocks.index();

  std::vector<std::vector<int>> incoming(static_cast<std::size_t>(n));
  std::vector<std::vector<int>> outgoing(static_cast<std::size_t>(n));
  for (std::size_t e = 0; e < index.size(); ++e) {
    incoming[static_cast<std::size_t>(index[e].target)].push_back(static_cast<int>(e));
    outgoing[static_cast<std::size_t>(index[e].source)].push_back(static_cast<int>(e));
  }

  out.values = Vector::Constant(n, c0);
  if (m.rows() == 0) return out;
  const EdgeFunction g(blocks, m, alpha, f, options.series);
  std::vector<char> truncated(static_cast<std::size_t>(n), 0);
  parallel_for(static_cast<std::size_t>(n), [&](std::size_t i) {
    // Closed walks need an edge into i and an edge out of i.
    if (incoming[i].empty() || outgoing[i].empty()) return;
    Vector column = Vector::Zero(m.rows());
    for (int e : incoming[i]) column[e] = 1.0;
    bool trunc = false;
    const Vector s = g.apply(column, trunc);
    double closed = 0.0;
    for (int e : outgoing[i]) closed += s[e];
    out.values[static_cast<int>(i)] = c0 + alpha * closed;
    truncated[i] = trunc;
  });
  for (char t : truncated) out.truncated = out.truncated || t;
  return out;
}

CommunicabilityMatrix communicability_matrix(const TemporalNetwork& net, double alpha,
                                             const CoefficientFunction& f, Mode mode,
                                             const CentralityOptions& options) {
  check_alpha(net, alpha, f.radius(), mode, options);
  const NodeId n = net.num_nodes();
  const double c0 = f.coefficient(0);
  CommunicabilityMatrix out;
  out.values = c0 * DenseMatrix::Identity(n, n);

  const BlockTransition blocks(net, mode);
  const SparseMatrix m = blocks.materialize();
  if (m.rows() == 0) return out;
  const EdgeSpaceIndex& index = blocks.index();
  const EdgeFunction g(blocks, m, alpha, f, options.series);

  std::vector<char> truncated(static_cast<std::size_t>(n), 0);
  parallel_for(static_cast<std::size_t>(n), [&](std::size_t j) {
    Vector column = Vector::Zero(m.rows());
    bool any = false;
    for (std::size_t e = 0; e < index.size(); ++e) {
      if (index[e].target == static_cast<NodeId>(j)) {
        column[static_cast<int>(e)] = 1.0;
        any = true;
      }
    }
    if (!any) return;
    bool trunc = false;
    const Vector s = g.apply(column, trunc);
    out.values.col(static_cast<int>(j)) += alpha * project_sources(index, n, s);
    truncated[j] = trunc;
  });
  for (char t : truncated) out.truncated = out.truncated || t;
  return out;
}

}  // namespace tempo_katz
