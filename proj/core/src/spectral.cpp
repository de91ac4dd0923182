#include "tempo_katz/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

namespace tempo_katz {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Iterative Tarjan over the sparsity pattern. Returns the component id of every
// vertex and the number of components.
std::pair<std::vector<int>, int> strongly_connected_components(const SparseMatrix& m) {
  const int n = static_cast<int>(m.rows());
  std::vector<int> index(n, -1), low(n, 0), comp(n, -1);
  std::vector<char> on_stack(n, 0);
  std::vector<int> stack;
  std::vector<std::pair<int, SparseMatrix::InnerIterator>> call;
  int next_index = 0;
  int n_comp = 0;

  for (int root = 0; root < n; ++root) {
    if (index[root] != -1) continue;
    index[root] = low[root] = next_index++;
    stack.push_back(root);
    on_stack[root] = 1;
    call.emplace_back(root, SparseMatrix::InnerIterator(m, root));

    while (!call.empty()) {
      auto& [v, it] = call.back();
      if (it) {
        const int w = it.col();
        ++it;
        if (index[w] == -1) {
          index[w] = low[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = 1;
          call.emplace_back(w, SparseMatrix::InnerIterator(m, w));
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      const int done = v;
      call.pop_back();
      if (!call.empty()) {
        const int parent = call.back().first;
        low[parent] = std::min(low[parent], low[done]);
      }
      if (low[done] == index[done]) {
        int w = -1;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          comp[w] = n_comp;
        } while (w != done);
        ++n_comp;
      }
    }
  }
  return {std::move(comp), n_comp};
}

struct LocalRow {
  std::vector<std::pair<int, double>> entries;
};

SpectralEstimate irreducible_radius(const std::vector<LocalRow>& rows,
                                    const PowerIterationOptions& options) {
  const std::size_t k = rows.size();
  double shift = 0.0;
  for (const auto& row : rows) {
    double sum = 0.0;
    for (const auto& [c, v] : row.entries) sum += v;
    shift = std::max(shift, sum);
  }

  std::vector<double> x(k, 1.0), sx(k, 0.0);
  SpectralEstimate est;
  est.converged = false;
  for (int iter = 1; iter <= options.max_iterations; ++iter) {
    double lower = kInf;
    double upper = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      double acc = 0.0;
      for (const auto& [c, v] : rows[i].entries) acc += v * x[static_cast<std::size_t>(c)];
      sx[i] = acc;
      const double q = acc / x[i];
      lower = std::min(lower, q);
      upper = std::max(upper, q);
    }
    est.value = 0.5 * (lower + upper);
    est.iterations = iter;
    if (upper - lower <= options.tol * upper) {
      est.converged = true;
      return est;
    }
    double peak = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      x[i] = sx[i] + shift * x[i];
      peak = std::max(peak, x[i]);
    }
    for (double& xi : x) xi /= peak;
  }
  return est;
}

}  // namespace

SpectralEstimate spectral_radius(const SparseMatrix& m,
                                 const PowerIterationOptions& options) {
  if (m.rows() != m.cols()) throw std::invalid_argument("spectral_radius: matrix not square");
  if (!(options.tol > 0.0)) throw std::invalid_argument("spectral_radius: tol must be > 0");
  for (int r = 0; r < m.outerSize(); ++r) {
    for (SparseMatrix::InnerIterator it(m, r); it; ++it) {
      if (it.value() < 0.0) {
        throw std::invalid_argument("spectral_radius: negative entry");
      }
    }
  }

  SpectralEstimate result;
  if (m.rows() == 0) return result;

  const auto [comp, n_comp] = strongly_connected_components(m);
  std::vector<std::vector<int>> members(static_cast<std::size_t>(n_comp));
  for (int v = 0; v < static_cast<int>(comp.size()); ++v) {
    members[static_cast<std::size_t>(comp[v])].push_back(v);
  }

  std::vector<int> local(comp.size(), -1);
  for (const auto& group : members) {
    if (group.size() == 1) {
      result.value = std::max(result.value, m.coeff(group[0], group[0]));
      continue;
    }
    for (std::size_t i = 0; i < group.size(); ++i) local[group[i]] = static_cast<int>(i);
    std::vector<LocalRow> rows(group.size());
    const int id = comp[group[0]];
    for (std::size_t i = 0; i < group.size(); ++i) {
      for (SparseMatrix::InnerIterator it(m, group[i]); it; ++it) {
        if (comp[it.col()] == id) rows[i].entries.emplace_back(local[it.col()], it.value());
      }
    }
    const SpectralEstimate part = irreducible_radius(rows, options);
    result.value = std::max(result.value, part.value);
    result.converged = result.converged && part.converged;
    result.iterations = std::max(result.iterations, part.iterations);
  }
  return result;
}

DegreeMatrices deg_matrices(const SparseMatrix& adjacency) {
  if (adjacency.rows() != adjacency.cols()) {
    throw std::invalid_argument("deg_matrices: adjacency not square");
  }
  const int n = static_cast<int>(adjacency.rows());
  SparseMatrix transposed = adjacency.transpose();
  SparseMatrix reciprocal = hadamard(adjacency, transposed);

  // (A^2)_ii = sum_j A_ij A_ji, i.e. the row sums of S.
  std::vector<Triplet> diag;
  for (int i = 0; i < n; ++i) {
    double d = 0.0;
    for (SparseMatrix::InnerIterator it(reciprocal, i); it; ++it) d += it.value();
    if (d != 0.0) diag.emplace_back(i, i, d);
  }
  return {make_sparse(n, n, diag), std::move(reciprocal)};
}

SpectralEstimate nbt_radius(const Snapshot& snapshot, NodeId num_nodes,
                            const PowerIterationOptions& options) {
  SpectralEstimate est = spectral_radius(hashimoto_matrix(snapshot, num_nodes), options);
  est.value = est.value == 0.0 ? kInf : 1.0 / est.value;
  return est;
}

AlphaBound alpha_bound(const TemporalNetwork& net, Mode mode,
                       const PowerIterationOptions& options) {
  AlphaBound bound;
  bound.mode = mode;
  double max_rho = 0.0;
  double min_lambda = kInf;
  for (std::size_t tau = 0; tau < net.num_snapshots(); ++tau) {
    const SpectralEstimate rho = spectral_radius(adjacency_matrix(net, tau), options);
    const SpectralEstimate lambda = nbt_radius(net.snapshot(tau), net.num_nodes(), options);
    bound.per_snapshot.push_back(
        {rho.value, lambda.value, rho.converged && lambda.converged});
    bound.converged = bound.converged && rho.converged && lambda.converged;
    max_rho = std::max(max_rho, rho.value);
    min_lambda = std::min(min_lambda, lambda.value);
  }
  if (forbids_space_backtracking(mode)) {
    bound.ell = min_lambda;
  } else {
    bound.ell = max_rho == 0.0 ? kInf : 1.0 / max_rho;
  }
  return bound;
}

}  // namespace tempo_katz
