#include "fixtures.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

#include "tempo_katz/spectral.hpp"

namespace tempo_katz::testing {

TemporalNetwork chain_network() {
  return TemporalNetwork(4, {Snapshot({{0, 1}}), Snapshot({{1, 2}}), Snapshot({{2, 3}})},
                         {1, 2, 3});
}

TemporalNetwork four_node_network() {
  return TemporalNetwork(4,
                         {Snapshot({{3, 0}, {0, 1}, {1, 2}}), Snapshot({{2, 1}, {2, 3}}),
                          Snapshot({{3, 0}, {0, 3}})},
                         {1, 2, 3});
}

Snapshot triangle_snapshot() {
  return Snapshot({{0, 1}, {1, 0}, {1, 2}, {2, 1}, {0, 2}, {2, 0}});
}

Snapshot cycle_snapshot(NodeId n) {
  std::vector<Edge> edges;
  for (NodeId i = 0; i < n; ++i) edges.push_back({i, static_cast<NodeId>((i + 1) % n)});
  return Snapshot(std::move(edges));
}

Snapshot random_snapshot(std::mt19937_64& rng, NodeId n, double p) {
  std::bernoulli_distribution coin(p);
  std::vector<Edge> edges;
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = 0; v < n; ++v) {
      if (u != v && coin(rng)) edges.push_back({u, v});
    }
  }
  return Snapshot(std::move(edges));
}

Snapshot random_reciprocal_snapshot(std::mt19937_64& rng, NodeId n, double p) {
  std::bernoulli_distribution coin(p);
  std::uniform_int_distribution<int> kind(0, 2);
  std::vector<Edge> edges;
  bool reciprocated = false;
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) {
      if (!coin(rng)) continue;
      switch (kind(rng)) {
        case 0: edges.push_back({u, v}); break;
        case 1: edges.push_back({v, u}); break;
        default:
          edges.push_back({u, v});
          edges.push_back({v, u});
          reciprocated = true;
      }
    }
  }
  if (!reciprocated && n >= 2) {
    std::uniform_int_distribution<NodeId> pick(0, n - 1);
    const NodeId u = pick(rng);
    const NodeId v = static_cast<NodeId>((u + 1) % n);
    edges.push_back({u, v});
    edges.push_back({v, u});
  }
  return Snapshot(std::move(edges));
}

TemporalNetwork random_network(std::mt19937_64& rng, const RandomNetworkSpec& spec) {
  std::uniform_int_distribution<NodeId> nodes(spec.min_nodes, spec.max_nodes);
  std::uniform_int_distribution<std::size_t> count(spec.min_snapshots, spec.max_snapshots);
  std::uniform_real_distribution<double> density(0.05, spec.max_density);
  const NodeId n = nodes(rng);
  const std::size_t N = count(rng);
  const double p = density(rng);
  std::vector<Snapshot> snapshots;
  for (std::size_t tau = 0; tau < N; ++tau) snapshots.push_back(random_snapshot(rng, n, p));
  return TemporalNetwork(n, std::move(snapshots));
}

bool has_reciprocated_edge(const TemporalNetwork& net) {
  for (const Snapshot& s : net.snapshots()) {
    for (const Edge& e : s.edges()) {
      if (s.contains({e.target, e.source})) return true;
    }
  }
  return false;
}

DenseMatrix naive_exponential_product(const TemporalNetwork& net, double beta) {
  const NodeId n = net.num_nodes();
  DenseMatrix product = DenseMatrix::Identity(n, n);
  for (std::size_t tau = 0; tau < net.num_snapshots(); ++tau) {
    const DenseMatrix a = DenseMatrix(adjacency_matrix(net, tau)) * beta;
    product = product * a.exp();
  }
  return product;
}

double companion_max_modulus(const SparseMatrix& adjacency) {
  const int n = static_cast<int>(adjacency.rows());
  const DenseMatrix a(adjacency);
  const DegreeMatrices ds = deg_matrices(adjacency);
  const DenseMatrix d(ds.degree);
  const DenseMatrix s(ds.reciprocal);
  const DenseMatrix id = DenseMatrix::Identity(n, n);

  DenseMatrix c = DenseMatrix::Zero(3 * n, 3 * n);
  c.block(0, 0, n, n) = a;
  c.block(0, n, n, n) = -(d - id);
  c.block(0, 2 * n, n, n) = -(a - s);
  c.block(n, 0, n, n) = id;
  c.block(2 * n, n, n, n) = id;

  Eigen::EigenSolver<DenseMatrix> solver(c, false);
  return solver.eigenvalues().cwiseAbs().maxCoeff();
}

DenseMatrix dense_resolvent(const SparseMatrix& a, double alpha) {
  const DenseMatrix dense(a);
  const DenseMatrix system = DenseMatrix::Identity(dense.rows(), dense.cols()) - alpha * dense;
  return system.partialPivLu().inverse();
}

double max_abs(const DenseMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

double max_rel_diff(const Vector& a, const Vector& b) {
  const double scale = std::max(a.cwiseAbs().maxCoeff(), b.cwiseAbs().maxCoeff());
  if (scale == 0.0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff() / scale;
}

}  // namespace tempo_katz::testing
