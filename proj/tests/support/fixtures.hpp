#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "tempo_katz/sparse.hpp"
#include "tempo_katz/temporal_graph.hpp"

// Networks and dense reference computations shared by the unit tests and the
// acceptance runner. Node ids are 0-based everywhere; where a fixture comes
// with well-known 1-based labels the comment says so.

namespace tempo_katz::testing {

inline constexpr std::uint64_t kSeed = 0x7e3d1c5a9b2f4e60ULL;

/// Three-snapshot path 0 -> 1 @1, 1 -> 2 @2, 2 -> 3 @3. Every snapshot
/// adjacency is nilpotent and so is M.
TemporalNetwork chain_network();

/// Small four-node network, labels 1..4 shifted down by one:
///   t1: 4->1, 1->2, 2->3   t2: 3->2, 3->4   t3: 4->1, 1->4
TemporalNetwork four_node_network();

/// Undirected triangle as six directed edges.
Snapshot triangle_snapshot();

/// Directed n-cycle 0 -> 1 -> ... -> n-1 -> 0.
Snapshot cycle_snapshot(NodeId n);

struct RandomNetworkSpec {
  NodeId min_nodes = 2;
  NodeId max_nodes = 6;
  std::size_t min_snapshots = 1;
  std::size_t max_snapshots = 3;
  double max_density = 0.5;
};

/// Each ordered pair (u, v), u != v, is an edge of a snapshot independently
/// with a probability drawn once per network from (0, max_density].
TemporalNetwork random_network(std::mt19937_64& rng, const RandomNetworkSpec& spec = {});

/// Random snapshot on n nodes with edge probability p.
Snapshot random_snapshot(std::mt19937_64& rng, NodeId n, double p);

/// Snapshot where each unordered pair is absent, one-way or reciprocated.
/// Guarantees at least one reciprocated pair when n >= 2.
Snapshot random_reciprocal_snapshot(std::mt19937_64& rng, NodeId n, double p);

bool has_reciprocated_edge(const TemporalNetwork& net);

/// exp(beta A^{[1]}) exp(beta A^{[2]}) ... exp(beta A^{[N]}), dense. This is
/// the naive product that weighs walks by the wrong combinatorial factors; it
/// exists only so tests can show the difference.
DenseMatrix naive_exponential_product(const TemporalNetwork& net, double beta);

/// Largest modulus among the eigenvalues mu of the monic cubic
///   mu^3 I - A mu^2 + (D - I) mu + (A - S)
/// through its 3n x 3n block companion matrix. The roots z of
/// P(z) = I - A z + (D - I) z^2 + (A - S) z^3 are z = 1 / mu, so the smallest
/// modulus root of P is one over the returned value.
double companion_max_modulus(const SparseMatrix& adjacency);

/// Dense (I - alpha A)^{-1}.
DenseMatrix dense_resolvent(const SparseMatrix& a, double alpha);

double max_abs(const DenseMatrix& m);
double max_rel_diff(const Vector& a, const Vector& b);

}  // namespace tempo_katz::testing
