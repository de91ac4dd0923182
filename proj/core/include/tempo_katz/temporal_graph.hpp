#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string_view>
#include <vector>

#include "tempo_katz/sparse.hpp"

namespace tempo_katz {

using NodeId = std::int32_t;
using Timestamp = std::int64_t;

struct Edge {
  NodeId source = 0;
  NodeId target = 0;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// One time frame: a simple directed graph without self-loops. Edges are kept
/// sorted by (source, target) and unique.
class Snapshot {
 public:
  Snapshot() = default;
  /// Sorts and deduplicates; throws ValidationError on a self-loop.
  explicit Snapshot(std::vector<Edge> edges);

  const std::vector<Edge>& edges() const noexcept { return edges_; }
  std::size_t size() const noexcept { return edges_.size(); }
  bool empty() const noexcept { return edges_.empty(); }
  bool contains(Edge e) const;

  friend bool operator==(const Snapshot&, const Snapshot&) = default;

 private:
  std::vector<Edge> edges_;
};

/// Ordered sequence of snapshots on the fixed node set {0, ..., n-1}.
/// Snapshot indices are 0-based throughout the C++ API.
class TemporalNetwork {
 public:
  TemporalNetwork(NodeId num_nodes, std::vector<Snapshot> snapshots,
                  std::vector<Timestamp> timestamps);
  /// Timestamps default to 0, 1, ..., N-1.
  TemporalNetwork(NodeId num_nodes, std::vector<Snapshot> snapshots);

  NodeId num_nodes() const noexcept { return num_nodes_; }
  std::size_t num_snapshots() const noexcept { return snapshots_.size(); }
  /// m = sum of per-snapshot edge counts.
  std::size_t num_edges() const noexcept { return num_edges_; }

  const Snapshot& snapshot(std::size_t tau) const;
  const std::vector<Snapshot>& snapshots() const noexcept { return snapshots_; }
  const std::vector<Timestamp>& timestamps() const noexcept { return timestamps_; }

  friend bool operator==(const TemporalNetwork&, const TemporalNetwork&) = default;

 private:
  NodeId num_nodes_;
  std::vector<Snapshot> snapshots_;
  std::vector<Timestamp> timestamps_;
  std::size_t num_edges_ = 0;
};

struct ValidationReport {
  std::size_t lines = 0;
  std::size_t edge_lines = 0;
  std::size_t duplicates_collapsed = 0;
  bool explicit_node_count = false;
};

struct ParsedNetwork {
  TemporalNetwork network;
  ValidationReport report;
};

/// Reads the `u v t` edge-list format. `#` starts a comment, `%n <int>`
/// fixes the node count, LF and CRLF are both accepted.
ParsedNetwork read_temporal_edgelist(std::istream& in);
TemporalNetwork parse_temporal_edgelist(std::istream& in);
TemporalNetwork parse_temporal_edgelist(std::string_view text);

/// Writes a `%n` header followed by one `u v t` line per edge; re-parsing
/// the output yields an identical network.
void write_temporal_edgelist(std::ostream& out, const TemporalNetwork& net);

/// n x n 0/1 adjacency matrix of snapshot tau.
SparseMatrix adjacency_matrix(const TemporalNetwork& net, std::size_t tau);

}  // namespace tempo_katz
