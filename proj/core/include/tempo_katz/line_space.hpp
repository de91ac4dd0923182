#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <string_view>
#include <utility>
#include <vector>

#include "tempo_katz/sparse.hpp"
#include "tempo_katz/temporal_graph.hpp"

namespace tempo_katz {

/// Which length-2 transitions are admissible in the edge space.
enum class Mode {
  kStandard,  // backtracking allowed everywhere
  kNbtSpace,  // no i->j->i inside one snapshot
  kNbtTime,   // no i->j->i across two snapshots
  kNbtBoth,
};

std::string_view to_string(Mode mode);
/// Accepts standard | nbt-space | nbt-time | nbt-both.
Mode parse_mode(std::string_view text);

/// Diagonal blocks use the Hashimoto matrix instead of the line graph.
constexpr bool forbids_space_backtracking(Mode mode) {
  return mode == Mode::kNbtSpace || mode == Mode::kNbtBoth;
}
/// Off-diagonal blocks use the non-backtracking cross transition.
constexpr bool forbids_time_backtracking(Mode mode) {
  return mode == Mode::kNbtTime || mode == Mode::kNbtBoth;
}

struct TimedEdge {
  std::size_t snapshot = 0;
  NodeId source = 0;
  NodeId target = 0;

  friend bool operator==(const TimedEdge&, const TimedEdge&) = default;
};

/// Global numbering of the m time-stamped edges: grouped by snapshot, then
/// lexicographic in (source, target) inside a snapshot.
class EdgeSpaceIndex {
 public:
  explicit EdgeSpaceIndex(const TemporalNetwork& net);

  std::size_t size() const noexcept { return entries_.size(); }
  std::size_t num_snapshots() const noexcept { return offsets_.size() - 1; }
  const TimedEdge& operator[](std::size_t id) const { return entries_[id]; }
  const std::vector<TimedEdge>& entries() const noexcept { return entries_; }

  /// First global id of snapshot tau; offset(N) == size().
  std::size_t offset(std::size_t tau) const { return offsets_.at(tau); }
  std::size_t snapshot_size(std::size_t tau) const {
    return offsets_.at(tau + 1) - offsets_.at(tau);
  }
  /// Global id of (tau, source, target), or size() when absent.
  std::size_t find(std::size_t tau, NodeId source, NodeId target) const;

 private:
  std::vector<TimedEdge> entries_;
  std::vector<std::size_t> offsets_;
};

struct SourceTarget {
  SparseMatrix source;  // L: L(e, i) = 1 iff e = i -> *
  SparseMatrix target;  // R: R(e, j) = 1 iff e = * -> j
};

SourceTarget source_target_matrices(const Snapshot& snapshot, NodeId num_nodes);

/// Line-graph adjacency W = R L^T: W(i->j, k->l) = [j == k].
SparseMatrix line_graph_matrix(const Snapshot& snapshot, NodeId num_nodes);

/// B = W - W o W^T: W with the reciprocal (i->j, j->i) pairs removed.
SparseMatrix hashimoto_matrix(const Snapshot& snapshot, NodeId num_nodes);

/// W^{[t1,t2]} = R^{[t1]} (L^{[t2]})^T for t1 < t2.
SparseMatrix cross_transition(const TemporalNetwork& net, std::size_t tau1,
                              std::size_t tau2);

/// B^{[t1,t2]} = W^{[t1,t2]} - W^{[t1,t2]} o (W^{[t2,t1]})^T for t1 < t2.
SparseMatrix cross_hashimoto(const TemporalNetwork& net, std::size_t tau1,
                             std::size_t tau2);

/// Vertical stacks of the per-snapshot L and R, m x n.
SourceTarget global_source_target(const TemporalNetwork& net);

/// Materialized m x m block upper-triangular transition matrix.
SparseMatrix global_transition(const TemporalNetwork& net, Mode mode);

/// Block operator form of the global transition matrix. Blocks are built on
/// first use and cached; multiply() accumulates each row in the same order as
/// the materialized matrix, so both forms give bit-identical products.
/// Safe for concurrent use.
class BlockTransition {
 public:
  BlockTransition(const TemporalNetwork& net, Mode mode);

  int rows() const noexcept { return static_cast<int>(index_.size()); }
  int cols() const noexcept { return rows(); }
  Mode mode() const noexcept { return mode_; }
  const EdgeSpaceIndex& index() const noexcept { return index_; }

  /// Block C^{[t1]} when t1 == t2, C^{[t1,t2]} when t1 < t2; zero otherwise.
  const SparseMatrix& block(std::size_t tau1, std::size_t tau2) const;

  Vector multiply(const Vector& x) const;
  SparseMatrix materialize() const;

 private:
  TemporalNetwork net_;
  Mode mode_;
  EdgeSpaceIndex index_;
  std::unique_ptr<std::mutex> mutex_;
  mutable std::map<std::pair<std::size_t, std::size_t>,
                   std::shared_ptr<const SparseMatrix>>
      cache_;
};

}  // namespace tempo_katz
