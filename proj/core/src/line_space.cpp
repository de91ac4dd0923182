#include "tempo_katz/line_space.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace tempo_katz {

std::string_view to_string(Mode mode) {
  switch (mode) {
    case Mode::kStandard: return "standard";
    case Mode::kNbtSpace: return "nbt-space";
    case Mode::kNbtTime: return "nbt-time";
    case Mode::kNbtBoth: return "nbt-both";
  }
  return "unknown";
}

Mode parse_mode(std::string_view text) {
  if (text == "standard") return Mode::kStandard;
  if (text == "nbt-space") return Mode::kNbtSpace;
  if (text == "nbt-time") return Mode::kNbtTime;
  if (text == "nbt-both") return Mode::kNbtBoth;
  throw std::invalid_argument("unknown mode '" + std::string(text) + "'");
}

EdgeSpaceIndex::EdgeSpaceIndex(const TemporalNetwork& net) {
  entries_.reserve(net.num_edges());
  offsets_.reserve(net.num_snapshots() + 1);
  for (std::size_t tau = 0; tau < net.num_snapshots(); ++tau) {
    offsets_.push_back(entries_.size());
    for (const Edge& e : net.snapshot(tau).edges()) {
      entries_.push_back({tau, e.source, e.target});
    }
  }
  offsets_.push_back(entries_.size());
}

std::size_t EdgeSpaceIndex::find(std::size_t tau, NodeId source, NodeId target) const {
  if (tau >= num_snapshots()) return size();
  const auto first = entries_.begin() + static_cast<std::ptrdiff_t>(offsets_[tau]);
  const auto last = entries_.begin() + static_cast<std::ptrdiff_t>(offsets_[tau + 1]);
  const auto it = std::lower_bound(first, last, Edge{source, target},
                                   [](const TimedEdge& a, const Edge& b) {
                                     return Edge{a.source, a.target} < b;
                                   });
  if (it == last || it->source != source || it->target != target) return size();
  return static_cast<std::size_t>(it - entries_.begin());
}

SourceTarget source_target_matrices(const Snapshot& snapshot, NodeId num_nodes) {
  std::vector<Triplet> l;
  std::vector<Triplet> r;
  l.reserve(snapshot.size());
  r.reserve(snapshot.size());
  int row = 0;
  for (const Edge& e : snapshot.edges()) {
    l.emplace_back(row, e.source, 1.0);
    r.emplace_back(row, e.target, 1.0);
    ++row;
  }
  const int m = static_cast<int>(snapshot.size());
  return {make_sparse(m, num_nodes, l), make_sparse(m, num_nodes, r)};
}

namespace {

SparseMatrix product_transpose(const SparseMatrix& a, const SparseMatrix& b) {
  SparseMatrix bt = b.transpose();
  SparseMatrix out = a * bt;
  prune(out);
  return out;
}

SparseMatrix remove_reciprocal(const SparseMatrix& forward, const SparseMatrix& backward) {
  // forward - forward o backward^T
  SparseMatrix back_t = backward.transpose();
  SparseMatrix out = forward - hadamard(forward, back_t);
  prune(out);
  return out;
}

void check_cross_order(const TemporalNetwork& net, std::size_t tau1, std::size_t tau2) {
  if (tau1 >= tau2) {
    throw std::invalid_argument("cross block needs tau1 < tau2, got " +
                                std::to_string(tau1) + " and " + std::to_string(tau2));
  }
  if (tau2 >= net.num_snapshots()) {
    throw std::out_of_range("snapshot index " + std::to_string(tau2) + " out of range");
  }
}

}  // namespace

SparseMatrix line_graph_matrix(const Snapshot& snapshot, NodeId num_nodes) {
  const auto [l, r] = source_target_matrices(snapshot, num_nodes);
  return product_transpose(r, l);
}

SparseMatrix hashimoto_matrix(const Snapshot& snapshot, NodeId num_nodes) {
  const SparseMatrix w = line_graph_matrix(snapshot, num_nodes);
  return remove_reciprocal(w, w);
}

SparseMatrix cross_transition(const TemporalNetwork& net, std::size_t tau1,
                              std::size_t tau2) {
  check_cross_order(net, tau1, tau2);
  const auto first = source_target_matrices(net.snapshot(tau1), net.num_nodes());
  const auto second = source_target_matrices(net.snapshot(tau2), net.num_nodes());
  return product_transpose(first.target, second.source);
}

SparseMatrix cross_hashimoto(const TemporalNetwork& net, std::size_t tau1,
                             std::size_t tau2) {
  check_cross_order(net, tau1, tau2);
  const auto first = source_target_matrices(net.snapshot(tau1), net.num_nodes());
  const auto second = source_target_matrices(net.snapshot(tau2), net.num_nodes());
  const SparseMatrix forward = product_transpose(first.target, second.source);
  const SparseMatrix backward = product_transpose(second.target, first.source);
  return remove_reciprocal(forward, backward);
}

SourceTarget global_source_target(const TemporalNetwork& net) {
  std::vector<SparseMatrix> ls;
  std::vector<SparseMatrix> rs;
  for (const Snapshot& s : net.snapshots()) {
    auto [l, r] = source_target_matrices(s, net.num_nodes());
    ls.push_back(std::move(l));
    rs.push_back(std::move(r));
  }
  return {vstack(ls, net.num_nodes()), vstack(rs, net.num_nodes())};
}

BlockTransition::BlockTransition(const TemporalNetwork& net, Mode mode)
    : net_(net), mode_(mode), index_(net_), mutex_(std::make_unique<std::mutex>()) {}

const SparseMatrix& BlockTransition::block(std::size_t tau1, std::size_t tau2) const {
  const std::size_t n_snap = net_.num_snapshots();
  if (tau1 >= n_snap || tau2 >= n_snap) {
    throw std::out_of_range("block index out of range");
  }
  const auto key = std::make_pair(tau1, tau2);
  {
    std::lock_guard lock(*mutex_);
    if (auto it = cache_.find(key); it != cache_.end()) return *it->second;
  }

  SparseMatrix built;
  if (tau1 == tau2) {
    const Snapshot& s = net_.snapshot(tau1);
    built = forbids_space_backtracking(mode_) ? hashimoto_matrix(s, net_.num_nodes())
                                              : line_graph_matrix(s, net_.num_nodes());
  } else if (tau1 < tau2) {
    built = forbids_time_backtracking(mode_) ? cross_hashimoto(net_, tau1, tau2)
                                             : cross_transition(net_, tau1, tau2);
  } else {
    built = SparseMatrix(static_cast<int>(index_.snapshot_size(tau1)),
                         static_cast<int>(index_.snapshot_size(tau2)));
  }

  std::lock_guard lock(*mutex_);
  auto [it, inserted] =
      cache_.emplace(key, std::make_shared<const SparseMatrix>(std::move(built)));
  return *it->second;
}

Vector BlockTransition::multiply(const Vector& x) const {
  if (x.size() != rows()) {
    throw std::invalid_argument("BlockTransition::multiply: dimension mismatch");
  }
  const std::size_t n_snap = net_.num_snapshots();
  Vector y(rows());
  std::vector<const SparseMatrix*> row_blocks;
  for (std::size_t t1 = 0; t1 < n_snap; ++t1) {
    const std::size_t row0 = index_.offset(t1);
    const std::size_t block_rows = index_.snapshot_size(t1);
    row_blocks.clear();
    for (std::size_t t2 = t1; t2 < n_snap; ++t2) row_blocks.push_back(&block(t1, t2));
    for (std::size_t r = 0; r < block_rows; ++r) {
      double acc = 0.0;
      for (std::size_t t2 = t1; t2 < n_snap; ++t2) {
        const SparseMatrix& b = *row_blocks[t2 - t1];
        const std::size_t col0 = index_.offset(t2);
        for (SparseMatrix::InnerIterator it(b, static_cast<int>(r)); it; ++it) {
          acc += it.value() * x[static_cast<int>(col0) + it.col()];
        }
      }
      y[static_cast<int>(row0 + r)] = acc;
    }
  }
  return y;
}

SparseMatrix BlockTransition::materialize() const {
  const std::size_t n_snap = net_.num_snapshots();
  std::vector<Triplet> entries;
  for (std::size_t t1 = 0; t1 < n_snap; ++t1) {
    for (std::size_t t2 = t1; t2 < n_snap; ++t2) {
      const SparseMatrix& b = block(t1, t2);
      const int row0 = static_cast<int>(index_.offset(t1));
      const int col0 = static_cast<int>(index_.offset(t2));
      for (int r = 0; r < b.outerSize(); ++r) {
        for (SparseMatrix::InnerIterator it(b, r); it; ++it) {
          entries.emplace_back(row0 + r, col0 + it.col(), it.value());
        }
      }
    }
  }
  return make_sparse(rows(), cols(), entries);
}

SparseMatrix global_transition(const TemporalNetwork& net, Mode mode) {
  return BlockTransition(net, mode).materialize();
}

}  // namespace tempo_katz
