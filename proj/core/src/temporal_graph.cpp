#include "tempo_katz/temporal_graph.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <istream>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>

#include "tempo_katz/errors.hpp"

namespace tempo_katz {

Snapshot::Snapshot(std::vector<Edge> edges) : edges_(std::move(edges)) {
  for (const Edge& e : edges_) {
    if (e.source < 0 || e.target < 0) {
      throw ValidationError("negative node id in edge " + std::to_string(e.source) +
                            " -> " + std::to_string(e.target));
    }
    if (e.source == e.target) {
      throw ValidationError("self-loop on node " + std::to_string(e.source));
    }
  }
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
}

bool Snapshot::contains(Edge e) const {
  return std::binary_search(edges_.begin(), edges_.end(), e);
}

TemporalNetwork::TemporalNetwork(NodeId num_nodes, std::vector<Snapshot> snapshots,
                                 std::vector<Timestamp> timestamps)
    : num_nodes_(num_nodes),
      snapshots_(std::move(snapshots)),
      timestamps_(std::move(timestamps)) {
  if (num_nodes_ < 1) throw ValidationError("network needs at least one node");
  if (snapshots_.empty()) throw ValidationError("network needs at least one snapshot");
  if (timestamps_.size() != snapshots_.size()) {
    throw ValidationError("one timestamp per snapshot required");
  }
  for (std::size_t k = 1; k < timestamps_.size(); ++k) {
    if (timestamps_[k] <= timestamps_[k - 1]) {
      throw ValidationError("timestamps must be strictly increasing");
    }
  }
  for (const Snapshot& s : snapshots_) {
    for (const Edge& e : s.edges()) {
      if (e.source >= num_nodes_ || e.target >= num_nodes_) {
        throw ValidationError("edge " + std::to_string(e.source) + " -> " +
                              std::to_string(e.target) + " outside node range [0, " +
                              std::to_string(num_nodes_) + ")");
      }
    }
    num_edges_ += s.size();
  }
}

namespace {

std::vector<Timestamp> ordinal_timestamps(std::size_t count) {
  std::vector<Timestamp> ts(count);
  std::iota(ts.begin(), ts.end(), Timestamp{0});
  return ts;
}

std::optional<std::int64_t> to_integer(std::string_view token) {
  std::int64_t value = 0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || first == last) return std::nullopt;
  return value;
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
    std::size_t end = pos;
    while (end < line.size() && !std::isspace(static_cast<unsigned char>(line[end]))) ++end;
    if (end > pos) tokens.push_back(line.substr(pos, end - pos));
    pos = end;
  }
  return tokens;
}

}  // namespace

TemporalNetwork::TemporalNetwork(NodeId num_nodes, std::vector<Snapshot> snapshots)
    : TemporalNetwork(num_nodes, snapshots, ordinal_timestamps(snapshots.size())) {}

const Snapshot& TemporalNetwork::snapshot(std::size_t tau) const {
  if (tau >= snapshots_.size()) {
    throw std::out_of_range("snapshot index " + std::to_string(tau) +
                            " out of range [0, " + std::to_string(snapshots_.size()) +
                            ")");
  }
  return snapshots_[tau];
}

ParsedNetwork read_temporal_edgelist(std::istream& in) {
  ValidationReport report;
  std::optional<std::int64_t> declared_n;
  std::map<Timestamp, std::set<Edge>> frames;
  std::int64_t max_id = -1;

  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string_view view(line);
    if (auto hash = view.find('#'); hash != std::string_view::npos) {
      view = view.substr(0, hash);
    }
    const auto tokens = split_ws(view);
    if (tokens.empty()) continue;

    if (tokens.front().starts_with('%')) {
      if (tokens.front() != "%n" || tokens.size() != 2) {
        throw ParseError(lineno, "expected header '%n <int>'");
      }
      const auto n = to_integer(tokens[1]);
      if (!n) throw ParseError(lineno, "node count is not an integer");
      if (declared_n) throw ParseError(lineno, "duplicate '%n' header");
      if (*n < 1 || *n > std::numeric_limits<NodeId>::max()) {
        throw ValidationError("line " + std::to_string(lineno) +
                              ": node count must be in [1, 2^31)");
      }
      declared_n = *n;
      report.explicit_node_count = true;
      continue;
    }

    if (tokens.size() != 3) {
      throw ParseError(lineno, "expected 'u v t', got " + std::to_string(tokens.size()) +
                                   " fields");
    }
    const auto u = to_integer(tokens[0]);
    const auto v = to_integer(tokens[1]);
    const auto t = to_integer(tokens[2]);
    if (!u || !v || !t) throw ParseError(lineno, "fields must be integers");
    if (*u < 0 || *v < 0) {
      throw ValidationError("line " + std::to_string(lineno) + ": negative node id");
    }
    if (*u > std::numeric_limits<NodeId>::max() - 1 ||
        *v > std::numeric_limits<NodeId>::max() - 1) {
      throw ValidationError("line " + std::to_string(lineno) + ": node id too large");
    }
    if (*u == *v) {
      throw ValidationError("line " + std::to_string(lineno) + ": self-loop on node " +
                            std::to_string(*u));
    }
    ++report.edge_lines;
    max_id = std::max({max_id, *u, *v});
    const Edge e{static_cast<NodeId>(*u), static_cast<NodeId>(*v)};
    if (!frames[*t].insert(e).second) ++report.duplicates_collapsed;
  }
  report.lines = lineno;

  if (frames.empty()) throw ValidationError("no edges: at least one snapshot required");
  if (declared_n && *declared_n <= max_id) {
    throw ValidationError("declared node count " + std::to_string(*declared_n) +
                          " does not cover node id " + std::to_string(max_id));
  }
  const auto n = static_cast<NodeId>(declared_n.value_or(max_id + 1));

  std::vector<Snapshot> snapshots;
  std::vector<Timestamp> timestamps;
  snapshots.reserve(frames.size());
  timestamps.reserve(frames.size());
  for (auto& [t, edges] : frames) {
    snapshots.emplace_back(std::vector<Edge>(edges.begin(), edges.end()));
    timestamps.push_back(t);
  }
  return {TemporalNetwork(n, std::move(snapshots), std::move(timestamps)), report};
}

TemporalNetwork parse_temporal_edgelist(std::istream& in) {
  return read_temporal_edgelist(in).network;
}

TemporalNetwork parse_temporal_edgelist(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_temporal_edgelist(in);
}

// Empty snapshots have no edge line to carry their timestamp and are dropped.
void write_temporal_edgelist(std::ostream& out, const TemporalNetwork& net) {
  out << "%n " << net.num_nodes() << '\n';
  for (std::size_t tau = 0; tau < net.num_snapshots(); ++tau) {
    for (const Edge& e : net.snapshot(tau).edges()) {
      out << e.source << ' ' << e.target << ' ' << net.timestamps()[tau] << '\n';
    }
  }
}

SparseMatrix adjacency_matrix(const TemporalNetwork& net, std::size_t tau) {
  const Snapshot& s = net.snapshot(tau);
  std::vector<Triplet> entries;
  entries.reserve(s.size());
  for (const Edge& e : s.edges()) entries.emplace_back(e.source, e.target, 1.0);
  return make_sparse(net.num_nodes(), net.num_nodes(), entries);
}

}  // namespace tempo_katz
