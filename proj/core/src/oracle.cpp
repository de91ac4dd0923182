#include "tempo_katz/oracle.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "tempo_katz/errors.hpp"

namespace tempo_katz::oracle {

WalkCountTensor::WalkCountTensor(NodeId num_nodes, std::size_t max_len, Mode mode)
    : n_(num_nodes),
      max_len_(max_len),
      mode_(mode),
      counts_((max_len + 1) * static_cast<std::size_t>(num_nodes) *
                  static_cast<std::size_t>(num_nodes),
              0) {}

WalkCount WalkCountTensor::from(NodeId i, std::size_t r) const {
  WalkCount total = 0;
  for (NodeId j = 0; j < n_; ++j) total += (*this)(i, j, r);
  return total;
}

double estimate_walk_count(const TemporalNetwork& net, std::size_t max_len) {
  std::vector<double> out_degree(static_cast<std::size_t>(net.num_nodes()), 0.0);
  for (const Snapshot& s : net.snapshots()) {
    for (const Edge& e : s.edges()) out_degree[static_cast<std::size_t>(e.source)] += 1.0;
  }
  double branching = 0.0;
  for (double d : out_degree) branching = std::max(branching, d);
  double per_start = 0.0;
  double power = 1.0;
  for (std::size_t r = 0; r <= max_len; ++r) {
    per_start += power;
    power *= branching;
  }
  return static_cast<double>(net.num_nodes()) * per_start;
}

namespace {

class Enumerator {
 public:
  Enumerator(const TemporalNetwork& net, Mode mode)
      : n_(net.num_nodes()), n_snap_(net.num_snapshots()), mode_(mode) {
    out_.assign(n_snap_, std::vector<std::vector<NodeId>>(static_cast<std::size_t>(n_)));
    for (std::size_t tau = 0; tau < n_snap_; ++tau) {
      for (const Edge& e : net.snapshot(tau).edges()) {
        out_[tau][static_cast<std::size_t>(e.source)].push_back(e.target);
      }
    }
  }

  // Walks of exactly `remaining` further edges from `node`, given that the
  // last edge was prev -> node in snapshot `tau` (prev < 0: nothing walked yet).
  const std::vector<WalkCount>& count(NodeId node, std::size_t tau, NodeId prev,
                                      std::size_t remaining) {
    const std::uint64_t key =
        ((static_cast<std::uint64_t>(remaining) * n_snap_ + tau) *
             (static_cast<std::uint64_t>(n_) + 1) +
         static_cast<std::uint64_t>(prev + 1)) *
            static_cast<std::uint64_t>(n_) +
        static_cast<std::uint64_t>(node);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    std::vector<WalkCount> ends(static_cast<std::size_t>(n_), 0);
    if (remaining == 0) {
      ends[static_cast<std::size_t>(node)] = 1;
    } else {
      for (std::size_t next_tau = tau; next_tau < n_snap_; ++next_tau) {
        for (NodeId next : out_[next_tau][static_cast<std::size_t>(node)]) {
          if (prev >= 0 && next == prev) {
            const bool same_frame = next_tau == tau;
            if (same_frame && forbids_space_backtracking(mode_)) continue;
            if (!same_frame && forbids_time_backtracking(mode_)) continue;
          }
          const auto& sub = count(next, next_tau, node, remaining - 1);
          for (std::size_t j = 0; j < ends.size(); ++j) {
            if (__builtin_add_overflow(ends[j], sub[j], &ends[j])) {
              throw std::overflow_error("walk count exceeds 64 bits");
            }
          }
        }
      }
    }
    return memo_.emplace(key, std::move(ends)).first->second;
  }

 private:
  NodeId n_;
  std::size_t n_snap_;
  Mode mode_;
  std::vector<std::vector<std::vector<NodeId>>> out_;
  std::unordered_map<std::uint64_t, std::vector<WalkCount>> memo_;
};

}  // namespace

WalkCountTensor enumerate_temporal_walks(const TemporalNetwork& net, std::size_t max_len,
                                         Mode mode, const EnumerationOptions& options) {
  const double estimate = estimate_walk_count(net, max_len);
  if (estimate > options.guard) {
    throw GuardError("refusing exhaustive enumeration: about " + format_real(estimate) +
                         " walks exceed the guard of " + format_real(options.guard),
                     estimate);
  }
  WalkCountTensor tensor(net.num_nodes(), max_len, mode);
  Enumerator enumerator(net, mode);
  for (NodeId i = 0; i < net.num_nodes(); ++i) {
    for (std::size_t r = 0; r <= max_len; ++r) {
      const auto& ends = enumerator.count(i, 0, -1, r);
      for (NodeId j = 0; j < net.num_nodes(); ++j) {
        tensor.at(i, j, r) = ends[static_cast<std::size_t>(j)];
      }
    }
  }
  return tensor;
}

DenseMatrix weighted_walk_sum(const WalkCountTensor& counts, const CoefficientFunction& f,
                              double alpha) {
  const NodeId n = counts.num_nodes();
  DenseMatrix out = DenseMatrix::Zero(n, n);
  double power = 1.0;
  for (std::size_t r = 0; r <= counts.max_len(); ++r) {
    const double weight = f.coefficient(r) * power;
    if (weight != 0.0) {
      for (NodeId i = 0; i < n; ++i) {
        for (NodeId j = 0; j < n; ++j) {
          out(i, j) += weight * static_cast<double>(counts(i, j, r));
        }
      }
    }
    power *= alpha;
  }
  return out;
}

namespace {

// h_0 .. h_rmax of xs in one pass: adding variable x updates h_s += x h_{s-1}.
std::vector<double> homogeneous_table(std::size_t rmax, const std::vector<double>& xs) {
  std::vector<double> h(rmax + 1, 0.0);
  h[0] = 1.0;
  bool first = true;
  for (double x : xs) {
    if (first) {
      for (std::size_t s = 1; s <= rmax; ++s) h[s] = h[s - 1] * x;
      first = false;
      continue;
    }
    for (std::size_t s = 1; s <= rmax; ++s) h[s] += x * h[s - 1];
  }
  return h;
}

}  // namespace

double homogeneous_symmetric(std::size_t r, const std::vector<double>& xs) {
  if (xs.empty()) throw std::invalid_argument("homogeneous_symmetric: no variables");
  return homogeneous_table(r, xs)[r];
}

double functional_equation_residual(const CoefficientFunction& f,
                                    const CoefficientFunction& g, std::size_t N,
                                    double alpha, const std::vector<double>& xs,
                                    std::size_t rmax) {
  if (N < 2) throw std::invalid_argument("functional equation needs N >= 2");
  if (xs.size() != N) throw std::invalid_argument("need exactly N variables");

  // alpha^r h_r(xs) = h_r(alpha xs) by homogeneity.
  std::vector<double> scaled(xs);
  for (double& x : scaled) x *= alpha;
  const std::vector<double> h = homogeneous_table(rmax, scaled);
  double lhs = 0.0;
  for (std::size_t r = 0; r <= rmax; ++r) {
    if (f.degree() && r > *f.degree()) break;
    lhs += f.coefficient(r) * h[r];
  }

  double rhs = 1.0;
  for (double x : scaled) rhs *= g.evaluate(x, rmax + 1);
  return std::abs(lhs - rhs);
}

std::optional<CoefficientFunction> product_form_factor(const CoefficientFunction& f,
                                                       std::size_t N) {
  if (N < 1) throw std::invalid_argument("product_form_factor: N must be >= 1");
  const auto& p = f.resolvent_params();
  if (!p) return std::nullopt;
  return CoefficientFunction::resolvent(std::pow(p->gamma, 1.0 / static_cast<double>(N)),
                                        p->delta);
}

}  // namespace tempo_katz::oracle
