#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "tempo_katz/line_space.hpp"
#include "tempo_katz/matfun.hpp"
#include "tempo_katz/sparse.hpp"
#include "tempo_katz/temporal_graph.hpp"

// Brute-force ground truth. Nothing in here touches the edge-space matrices:
// walks are enumerated directly on the snapshot edge sets.

namespace tempo_katz::oracle {

using WalkCount = std::uint64_t;

/// counts(i, j, r) for 0 <= r <= max_len: exact number of mode-admissible
/// temporal walks of length r from i to j.
class WalkCountTensor {
 public:
  WalkCountTensor(NodeId num_nodes, std::size_t max_len, Mode mode);

  NodeId num_nodes() const noexcept { return n_; }
  std::size_t max_len() const noexcept { return max_len_; }
  Mode mode() const noexcept { return mode_; }

  WalkCount operator()(NodeId i, NodeId j, std::size_t r) const {
    return counts_[(r * n_ + i) * n_ + j];
  }
  WalkCount& at(NodeId i, NodeId j, std::size_t r) {
    return counts_[(r * n_ + i) * n_ + j];
  }
  /// Walks of length r starting at i, any endpoint.
  WalkCount from(NodeId i, std::size_t r) const;

 private:
  NodeId n_;
  std::size_t max_len_;
  Mode mode_;
  std::vector<WalkCount> counts_;
};

struct EnumerationOptions {
  double guard = 1e8;  // refuse when the walk-count estimate exceeds this
};

/// Upper estimate n * b^max_len with b the largest out-degree summed over
/// snapshots.
double estimate_walk_count(const TemporalNetwork& net, std::size_t max_len);

/// Depth-first enumeration with memoization on (node, snapshot of the last
/// edge, source of the last edge, remaining length). A step i->j (at t1)
/// followed by j->i (at t2) is rejected when t1 == t2 and the mode forbids
/// space backtracking, or t1 < t2 and it forbids time backtracking.
/// Throws GuardError when the estimate exceeds the guard, std::overflow_error
/// if a count leaves 64 bits.
WalkCountTensor enumerate_temporal_walks(const TemporalNetwork& net,
                                         std::size_t max_len, Mode mode,
                                         const EnumerationOptions& options = {});

/// Dense sum_r c_r alpha^r counts(., ., r) over the lengths held by counts.
DenseMatrix weighted_walk_sum(const WalkCountTensor& counts,
                              const CoefficientFunction& f, double alpha);

/// Complete homogeneous symmetric polynomial h_r(x_1, ..., x_N).
double homogeneous_symmetric(std::size_t r, const std::vector<double>& xs);

/// |sum_{r <= rmax} c_r alpha^r h_r(xs) - prod_i g(alpha x_i)| with g summed
/// to rmax terms. xs.size() must equal N >= 2.
double functional_equation_residual(const CoefficientFunction& f,
                                    const CoefficientFunction& g, std::size_t N,
                                    double alpha, const std::vector<double>& xs,
                                    std::size_t rmax);

/// The g solving the product-form equation for N factors: present exactly
/// when f is a resolvent gamma / (1 - delta z), in which case
/// g(z) = gamma^{1/N} / (1 - delta z).
std::optional<CoefficientFunction> product_form_factor(const CoefficientFunction& f,
                                                       std::size_t N);

}  // namespace tempo_katz::oracle
