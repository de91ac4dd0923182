#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "tempo_katz/line_space.hpp"
#include "tempo_katz/matfun.hpp"
#include "tempo_katz/sparse.hpp"
#include "tempo_katz/spectral.hpp"
#include "tempo_katz/temporal_graph.hpp"

namespace tempo_katz {

enum class Measure { kTotalCommunicability, kSubgraph };

std::string_view to_string(Measure measure);

struct CentralityOptions {
  /// Skip the alpha < ell check. Results are then flagged `forced`.
  bool force = false;
  SeriesOptions series;
  PowerIterationOptions power;
};

struct CentralityVector {
  Vector values;
  Measure measure = Measure::kTotalCommunicability;
  Mode mode = Mode::kStandard;
  double alpha = 0.0;
  std::string function;
  bool truncated = false;
  bool forced = false;
  /// Admissible supremum for alpha used in the check (+inf if unbounded).
  double alpha_limit = 0.0;
};

/// (I - alpha A^{[1]})^{-1} ... (I - alpha A^{[N]})^{-1} 1, as N sparse
/// n x n solves applied right to left.
CentralityVector dynamic_katz_node_level(const TemporalNetwork& net, double alpha,
                                         const CentralityOptions& options = {});

/// (1 - alpha^2)^N prod_tau [I - alpha A + alpha^2 (D - I) + alpha^3 (A - S)]^{-1} 1.
/// Equal to the NbtSpace edge-level Katz vector for alpha in (0, ell).
CentralityVector nbt_space_katz_node_level(const TemporalNetwork& net, double alpha,
                                           const CentralityOptions& options = {});

/// y = c_0 1_n + alpha L^T d f(alpha M) 1_m.
CentralityVector temporal_f_total_communicability(const TemporalNetwork& net,
                                                  double alpha,
                                                  const CoefficientFunction& f,
                                                  Mode mode,
                                                  const CentralityOptions& options = {});

/// x_i = (c_0 I + alpha L^T d f(alpha M) R)_{ii}, one column per node.
CentralityVector temporal_f_subgraph_centrality(const TemporalNetwork& net,
                                                double alpha,
                                                const CoefficientFunction& f,
                                                Mode mode,
                                                const CentralityOptions& options = {});

struct CommunicabilityMatrix {
  DenseMatrix values;
  bool truncated = false;
};

/// Dense c_0 I + alpha L^T d f(alpha M) R. Entry (i, j) weighs every
/// mode-admissible temporal walk i ~> j of length r by c_r alpha^r.
CommunicabilityMatrix communicability_matrix(const TemporalNetwork& net, double alpha,
                                             const CoefficientFunction& f, Mode mode,
                                             const CentralityOptions& options = {});

/// Supremum of admissible alpha for (f, mode): radius(f) * ell(mode).
double admissible_alpha_limit(const TemporalNetwork& net, const CoefficientFunction& f,
                              Mode mode, const PowerIterationOptions& power = {});

}  // namespace tempo_katz
