#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tempo_katz/sparse.hpp"

namespace tempo_katz {

class BlockTransition;

/// Analytic f(z) = sum_r c_r z^r with c_r >= 0, given by a coefficient
/// generator and its radius of convergence.
class CoefficientFunction {
 public:
  using Generator = std::function<double(std::size_t)>;

  struct ResolventParams {
    double gamma = 1.0;
    double delta = 1.0;
  };

  /// `degree` marks a polynomial: c_r == 0 for every r > degree.
  CoefficientFunction(std::string name, Generator coefficients, double radius,
                      std::optional<std::size_t> degree = std::nullopt);

  /// gamma / (1 - delta z): c_r = gamma delta^r, radius 1/delta.
  static CoefficientFunction resolvent(double gamma = 1.0, double delta = 1.0);
  /// exp(z): c_r = 1/r!, entire.
  static CoefficientFunction exponential();
  /// Finite coefficient list; entire.
  static CoefficientFunction polynomial(std::vector<double> coefficients,
                                        std::string name = "polynomial");
  /// z^r.
  static CoefficientFunction monomial(std::size_t power);

  double coefficient(std::size_t r) const;
  double radius() const noexcept { return radius_; }
  const std::string& name() const noexcept { return name_; }
  std::optional<std::size_t> degree() const noexcept { return degree_; }
  /// Set when f is (a multiple of) the resolvent, enabling linear-solve paths.
  const std::optional<ResolventParams>& resolvent_params() const noexcept {
    return resolvent_;
  }

  /// Truncated series sum_{r <= max_terms-1} c_r z^r (Horner-free, term by term).
  double evaluate(double z, std::size_t max_terms = 1000) const;

 private:
  std::string name_;
  Generator coefficients_;
  double radius_;
  std::optional<std::size_t> degree_;
  std::optional<ResolventParams> resolvent_;
};

/// The shift operator: coefficients r -> c_{r+1}, same radius.
/// At the scalar level (f(z) - f(0)) / z, with value f'(0) at zero.
CoefficientFunction partial_op(const CoefficientFunction& f);

/// One nonnegative decimal per line; line r (0-based) holds c_r.
CoefficientFunction read_coefficient_file(std::istream& in, std::string name);

struct SeriesOptions {
  double tol = 1e-12;
  std::size_t max_terms = 10000;
};

struct SeriesResult {
  Vector value;
  std::size_t terms = 0;   // number of series terms accumulated
  bool truncated = false;  // max_terms reached before the tolerance test passed
};

/// sum_{r >= 0} g_r alpha^r M^r v, one sparse product per term. Stops when the
/// Krylov vector becomes exactly zero, past the degree of a polynomial g, or
/// when a term with g_r > 0 is below tol times the accumulated sum (max-norm).
SeriesResult apply_series(const SparseMatrix& m, double alpha,
                          const CoefficientFunction& g, const Vector& v,
                          const SeriesOptions& options = {});
SeriesResult apply_series(const BlockTransition& m, double alpha,
                          const CoefficientFunction& g, const Vector& v,
                          const SeriesOptions& options = {});

/// Factorization of I - alpha M reused across right-hand sides.
class ResolventSolver {
 public:
  ResolventSolver(const SparseMatrix& m, double alpha, double tol = 1e-12);
  ~ResolventSolver();
  ResolventSolver(ResolventSolver&&) noexcept;
  ResolventSolver& operator=(ResolventSolver&&) noexcept;

  /// x with ||(I - alpha M) x - v||_inf <= tol ||v||_inf; throws SolveError.
  Vector solve(const Vector& v) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

Vector resolvent_solve(const SparseMatrix& m, double alpha, const Vector& v,
                       double tol = 1e-12);

}  // namespace tempo_katz
