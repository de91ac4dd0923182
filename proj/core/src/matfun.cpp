#include "tempo_katz/matfun.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <stdexcept>
#include <string>

#include <Eigen/SparseLU>

#include "tempo_katz/errors.hpp"
#include "tempo_katz/line_space.hpp"

namespace tempo_katz {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

CoefficientFunction::CoefficientFunction(std::string name, Generator coefficients,
                                         double radius,
                                         std::optional<std::size_t> degree)
    : name_(std::move(name)),
      coefficients_(std::move(coefficients)),
      radius_(radius),
      degree_(degree) {
  if (!coefficients_) throw std::invalid_argument("coefficient generator is empty");
  if (!(radius_ > 0.0)) throw std::invalid_argument("radius of convergence must be > 0");
}

CoefficientFunction CoefficientFunction::resolvent(double gamma, double delta) {
  if (!(gamma >= 0.0) || !(delta >= 0.0)) {
    throw std::invalid_argument("resolvent needs gamma, delta >= 0");
  }
  const bool katz = gamma == 1.0 && delta == 1.0;
  std::string name = katz ? "katz"
                          : "resolvent(" + format_real(gamma) + "," + format_real(delta) + ")";
  CoefficientFunction f(
      std::move(name),
      [gamma, delta](std::size_t r) {
        return gamma * std::pow(delta, static_cast<double>(r));
      },
      delta == 0.0 ? kInf : 1.0 / delta,
      gamma == 0.0 || delta == 0.0 ? std::optional<std::size_t>(0) : std::nullopt);
  f.resolvent_ = ResolventParams{gamma, delta};
  return f;
}

CoefficientFunction CoefficientFunction::exponential() {
  // r! is exact in a double up to 22!, so 1 / r! is correctly rounded there.
  return CoefficientFunction(
      "exponential",
      [](std::size_t r) {
        if (r <= 22) {
          double fact = 1.0;
          for (std::size_t k = 2; k <= r; ++k) fact *= static_cast<double>(k);
          return 1.0 / fact;
        }
        return std::exp(-std::lgamma(static_cast<double>(r) + 1.0));
      },
      kInf);
}

CoefficientFunction CoefficientFunction::polynomial(std::vector<double> coefficients,
                                                    std::string name) {
  for (double c : coefficients) {
    if (!(c >= 0.0) || !std::isfinite(c)) {
      throw std::invalid_argument("polynomial coefficients must be finite and >= 0");
    }
  }
  if (coefficients.empty()) coefficients.push_back(0.0);
  const std::size_t degree = coefficients.size() - 1;
  return CoefficientFunction(
      std::move(name),
      [c = std::move(coefficients)](std::size_t r) { return r < c.size() ? c[r] : 0.0; },
      kInf, degree);
}

CoefficientFunction CoefficientFunction::monomial(std::size_t power) {
  std::vector<double> c(power + 1, 0.0);
  c[power] = 1.0;
  return polynomial(std::move(c), "z^" + std::to_string(power));
}

double CoefficientFunction::coefficient(std::size_t r) const {
  if (degree_ && r > *degree_) return 0.0;
  return coefficients_(r);
}

double CoefficientFunction::evaluate(double z, std::size_t max_terms) const {
  double sum = 0.0;
  double power = 1.0;
  for (std::size_t r = 0; r < max_terms; ++r) {
    if (degree_ && r > *degree_) break;
    sum += coefficient(r) * power;
    power *= z;
  }
  return sum;
}

CoefficientFunction partial_op(const CoefficientFunction& f) {
  if (const auto& p = f.resolvent_params()) {
    // gamma delta^{r+1} = (gamma delta) delta^r
    return CoefficientFunction::resolvent(p->gamma * p->delta, p->delta);
  }
  std::optional<std::size_t> degree;
  if (f.degree()) degree = *f.degree() > 0 ? *f.degree() - 1 : 0;
  return CoefficientFunction(
      "d(" + f.name() + ")", [f](std::size_t r) { return f.coefficient(r + 1); },
      f.radius(), degree);
}

CoefficientFunction read_coefficient_file(std::istream& in, std::string name) {
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  auto blank = [](const std::string& s) {
    return s.find_first_not_of(" \t") == std::string::npos;
  };
  while (!lines.empty() && blank(lines.back())) lines.pop_back();
  if (lines.empty()) throw ValidationError("coefficient file holds no coefficients");

  std::vector<double> coefficients;
  coefficients.reserve(lines.size());
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::string& text = lines[i];
    const auto first = text.find_first_not_of(" \t");
    const auto last = text.find_last_not_of(" \t");
    if (first == std::string::npos) throw ParseError(i + 1, "blank coefficient line");
    const char* begin = text.data() + first;
    const char* end = text.data() + last + 1;
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr != end || !std::isfinite(value)) {
      throw ParseError(i + 1, "not a decimal number: '" + text + "'");
    }
    if (value < 0.0) {
      throw ValidationError("line " + std::to_string(i + 1) +
                            ": coefficients must be nonnegative");
    }
    coefficients.push_back(value);
  }
  return CoefficientFunction::polynomial(std::move(coefficients), std::move(name));
}

namespace {

template <class MatVec>
SeriesResult accumulate_series(int dim, MatVec&& matvec, double alpha,
                               const CoefficientFunction& g, const Vector& v,
                               const SeriesOptions& options) {
  if (v.size() != dim) throw std::invalid_argument("apply_series: dimension mismatch");
  if (!(alpha >= 0.0)) throw std::invalid_argument("apply_series: alpha must be >= 0");

  SeriesResult result;
  result.value = Vector::Zero(dim);
  Vector krylov = v;  // (alpha M)^r v
  bool done = false;
  for (std::size_t r = 0; r < options.max_terms; ++r) {
    if (g.degree() && r > *g.degree()) {
      done = true;
      break;
    }
    if (krylov.isZero(0.0)) {
      done = true;
      break;
    }
    const double c = g.coefficient(r);
    if (c < 0.0) throw std::invalid_argument("apply_series: negative coefficient");
    if (c > 0.0) {
      const Vector term = c * krylov;
      result.value += term;
      result.terms = r + 1;
      if (term.lpNorm<Eigen::Infinity>() <=
          options.tol * result.value.lpNorm<Eigen::Infinity>()) {
        done = true;
        break;
      }
    }
    krylov = alpha * matvec(krylov);
  }
  result.truncated = !done;
  return result;
}

}  // namespace

SeriesResult apply_series(const SparseMatrix& m, double alpha,
                          const CoefficientFunction& g, const Vector& v,
                          const SeriesOptions& options) {
  if (m.rows() != m.cols()) throw std::invalid_argument("apply_series: M not square");
  return accumulate_series(
      static_cast<int>(m.rows()), [&m](const Vector& x) { return multiply(m, x); },
      alpha, g, v, options);
}

SeriesResult apply_series(const BlockTransition& m, double alpha,
                          const CoefficientFunction& g, const Vector& v,
                          const SeriesOptions& options) {
  return accumulate_series(
      m.rows(), [&m](const Vector& x) { return m.multiply(x); }, alpha, g, v, options);
}

struct ResolventSolver::Impl {
  SparseMatrix m;
  double alpha;
  double tol;
  double row_sum = 0.0;  // |M|_inf
  Eigen::SparseLU<Eigen::SparseMatrix<double, Eigen::ColMajor, int>,
                  Eigen::COLAMDOrdering<int>>
      lu;
};

ResolventSolver::ResolventSolver(const SparseMatrix& m, double alpha, double tol)
    : impl_(std::make_unique<Impl>()) {
  if (m.rows() != m.cols()) throw std::invalid_argument("resolvent_solve: M not square");
  impl_->m = m;
  impl_->alpha = alpha;
  impl_->tol = tol;
  for (int i = 0; i < m.outerSize(); ++i) {
    double sum = 0.0;
    for (SparseMatrix::InnerIterator it(m, i); it; ++it) sum += std::abs(it.value());
    impl_->row_sum = std::max(impl_->row_sum, sum);
  }

  Eigen::SparseMatrix<double, Eigen::ColMajor, int> system(m.rows(), m.cols());
  system.setIdentity();
  system -= alpha * Eigen::SparseMatrix<double, Eigen::ColMajor, int>(m);
  system.makeCompressed();
  impl_->lu.compute(system);
  if (impl_->lu.info() != Eigen::Success) {
    throw SolveError("I - alpha M is singular at alpha = " + format_real(alpha));
  }
}

ResolventSolver::~ResolventSolver() = default;
ResolventSolver::ResolventSolver(ResolventSolver&&) noexcept = default;
ResolventSolver& ResolventSolver::operator=(ResolventSolver&&) noexcept = default;

Vector ResolventSolver::solve(const Vector& v) const {
  if (v.size() != impl_->m.rows()) {
    throw std::invalid_argument("resolvent_solve: dimension mismatch");
  }
  const double scale = v.lpNorm<Eigen::Infinity>();
  if (scale == 0.0) return Vector::Zero(v.size());

  auto residual = [&](const Vector& x) -> Vector {
    return v - (x - impl_->alpha * multiply(impl_->m, x));
  };
  Vector x = impl_->lu.solve(v);
  Vector r = residual(x);
  for (int step = 0; step < 3 && !(r.lpNorm<Eigen::Infinity>() <= impl_->tol * scale);
       ++step) {
    x += impl_->lu.solve(r);
    r = residual(x);
  }
  const double res = r.lpNorm<Eigen::Infinity>();
  // When |x| >> |v| the rounding floor of the residual itself can sit above
  // tol |v|; a residual at that floor is the best any double x can reach.
  const double floor = 8.0 * std::numeric_limits<double>::epsilon() *
                       (scale + (1.0 + impl_->alpha * impl_->row_sum) *
                                    x.lpNorm<Eigen::Infinity>());
  if (!(res <= impl_->tol * scale) && !(res <= floor)) {
    throw SolveError("resolvent residual " + format_real(res / scale) +
                     " exceeds tolerance " + format_real(impl_->tol));
  }
  return x;
}

Vector resolvent_solve(const SparseMatrix& m, double alpha, const Vector& v, double tol) {
  return ResolventSolver(m, alpha, tol).solve(v);
}

}  // namespace tempo_katz
