// Spectral norm / condition number via power iteration on A^T A and inverse
// iteration with exact structural solves, plus the kappa-vs-m scaling sweep.
#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "qheat/common.hpp"
#include "qheat/fit.hpp"

namespace qheat {

struct NormReport {
  double norm_a = 0.0;     // sigma_max
  double sigma_min = 0.0;
  double kappa = 0.0;
  int iterations = 0;      // combined over both estimates
  double residual = 0.0;   // worst relative change at acceptance
};

struct ScalingFit {
  std::vector<double> m_values;
  std::vector<double> kappa_values;
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 1.0;
  double norm_max = 0.0;   // spread of ||A|| across the sweep
  double norm_min = 0.0;
};

struct PowerIterationOptions {
  double tol = 1e-10;
  int max_iter = 10000;
  std::uint64_t seed = 12345;  // fixed start vector for deterministic runs
};

namespace detail {

inline std::vector<double> seeded_unit_vector(int dim, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> v(dim);
  double norm = 0.0;
  for (double& x : v) {
    x = rng.next_symmetric();
    norm += x * x;
  }
  norm = std::sqrt(norm);
  if (norm == 0.0) {
    v[0] = 1.0;
    return v;
  }
  for (double& x : v) x /= norm;
  return v;
}

// Power iteration on the SPD map v -> op(v); returns the dominant
// eigenvalue. `label` only decorates the error message.
template <class Map>
double dominant_eigenvalue(int dim, const Map& map, const PowerIterationOptions& opts,
                           const char* label, int* iterations, double* residual) {
  std::vector<double> v = seeded_unit_vector(dim, opts.seed);
  double prev = 0.0;
  double best = 0.0;
  double resid = 1.0;
  for (int it = 1; it <= opts.max_iter; ++it) {
    std::vector<double> w = map(v);
    double rayleigh = 0.0;
    for (int i = 0; i < dim; ++i) rayleigh += v[i] * w[i];
    double norm = 0.0;
    for (double x : w) norm += x * x;
    norm = std::sqrt(norm);
    if (!(norm > 0.0)) throw std::runtime_error("power iteration: operator annihilated iterate");
    for (int i = 0; i < dim; ++i) v[i] = w[i] / norm;
    best = rayleigh;
    resid = std::abs(rayleigh - prev) / std::max(std::abs(rayleigh), 1e-300);
    if (it > 1 && resid <= opts.tol) {
      if (iterations) *iterations = it;
      if (residual) *residual = resid;
      return rayleigh;
    }
    prev = rayleigh;
  }
  throw ConvergenceError(std::string(label) + ": no convergence after max_iter", std::sqrt(std::max(best, 0.0)),
                         resid);
}

}  // namespace detail

// sigma_max within relative tolerance, via power iteration on A^T A.
template <class Op>
double spectral_norm(const Op& op, const PowerIterationOptions& opts = {}, int* iterations = nullptr,
                     double* residual = nullptr) {
  if (!(opts.tol > 0.0)) throw std::invalid_argument("spectral_norm: tol > 0 required");
  const double lam = detail::dominant_eigenvalue(
      op.dim(), [&](const std::vector<double>& v) { return op.apply_transpose(op.apply(v)); }, opts,
      "spectral_norm", iterations, residual);
  return std::sqrt(std::max(lam, 0.0));
}

// sigma_min via inverse iteration on A^T A; the inner solves are the exact
// block forward/back substitutions (or an LU for dense operators).
template <class Op>
double min_singular_value(const Op& op, const PowerIterationOptions& opts = {},
                          int* iterations = nullptr, double* residual = nullptr) {
  if (!(opts.tol > 0.0)) throw std::invalid_argument("min_singular_value: tol > 0 required");
  const double lam = detail::dominant_eigenvalue(
      op.dim(), [&](const std::vector<double>& v) { return op.solve(op.solve_transpose(v)); }, opts,
      "min_singular_value", iterations, residual);
  if (!(lam > 0.0) || !std::isfinite(lam))
    throw std::runtime_error("min_singular_value: operator is singular or numerically singular");
  return 1.0 / std::sqrt(lam);
}

template <class Op>
NormReport condition_number(const Op& op, const PowerIterationOptions& opts = {}) {
  NormReport report;
  int it1 = 0, it2 = 0;
  double r1 = 0.0, r2 = 0.0;
  report.norm_a = spectral_norm(op, opts, &it1, &r1);
  report.sigma_min = min_singular_value(op, opts, &it2, &r2);
  report.kappa = report.norm_a / report.sigma_min;
  report.iterations = it1 + it2;
  report.residual = std::max(r1, r2);
  return report;
}

// Square dense operator backed by an LU factorization; used for synthetic
// test matrices and oracle comparisons.
class DenseOperator {
 public:
  explicit DenseOperator(Eigen::MatrixXd a) : a_(std::move(a)), lu_(a_) {
    if (a_.rows() != a_.cols()) throw std::invalid_argument("DenseOperator: square matrix required");
  }

  int dim() const { return static_cast<int>(a_.rows()); }

  std::vector<double> apply(std::span<const double> v) const { return mul(a_, v); }
  std::vector<double> apply_transpose(std::span<const double> v) const {
    return mul(a_.transpose(), v);
  }
  std::vector<double> solve(std::span<const double> v) const {
    ensure_invertible();
    Eigen::VectorXd x = lu_.solve(Eigen::Map<const Eigen::VectorXd>(v.data(), v.size()));
    return {x.data(), x.data() + x.size()};
  }
  std::vector<double> solve_transpose(std::span<const double> v) const {
    ensure_invertible();
    Eigen::VectorXd x =
        lu_.transpose().solve(Eigen::Map<const Eigen::VectorXd>(v.data(), v.size()));
    return {x.data(), x.data() + x.size()};
  }

  const Eigen::MatrixXd& matrix() const { return a_; }

 private:
  template <class M>
  static std::vector<double> mul(const M& m, std::span<const double> v) {
    Eigen::VectorXd x = m * Eigen::Map<const Eigen::VectorXd>(v.data(), v.size());
    return {x.data(), x.data() + x.size()};
  }
  void ensure_invertible() const {
    if (!lu_.isInvertible())
      throw std::runtime_error("DenseOperator: matrix is singular or numerically singular");
  }

  Eigen::MatrixXd a_;
  Eigen::FullPivLU<Eigen::MatrixXd> lu_;
};

// Least-squares slope of log kappa vs log m over the sweep. The builder
// returns a NormReport per m (measured or synthetic). Requires at least 4
// ascending sizes spanning an 8x range so the fitted slope means something.
inline ScalingFit kappa_scaling_study(std::span<const int> m_list,
                                      const std::function<NormReport(int)>& builder) {
  if (m_list.size() < 4) throw std::invalid_argument("kappa_scaling_study: need >= 4 sizes");
  for (std::size_t i = 1; i < m_list.size(); ++i)
    if (m_list[i] <= m_list[i - 1])
      throw std::invalid_argument("kappa_scaling_study: m_list must be ascending");
  if (m_list.back() < 8 * m_list.front())
    throw std::invalid_argument("kappa_scaling_study: m range must span >= 8x");

  ScalingFit fit;
  bool first = true;
  for (int m : m_list) {
    const NormReport report = builder(m);
    fit.m_values.push_back(static_cast<double>(m));
    fit.kappa_values.push_back(report.kappa);
    if (first) {
      fit.norm_max = fit.norm_min = report.norm_a;
      first = false;
    } else {
      fit.norm_max = std::max(fit.norm_max, report.norm_a);
      fit.norm_min = std::min(fit.norm_min, report.norm_a);
    }
  }
  const LogLogFit ll = fit_loglog(fit.m_values, fit.kappa_values);
  fit.slope = ll.slope;
  fit.intercept = ll.intercept;
  fit.r2 = ll.r2;
  return fit;
}

}  // namespace qheat
