// Explicit finite-difference machinery for the 1-D heat equation: the scaled
// discrete Laplacian, the time-marching update, the stacked block linear
// system equivalent to it, and the benchmark observable (heat in a region).
#pragma once

#include <algorithm>
#include <cmath>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "qheat/band_matrix.hpp"
#include "qheat/common.hpp"
#include "qheat/csv.hpp"
#include "qheat/grid.hpp"

namespace qheat {

// lambda * tridiag(1, -2, 1). Symmetric, negative semidefinite; the CFL
// number lambda is recorded in BandMatrix::scale. lambda > 1/2 is outside
// the explicit-stability region and is reported as a warning, not an error.
inline BandMatrix build_laplacian(const HeatProblem& problem, Warnings* warnings = nullptr) {
  const int m = problem.grid.m;
  const double lambda = problem.cfl();
  if (lambda > 0.5)
    warn(warnings, "CFL number lambda = " + std::to_string(lambda) +
                       " exceeds 1/2; explicit scheme is unstable");
  BandMatrix laplacian = [&] {
    if (m == 1) return BandMatrix::tridiagonal({}, {-2.0 * lambda}, {});
    return BandMatrix::tridiagonal(std::vector<double>(m - 1, lambda),
                                   std::vector<double>(m, -2.0 * lambda),
                                   std::vector<double>(m - 1, lambda));
  }();
  laplacian.scale = lambda;
  return laplacian;
}

// u_{n+1} = u_n + L u_n + lambda*(boundary forcing); identical to the
// pointwise update u_j + lambda*(u_{j+1} - 2 u_j + u_{j-1}) with the
// boundary values substituted at j = 0 and j = m+1.
inline std::vector<double> step_explicit(std::span<const double> u, const BandMatrix& laplacian,
                                         Boundary bc = {}) {
  const int m = laplacian.dim();
  if (static_cast<int>(u.size()) != m)
    throw std::invalid_argument("step_explicit: state size mismatch");
  std::vector<double> next = laplacian.apply(u);
  const double lambda = laplacian.scale;
  next[0] += lambda * bc.left;
  next[m - 1] += lambda * bc.right;
  for (int j = 0; j < m; ++j) next[j] += u[j];
  return next;
}

struct Trajectory {
  Grid1D grid;
  std::vector<std::vector<double>> slices;  // (N+1) x m, slices[n][j] = u(x_{j+1}, t_n)

  const std::vector<double>& slice(int n) const { return slices.at(n); }
  const std::vector<double>& final_slice() const { return slices.back(); }

  void write_csv(std::ostream& out) const {
    out << "t,x,u\n";
    for (std::size_t n = 0; n < slices.size(); ++n)
      for (int j = 0; j < grid.m; ++j)
        out << csv::format_double(grid.time(static_cast<int>(n))) << ','
            << csv::format_double(grid.node(j + 1)) << ','
            << csv::format_double(slices[n][j]) << '\n';
  }
};

// The stacked space-time system A u~ = b~ with identity diagonal blocks and
// -(I + L) subdiagonal blocks, so forward substitution reproduces the
// explicit marching scheme exactly. Lower block-bidiagonal with unit
// diagonal: invertible for any lambda.
struct BlockSystem {
  Grid1D grid;
  int m;
  int n_steps;
  BandMatrix propagator;     // M = I + L
  std::vector<double> rhs;   // b~: initial slice, then boundary forcing per step
  Boundary boundary;
  double lambda;

  int dim() const { return (n_steps + 1) * m; }

  std::vector<double> apply(std::span<const double> v) const {
    require_size(v);
    std::vector<double> out(v.begin(), v.end());
    for (int n = n_steps; n >= 1; --n) {
      const auto mv = propagator.apply(v.subspan((n - 1) * m, m));
      for (int j = 0; j < m; ++j) out[n * m + j] -= mv[j];
    }
    return out;
  }

  std::vector<double> apply_transpose(std::span<const double> v) const {
    require_size(v);
    std::vector<double> out(v.begin(), v.end());
    for (int n = 0; n < n_steps; ++n) {
      const auto mv = propagator.apply(v.subspan((n + 1) * m, m));  // M symmetric
      for (int j = 0; j < m; ++j) out[n * m + j] -= mv[j];
    }
    return out;
  }

  // Forward substitution: u_0 = v_0, u_n = v_n + M u_{n-1}.
  std::vector<double> solve(std::span<const double> v) const {
    require_size(v);
    std::vector<double> out(v.begin(), v.end());
    for (int n = 1; n <= n_steps; ++n) {
      const auto mv = propagator.apply(std::span<const double>(out).subspan((n - 1) * m, m));
      for (int j = 0; j < m; ++j) out[n * m + j] += mv[j];
    }
    return out;
  }

  // Backward substitution for A^T w = v.
  std::vector<double> solve_transpose(std::span<const double> v) const {
    require_size(v);
    std::vector<double> out(v.begin(), v.end());
    for (int n = n_steps - 1; n >= 0; --n) {
      const auto mv = propagator.apply(std::span<const double>(out).subspan((n + 1) * m, m));
      for (int j = 0; j < m; ++j) out[n * m + j] += mv[j];
    }
    return out;
  }

  // Row-major dense copy; desk-scale only (used by the quantum emulation
  // and by test oracles).
  std::vector<double> to_dense() const {
    const int d = dim();
    std::vector<double> a(static_cast<std::size_t>(d) * d, 0.0);
    for (int i = 0; i < d; ++i) a[static_cast<std::size_t>(i) * d + i] = 1.0;
    for (int n = 1; n <= n_steps; ++n)
      for (int i = 0; i < m; ++i)
        for (int j = std::max(0, i - 1); j <= std::min(m - 1, i + 1); ++j)
          a[static_cast<std::size_t>(n * m + i) * d + (n - 1) * m + j] = -propagator.at(i, j);
    return a;
  }

 private:
  void require_size(std::span<const double> v) const {
    if (static_cast<int>(v.size()) != dim())
      throw std::invalid_argument("BlockSystem: vector size mismatch");
  }
};

inline BlockSystem assemble_block_system(const HeatProblem& problem, Warnings* warnings = nullptr) {
  const int m = problem.grid.m;
  const int n_steps = problem.grid.n_steps;
  BandMatrix laplacian = build_laplacian(problem, warnings);
  const double lambda = laplacian.scale;
  BandMatrix propagator = laplacian.add_identity();
  propagator.scale = lambda;

  std::vector<double> rhs(static_cast<std::size_t>(n_steps + 1) * m, 0.0);
  std::copy(problem.initial.begin(), problem.initial.end(), rhs.begin());
  for (int n = 1; n <= n_steps; ++n) {
    rhs[static_cast<std::size_t>(n) * m] += lambda * problem.boundary.left;
    rhs[static_cast<std::size_t>(n) * m + (m - 1)] += lambda * problem.boundary.right;
  }
  return BlockSystem{problem.grid, m, n_steps, std::move(propagator), std::move(rhs),
                     problem.boundary, lambda};
}

// Exact solve by block forward substitution; cost Theta(N*m).
inline Trajectory solve_block_direct(const BlockSystem& system) {
  const auto flat = system.solve(system.rhs);
  Trajectory traj{system.grid, {}};
  traj.slices.reserve(system.n_steps + 1);
  for (int n = 0; n <= system.n_steps; ++n)
    traj.slices.emplace_back(flat.begin() + static_cast<std::ptrdiff_t>(n) * system.m,
                             flat.begin() + static_cast<std::ptrdiff_t>(n + 1) * system.m);
  return traj;
}

inline Trajectory march_explicit(const HeatProblem& problem, Warnings* warnings = nullptr) {
  const BandMatrix laplacian = build_laplacian(problem, warnings);
  Trajectory traj{problem.grid, {problem.initial}};
  traj.slices.reserve(problem.grid.n_steps + 1);
  for (int n = 0; n < problem.grid.n_steps; ++n)
    traj.slices.push_back(step_explicit(traj.slices.back(), laplacian, problem.boundary));
  return traj;
}

// Separation-of-variables mode p on [x0, x_end] with zero Dirichlet data:
// e^{-alpha (p pi / L)^2 t} sin(p pi (x_j - x0) / L).
inline std::vector<double> analytic_solution(int p, double alpha, const Grid1D& grid, double t) {
  if (p <= 0) throw std::invalid_argument("analytic_solution: mode p > 0 required");
  const double len = grid.length();
  const double decay = std::exp(-alpha * (p * kPi / len) * (p * kPi / len) * t);
  std::vector<double> u(grid.m);
  for (int j = 1; j <= grid.m; ++j)
    u[j - 1] = decay * std::sin(p * kPi * (grid.node(j) - grid.x0) / len);
  return u;
}

// Half-open interior index range [begin, end), 0-based (interior point j+1
// has index j).
struct IndexRange {
  int begin = 0;
  int end = 0;

  int size() const { return std::max(0, end - begin); }
};

// Riemann-sum heat in region S: delta_x * sum_{j in S} u_j. Empty ranges
// give 0.
inline double heat_in_region(std::span<const double> slice, IndexRange region, double delta_x) {
  if (region.begin < 0 || region.end > static_cast<int>(slice.size()))
    throw std::invalid_argument("heat_in_region: region outside slice");
  double total = 0.0;
  for (int j = region.begin; j < region.end; ++j) total += slice[j];
  return delta_x * total;
}

// Exact solution of the semi-discrete system du/dt = (alpha/dx^2)(u_{j+1}
// - 2u_j + u_{j-1}) + boundary forcing, via the discrete sine eigenbasis.
// This is the classical reference the time integrators are measured
// against; it carries no time-discretization error.
inline std::vector<double> reference_semidiscrete(const HeatProblem& problem, double t) {
  const int m = problem.grid.m;
  const double dx = problem.grid.delta_x();
  // steady state: discrete Laplacian of a linear profile vanishes
  std::vector<double> steady(m);
  for (int j = 1; j <= m; ++j) {
    const double frac = static_cast<double>(j) / (m + 1);
    steady[j - 1] = problem.boundary.left + frac * (problem.boundary.right - problem.boundary.left);
  }
  // expand u0 - steady in the sine modes of tridiag(1,-2,1)
  std::vector<double> coeff(m, 0.0);
  for (int p = 1; p <= m; ++p) {
    double dot = 0.0;
    for (int j = 1; j <= m; ++j)
      dot += (problem.initial[j - 1] - steady[j - 1]) * std::sin(p * kPi * j / (m + 1));
    coeff[p - 1] = dot * 2.0 / (m + 1);
  }
  std::vector<double> u(steady);
  for (int p = 1; p <= m; ++p) {
    const double s = std::sin(p * kPi / (2.0 * (m + 1)));
    const double rate = -4.0 * problem.alpha / (dx * dx) * s * s;
    const double decayed = coeff[p - 1] * std::exp(rate * t);
    for (int j = 1; j <= m; ++j) u[j - 1] += decayed * std::sin(p * kPi * j / (m + 1));
  }
  return u;
}

}  // namespace qheat
