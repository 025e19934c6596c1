// Spatial/temporal discretization of the 1-D heat problem and the named
// initial profiles. Values are immutable after construction.
#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "qheat/common.hpp"

namespace qheat {

// Interior points x_j = x0 + j*dx, j = 1..m; boundaries at j = 0 and m+1.
struct Grid1D {
  double x0;
  double x_end;
  int m;        // interior point count
  double t_final;
  int n_steps;  // N

  Grid1D(double x0_, double x_end_, int m_, double t_final_, int n_steps_)
      : x0(x0_), x_end(x_end_), m(m_), t_final(t_final_), n_steps(n_steps_) {
    if (m < 1) throw std::invalid_argument("Grid1D: m >= 1 required");
    if (n_steps < 1) throw std::invalid_argument("Grid1D: n_steps >= 1 required");
    if (!(x_end > x0)) throw std::invalid_argument("Grid1D: x_end > x0 required");
    if (!(t_final > 0.0)) throw std::invalid_argument("Grid1D: t_final > 0 required");
  }

  double delta_x() const { return (x_end - x0) / (m + 1); }
  double delta_t() const { return t_final / n_steps; }
  double node(int j) const { return x0 + j * delta_x(); }  // j in [0, m+1]
  double time(int n) const { return n * delta_t(); }
  double length() const { return x_end - x0; }
};

struct Boundary {
  double left = 0.0;
  double right = 0.0;
};

// Heat problem with the unit-total-heat scaling applied on construction:
// delta_x * sum(u0) == 1 whenever the raw total is nonzero. The original
// scale is kept for un-normalized reporting.
struct HeatProblem {
  Grid1D grid;
  double alpha;
  std::vector<double> initial;  // u(x_j, 0), j = 1..m
  Boundary boundary;
  double heat_scale = 1.0;  // raw total heat before normalization
  bool normalized = false;

  HeatProblem(Grid1D grid_, double alpha_, std::vector<double> initial_,
              Boundary boundary_ = {}, bool normalize = true)
      : grid(grid_), alpha(alpha_), initial(std::move(initial_)), boundary(boundary_) {
    if (!(alpha > 0.0)) throw std::invalid_argument("HeatProblem: alpha > 0 required");
    if (static_cast<int>(initial.size()) != grid.m)
      throw std::invalid_argument("HeatProblem: initial data must have m entries");
    if (normalize) {
      double total = 0.0;
      for (double v : initial) total += v;
      total *= grid.delta_x();
      if (std::abs(total) > 1e-12) {
        for (double& v : initial) v /= total;
        heat_scale = total;
        normalized = true;
      }
    }
  }

  // CFL number lambda = alpha*dt/dx^2
  double cfl() const {
    const double dx = grid.delta_x();
    return alpha * grid.delta_t() / (dx * dx);
  }
};

inline std::vector<double> profile_spike(int m) {
  std::vector<double> u(m, 0.0);
  u[(m - 1) / 2] = 1.0;
  return u;
}

inline std::vector<double> profile_uniform(int m) { return std::vector<double>(m, 1.0); }

inline std::vector<double> profile_sine(int m, int p) {
  if (p <= 0) throw std::invalid_argument("profile_sine: mode p > 0 required");
  std::vector<double> u(m);
  for (int j = 1; j <= m; ++j) u[j - 1] = std::sin(p * kPi * j / (m + 1));
  return u;
}

}  // namespace qheat
