// Least squares on (log x, log y); shared by the conditioning sweep and the
// benchmark report.
#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace qheat {

struct LogLogFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 1.0;
  std::size_t points = 0;
};

inline LogLogFit fit_loglog(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("fit_loglog: size mismatch");
  if (x.size() < 3) throw std::invalid_argument("fit_loglog: need at least 3 points");
  const std::size_t n = x.size();
  std::vector<double> lx(n), ly(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0))
      throw std::invalid_argument("fit_loglog: coordinates must be positive");
    lx[i] = std::log(x[i]);
    ly[i] = std::log(y[i]);
  }
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
    syy += (ly[i] - my) * (ly[i] - my);
  }
  if (sxx <= 0.0) throw std::invalid_argument("fit_loglog: degenerate x range");

  LogLogFit fit;
  fit.points = n;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double pred = fit.slope * lx[i] + fit.intercept;
    ss_res += (ly[i] - pred) * (ly[i] - pred);
  }
  fit.r2 = (syy > 0.0) ? 1.0 - ss_res / syy : 1.0;
  return fit;
}

}  // namespace qheat
