// Banded matrix storage. The discrete Laplacian and the propagator are
// tridiagonal; products of banded matrices widen the band, so storage is
// per-diagonal with arbitrary bandwidths.
#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace qheat {

class BandMatrix {
 public:
  BandMatrix(int dim, int lower_bw, int upper_bw)
      : dim_(dim), kl_(lower_bw), ku_(upper_bw) {
    if (dim < 1) throw std::invalid_argument("BandMatrix: dim >= 1 required");
    if (kl_ < 0 || ku_ < 0 || kl_ >= dim || ku_ >= dim)
      throw std::invalid_argument("BandMatrix: bad bandwidths");
    bands_.resize(kl_ + ku_ + 1);
    for (int d = -kl_; d <= ku_; ++d) bands_[d + kl_].assign(dim_ - std::abs(d), 0.0);
  }

  static BandMatrix tridiagonal(std::vector<double> lower, std::vector<double> main,
                                std::vector<double> upper) {
    const int dim = static_cast<int>(main.size());
    if (dim < 1) throw std::invalid_argument("BandMatrix: empty main diagonal");
    if (dim == 1) {
      if (!lower.empty() || !upper.empty())
        throw std::invalid_argument("BandMatrix: off-diagonals must be empty for dim 1");
      BandMatrix b(1, 0, 0);
      b.bands_[0] = std::move(main);
      return b;
    }
    if (static_cast<int>(lower.size()) != dim - 1 || static_cast<int>(upper.size()) != dim - 1)
      throw std::invalid_argument("BandMatrix: off-diagonal size mismatch");
    BandMatrix b(dim, 1, 1);
    b.bands_[0] = std::move(lower);
    b.bands_[1] = std::move(main);
    b.bands_[2] = std::move(upper);
    return b;
  }

  static BandMatrix identity(int dim) {
    BandMatrix b(dim, 0, 0);
    for (double& v : b.bands_[0]) v = 1.0;
    return b;
  }

  int dim() const { return dim_; }
  int lower_bandwidth() const { return kl_; }
  int upper_bandwidth() const { return ku_; }

  // Scalar the band pattern was scaled by; build_laplacian stores the CFL
  // number lambda here.
  double scale = 0.0;

  double at(int i, int j) const {
    check_index(i, j);
    const int d = j - i;
    if (d < -kl_ || d > ku_) return 0.0;
    return bands_[d + kl_][d >= 0 ? i : j];
  }

  double& ref(int i, int j) {
    check_index(i, j);
    const int d = j - i;
    if (d < -kl_ || d > ku_) throw std::out_of_range("BandMatrix: outside band");
    return bands_[d + kl_][d >= 0 ? i : j];
  }

  std::vector<double> apply(std::span<const double> v) const {
    if (static_cast<int>(v.size()) != dim_)
      throw std::invalid_argument("BandMatrix::apply: size mismatch");
    std::vector<double> out(dim_, 0.0);
    for (int d = -kl_; d <= ku_; ++d) {
      const auto& band = bands_[d + kl_];
      for (std::size_t p = 0; p < band.size(); ++p) {
        const int i = d >= 0 ? static_cast<int>(p) : static_cast<int>(p) - d;
        out[i] += band[p] * v[i + d];
      }
    }
    return out;
  }

  BandMatrix multiply(const BandMatrix& other) const {
    if (other.dim_ != dim_) throw std::invalid_argument("BandMatrix::multiply: dim mismatch");
    const int kl = std::min(dim_ - 1, kl_ + other.kl_);
    const int ku = std::min(dim_ - 1, ku_ + other.ku_);
    BandMatrix out(dim_, kl, ku);
    for (int i = 0; i < dim_; ++i) {
      for (int j = std::max(0, i - kl); j <= std::min(dim_ - 1, i + ku); ++j) {
        double s = 0.0;
        const int lo = std::max({0, i - kl_, j - other.ku_});
        const int hi = std::min({dim_ - 1, i + ku_, j + other.kl_});
        for (int t = lo; t <= hi; ++t) s += at(i, t) * other.at(t, j);
        out.ref(i, j) = s;
      }
    }
    return out;
  }

  BandMatrix add_identity(double coeff = 1.0) const {
    BandMatrix out = *this;
    if (out.kl_ == 0 && out.ku_ == 0) {
      for (double& v : out.bands_[0]) v += coeff;
    } else {
      for (int i = 0; i < dim_; ++i) out.ref(i, i) += coeff;
    }
    return out;
  }

  bool is_symmetric(double tol = 0.0) const {
    if (kl_ != ku_) return false;
    for (int d = 1; d <= ku_; ++d) {
      const auto& up = bands_[d + kl_];
      const auto& lo = bands_[kl_ - d];
      for (std::size_t p = 0; p < up.size(); ++p)
        if (std::abs(up[p] - lo[p]) > tol) return false;
    }
    return true;
  }

 private:
  void check_index(int i, int j) const {
    if (i < 0 || i >= dim_ || j < 0 || j >= dim_)
      throw std::out_of_range("BandMatrix: index out of range");
  }

  int dim_;
  int kl_, ku_;
  std::vector<std::vector<double>> bands_;  // diagonal d stored at bands_[d + kl_]
};

}  // namespace qheat
