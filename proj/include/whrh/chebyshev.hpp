#pragma once

// Chebyshev machinery on the unit interval [-1, 1]: second-kind (Lobatto)
// grids, the dense value <-> coefficient transform, Clenshaw evaluation and
// Clenshaw-Curtis weights.

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace whrh {

using cplx = std::complex<double>;

/// Chebyshev points of the second kind in ascending order, x_1 = -1 and x_n = 1.
struct ChebGrid {
  std::vector<double> x;

  [[nodiscard]] std::size_t size() const noexcept { return x.size(); }
  [[nodiscard]] double operator[](std::size_t q) const { return x[q]; }
};

/// Coefficients U_k of sum_k U_k T_k(x), k = 0..n-1.
struct ChebSeries {
  Eigen::VectorXcd coeffs;

  [[nodiscard]] std::size_t size() const noexcept {
    return static_cast<std::size_t>(coeffs.size());
  }
};

[[nodiscard]] inline ChebGrid chebyshev_points(std::size_t n) {
  if (n < 2) throw std::invalid_argument("chebyshev_points: n must be at least 2");
  ChebGrid g;
  g.x.resize(n);
  const double m = static_cast<double>(n - 1);
  for (std::size_t q = 0; q < n; ++q) {
    // Written as a sine so the grid is exactly antisymmetric and x = 0 is exact.
    const double t = (2.0 * static_cast<double>(q) - m) * std::numbers::pi / (2.0 * m);
    g.x[q] = std::sin(t);
  }
  g.x.front() = -1.0;
  g.x.back() = 1.0;
  return g;
}

/// int_{-1}^{1} T_k(x) dx.
[[nodiscard]] constexpr double chebyshev_moment(std::size_t k) noexcept {
  if (k % 2 == 1) return 0.0;
  const double kk = static_cast<double>(k);
  return 2.0 / (1.0 - kk * kk);
}

/// The n x n matrix F with U = F * values on chebyshev_points(n).
[[nodiscard]] inline Eigen::MatrixXd transform_matrix(std::size_t n) {
  if (n < 2) throw std::invalid_argument("transform_matrix: n must be at least 2");
  const std::size_t m = n - 1;
  const double md = static_cast<double>(m);
  Eigen::MatrixXd F(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const double ck = (k == 0 || k == m) ? 0.5 : 1.0;
    for (std::size_t q = 0; q < n; ++q) {
      // ascending grid index q corresponds to the standard descending index m - q
      const std::size_t j = m - q;
      const double wq = (j == 0 || j == m) ? 0.5 : 1.0;
      const std::size_t phase = (k * j) % (2 * m);
      F(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(q)) =
          (2.0 / md) * ck * wq * std::cos(static_cast<double>(phase) * std::numbers::pi / md);
    }
  }
  return F;
}

/// The inverse of transform_matrix: entry (q, k) = T_k(x_q).
[[nodiscard]] inline Eigen::MatrixXd inverse_transform_matrix(std::size_t n) {
  if (n < 2) throw std::invalid_argument("inverse_transform_matrix: n must be at least 2");
  const std::size_t m = n - 1;
  const double md = static_cast<double>(m);
  Eigen::MatrixXd T(n, n);
  for (std::size_t q = 0; q < n; ++q) {
    const std::size_t j = m - q;
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t phase = (k * j) % (2 * m);
      T(static_cast<Eigen::Index>(q), static_cast<Eigen::Index>(k)) =
          std::cos(static_cast<double>(phase) * std::numbers::pi / md);
    }
  }
  return T;
}

[[nodiscard]] inline ChebSeries values_to_coeffs(const Eigen::VectorXcd& values) {
  const auto n = static_cast<std::size_t>(values.size());
  if (n < 2) throw std::invalid_argument("values_to_coeffs: need at least 2 samples");
  return ChebSeries{transform_matrix(n).cast<cplx>() * values};
}

[[nodiscard]] inline ChebSeries values_to_coeffs(const Eigen::VectorXcd& values,
                                                 const ChebGrid& grid) {
  if (static_cast<std::size_t>(values.size()) != grid.size())
    throw std::invalid_argument("values_to_coeffs: sample count does not match grid size");
  return values_to_coeffs(values);
}

/// Clenshaw recurrence; valid for complex x through the polynomial continuation of T_k.
[[nodiscard]] inline cplx eval_series(const ChebSeries& s, cplx x) {
  const auto n = s.coeffs.size();
  if (n == 0) return {0.0, 0.0};
  cplx b1{0.0, 0.0}, b2{0.0, 0.0};
  for (Eigen::Index k = n - 1; k >= 1; --k) {
    const cplx b0 = s.coeffs(k) + 2.0 * x * b1 - b2;
    b2 = b1;
    b1 = b0;
  }
  return s.coeffs(0) + x * b1 - b2;
}

/// Evaluates T_0(x) .. T_{n-1}(x) by the three-term recurrence.
[[nodiscard]] inline Eigen::RowVectorXcd chebyshev_row(cplx x, std::size_t n) {
  Eigen::RowVectorXcd t(static_cast<Eigen::Index>(n));
  if (n == 0) return t;
  t(0) = 1.0;
  if (n > 1) t(1) = x;
  for (std::size_t k = 2; k < n; ++k) {
    const auto i = static_cast<Eigen::Index>(k);
    t(i) = 2.0 * x * t(i - 1) - t(i - 2);
  }
  return t;
}

/// Clenshaw-Curtis weights on chebyshev_points(n): w_q = sum_k F_kq int T_k.
[[nodiscard]] inline std::vector<double> clenshaw_curtis_weights(std::size_t n) {
  if (n < 2) throw std::invalid_argument("clenshaw_curtis_weights: n must be at least 2");
  const Eigen::MatrixXd F = transform_matrix(n);
  Eigen::VectorXd moments(static_cast<Eigen::Index>(n));
  for (std::size_t k = 0; k < n; ++k) moments(static_cast<Eigen::Index>(k)) = chebyshev_moment(k);
  const Eigen::VectorXd w = F.transpose() * moments;
  std::vector<double> out(n);
  // symmetrise so the weights are exactly palindromic
  for (std::size_t q = 0; q < n; ++q) {
    const auto a = static_cast<Eigen::Index>(q);
    const auto b = static_cast<Eigen::Index>(n - 1 - q);
    out[q] = 0.5 * (w(a) + w(b));
  }
  return out;
}

}  // namespace whrh
