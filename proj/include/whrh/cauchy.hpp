#pragma once

// Cauchy transforms of the Chebyshev basis and the collocation matrices C+ / C-.
//
// With S_k(z) = (1/2 pi i) int_{-1}^{1} T_k(t) / (t - z) dt we have
//
//   S_0(z)     = (1/2 pi i) log((z - 1)/(z + 1))
//   S_1(z)     = z S_0(z) + 1/(pi i)
//   S_{k+1}(z) = 2 z S_k(z) - S_{k-1}(z) + m_k/(pi i),   m_k = int T_k,
//
// and S_k = T_k S_0 + r_k with r_k a polynomial obeying the same recurrence
// from r_0 = 0. The finite rows mu^L = r(-1), mu^R = r(+1) are the endpoint
// limits once the logarithmic part has been cancelled by a density that
// vanishes at +-1.
//
// For a map M = P/Q with d inverse branches,
//   M'(t) / (M(t) - alpha) = sum_j 1/(t - x_j(alpha)) - Q'(t)/Q(t),
// so the Cauchy transform of f(M^{-1}(.)) over the real line is
//   sum_j (C f)(x_j(alpha)) - const,
// with the constant fixed by decay at infinity: (d/2)(mu^L + mu^R) applied to
// the coefficients.

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "whrh/chebyshev.hpp"
#include "whrh/mappings.hpp"

namespace whrh {

enum class Side { Plus, Minus, Off };

/// Row [C T_0(z), ..., C T_{n-1}(z)] at one point.
struct BasisRow {
  Eigen::RowVectorXcd values;
  cplx z;
  Side side;
};

struct EndpointRows {
  Eigen::RowVectorXcd mu_left;   ///< finite part at x = -1
  Eigen::RowVectorXcd mu_right;  ///< finite part at x = +1
};

struct CauchyPair {
  Eigen::MatrixXcd c_plus;
  Eigen::MatrixXcd c_minus;
  RationalMap map;
  std::size_t n;
};

namespace detail {

inline constexpr cplx kInvPiI{0.0, -1.0 / std::numbers::pi};  // 1/(pi i)

inline bool on_interval(cplx z) { return z.imag() == 0.0 && std::abs(z.real()) <= 1.0; }

}  // namespace detail

/// T_+^{-1}(z) = z - sqrt(z-1) sqrt(z+1); maps the plane cut along [-1,1] into the unit disk.
[[nodiscard]] inline cplx joukowski_inverse(cplx z) {
  return z - std::sqrt(z - 1.0) * std::sqrt(z + 1.0);
}

/// T_down^{-1}(x) = x - i sqrt(1-x) sqrt(1+x), the lower-side boundary value for x in [-1,1].
[[nodiscard]] inline cplx joukowski_inverse_down(double x) {
  return {x, -std::sqrt(1.0 - x) * std::sqrt(1.0 + x)};
}

/// Polynomial part r_k(z) of S_k(z) = T_k(z) S_0(z) + r_k(z), k < n.
[[nodiscard]] inline Eigen::RowVectorXcd cauchy_polynomial_part(cplx z, std::size_t n) {
  Eigen::RowVectorXcd r = Eigen::RowVectorXcd::Zero(static_cast<Eigen::Index>(n));
  if (n > 1) r(1) = detail::kInvPiI;
  for (std::size_t k = 1; k + 1 < n; ++k) {
    const auto i = static_cast<Eigen::Index>(k);
    r(i + 1) = 2.0 * z * r(i) - r(i - 1) + chebyshev_moment(k) * detail::kInvPiI;
  }
  return r;
}

namespace detail {

inline void forward_recurrence(Eigen::RowVectorXcd& s, cplx z, cplx s0) {
  const auto n = s.size();
  s(0) = s0;
  if (n > 1) s(1) = z * s0 + kInvPiI;
  for (Eigen::Index k = 1; k + 1 < n; ++k)
    s(k + 1) = 2.0 * z * s(k) - s(k - 1) + chebyshev_moment(static_cast<std::size_t>(k)) * kInvPiI;
}

/// Recurrence solved as a boundary-value problem with S_N = 0, stable when |zeta| < 1.
inline void boundary_value_recurrence(Eigen::RowVectorXcd& s, cplx z, cplx s0, std::size_t big_n) {
  const auto n = static_cast<std::size_t>(s.size());
  // unknowns S_1 .. S_{N-1}; equation k: S_{k-1} - 2z S_k + S_{k+1} = m_k/(pi i)
  const std::size_t m = big_n - 1;
  std::vector<cplx> cp(m), dp(m);
  const cplx b = -2.0 * z;
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t k = i + 1;
    cplx d = chebyshev_moment(k) * kInvPiI;
    if (k == 1) d -= s0;
    const cplx denom = i == 0 ? b : b - cp[i - 1];
    cp[i] = 1.0 / denom;
    dp[i] = i == 0 ? d / denom : (d - dp[i - 1]) / denom;
  }
  std::vector<cplx> x(m);
  x[m - 1] = dp[m - 1];
  for (std::size_t i = m - 1; i-- > 0;) x[i] = dp[i] - cp[i] * x[i + 1];
  s(0) = s0;
  for (std::size_t k = 1; k < n; ++k) s(static_cast<Eigen::Index>(k)) = x[k - 1];
}

}  // namespace detail

/// C T_k(z) for k < n. Side Plus/Minus gives boundary values on (-1, 1).
[[nodiscard]] inline BasisRow cauchy_basis_row(cplx z, std::size_t n, Side side) {
  if (n == 0) throw std::invalid_argument("cauchy_basis_row: n must be positive");
  if (z == cplx{1.0, 0.0} || z == cplx{-1.0, 0.0})
    throw std::domain_error("cauchy_basis_row: z at an interval endpoint");
  Eigen::RowVectorXcd s(static_cast<Eigen::Index>(n));
  if (side == Side::Off) {
    if (detail::on_interval(z))
      throw std::domain_error("cauchy_basis_row: z on [-1,1] needs a Plus/Minus side");
    const cplx zeta = joukowski_inverse(z);
    const cplx s0 = cplx{0.0, 2.0 / std::numbers::pi} * std::atanh(zeta);
    const double rho = std::abs(zeta);
    if (std::pow(rho, static_cast<double>(n)) >= 1e-2) {
      detail::forward_recurrence(s, z, s0);
    } else {
      const double extra = std::ceil(40.0 / -std::log(rho));
      detail::boundary_value_recurrence(s, z, s0, n + 2 + static_cast<std::size_t>(extra));
    }
  } else {
    if (z.imag() != 0.0 || !(std::abs(z.real()) < 1.0))
      throw std::domain_error("cauchy_basis_row: Plus/Minus side requires z in (-1,1)");
    const double x = z.real();
    const double jump = side == Side::Plus ? std::numbers::pi : -std::numbers::pi;
    // log((z-1)/(z+1)) from above is log((1-x)/(1+x)) + i pi
    const cplx s0 = cplx{-2.0 * std::atanh(x), jump} / cplx{0.0, 2.0 * std::numbers::pi};
    detail::forward_recurrence(s, z, s0);
  }
  return {std::move(s), z, side};
}

/// Row at an extended point; the point at infinity contributes zero.
[[nodiscard]] inline Eigen::RowVectorXcd cauchy_row(const ExtendedPoint& p, std::size_t n, Side side) {
  if (p.infinite) return Eigen::RowVectorXcd::Zero(static_cast<Eigen::Index>(n));
  return cauchy_basis_row(p.value, n, side).values;
}

[[nodiscard]] inline EndpointRows endpoint_rows(std::size_t n) {
  if (n < 2) throw std::invalid_argument("endpoint_rows: n must be at least 2");
  return {cauchy_polynomial_part(-1.0, n), cauchy_polynomial_part(1.0, n)};
}

namespace detail {

/// Finite part of the interval's own boundary row at x = -1 or x = +1.
inline Eigen::RowVectorXcd interval_endpoint_row(double x_end, std::size_t n) {
  const double sign = x_end < 0 ? 1.0 : -1.0;
  const cplx fp_s0 = cplx{sign * std::numbers::ln2, std::numbers::pi} / cplx{0.0, 2.0 * std::numbers::pi};
  return chebyshev_row(x_end, n) * fp_s0 + cauchy_polynomial_part(x_end, n);
}

inline const Eigen::RowVectorXcd& pick(const EndpointRows& mu, EndpointRow r) {
  return r == EndpointRow::Left ? mu.mu_left : mu.mu_right;
}

}  // namespace detail

/// Boundary-value matrix of the interval-only Cauchy transform at the grid,
/// in value space. Endpoint rows carry the finite parts.
[[nodiscard]] inline Eigen::MatrixXcd interval_boundary_matrix(std::size_t n, Side side) {
  if (n < 2) throw std::invalid_argument("interval_boundary_matrix: n must be at least 2");
  if (side == Side::Off) throw std::invalid_argument("interval_boundary_matrix: side must be Plus or Minus");
  const ChebGrid g = chebyshev_points(n);
  const auto ni = static_cast<Eigen::Index>(n);
  Eigen::MatrixXcd K(ni, ni);
  K.row(0) = detail::interval_endpoint_row(-1.0, n);
  K.row(ni - 1) = detail::interval_endpoint_row(1.0, n);
  if (side == Side::Minus) {
    K.row(0) -= chebyshev_row(-1.0, n);
    K.row(ni - 1) -= chebyshev_row(1.0, n);
  }
  for (std::size_t p = 1; p + 1 < n; ++p)
    K.row(static_cast<Eigen::Index>(p)) = cauchy_basis_row(g[p], n, side).values;
  return K * transform_matrix(n).cast<cplx>();
}

[[nodiscard]] inline Eigen::MatrixXcd interval_plus_matrix(std::size_t n) {
  return interval_boundary_matrix(n, Side::Plus);
}

/// One off-interval branch's block: interior row p is the Cauchy row at zs[p],
/// first/last rows are the mu rows named by `orientation`.
[[nodiscard]] inline Eigen::MatrixXcd exterior_block(std::span<const ExtendedPoint> zs,
                                                     std::pair<EndpointRow, EndpointRow> orientation,
                                                     std::size_t n) {
  if (zs.size() != n) throw std::invalid_argument("exterior_block: need one preimage per grid point");
  const auto ni = static_cast<Eigen::Index>(n);
  const EndpointRows mu = endpoint_rows(n);
  Eigen::MatrixXcd K(ni, ni);
  K.row(0) = detail::pick(mu, orientation.first);
  K.row(ni - 1) = detail::pick(mu, orientation.second);
  for (std::size_t p = 1; p + 1 < n; ++p) {
    if (!zs[p].infinite && detail::on_interval(zs[p].value))
      throw std::domain_error("exterior_block: preimage lies on [-1,1]");
    K.row(static_cast<Eigen::Index>(p)) = cauchy_row(zs[p], n, Side::Off);
  }
  return K * transform_matrix(n).cast<cplx>();
}

/// The constant removed from every row so the transform decays at infinity,
/// (d/2)(mu^L + mu^R), in coefficient space.
[[nodiscard]] inline Eigen::RowVectorXcd decay_subtraction(const RationalMap& map, std::size_t n) {
  const EndpointRows mu = endpoint_rows(n);
  return (0.5 * static_cast<double>(map.degree())) * (mu.mu_left + mu.mu_right);
}

[[nodiscard]] inline CauchyPair assemble_cauchy(const RationalMap& map, std::size_t n) {
  if (n < 4) throw std::invalid_argument("assemble_cauchy: n must be at least 4");
  const ChebGrid g = chebyshev_points(n);
  const auto ni = static_cast<Eigen::Index>(n);
  const EndpointRows mu = endpoint_rows(n);
  const auto branches = map.branches();

  // Accumulate all branches in coefficient space, then apply F once.
  Eigen::MatrixXcd K(ni, ni);
  K.row(0) = detail::interval_endpoint_row(-1.0, n);
  K.row(ni - 1) = detail::interval_endpoint_row(1.0, n);
  for (const Branch& b : branches) {
    if (b.tag == ContourTag::Interval) continue;
    K.row(0) += detail::pick(mu, b.endpoint_rows.first);
    K.row(ni - 1) += detail::pick(mu, b.endpoint_rows.second);
  }
  // interior rows of the minus operator use the other one-sided interval limit
  Eigen::MatrixXcd Km = K;
  for (std::size_t p = 1; p + 1 < n; ++p) {
    const auto pi = static_cast<Eigen::Index>(p);
    K.row(pi).setZero();
    Km.row(pi).setZero();
    for (const Preimage& pre : map.preimages_at_collocation(g[p])) {
      const bool on = pre.tag == ContourTag::Interval;
      K.row(pi) += cauchy_row(pre.point, n, on ? Side::Plus : Side::Off);
      Km.row(pi) += cauchy_row(pre.point, n, on ? Side::Minus : Side::Off);
    }
  }
  const Eigen::RowVectorXcd sub = decay_subtraction(map, n);
  K.rowwise() -= sub;
  Km.rowwise() -= sub;

  const Eigen::MatrixXcd F = transform_matrix(n).cast<cplx>();
  CauchyPair out{K * F, Km * F, map, n};
  // endpoints have no one-sided limits; jump there is the unit row
  out.c_minus.row(0) = out.c_plus.row(0);
  out.c_minus(0, 0) -= 1.0;
  out.c_minus.row(ni - 1) = out.c_plus.row(ni - 1);
  out.c_minus(ni - 1, ni - 1) -= 1.0;
  return out;
}

/// Coefficient-space row giving the Cauchy transform over the mapped real line
/// at a point alpha (un-rotated) off the real axis.
[[nodiscard]] inline Eigen::RowVectorXcd mapped_transform_row(const RationalMap& map, cplx alpha,
                                                              std::size_t n) {
  if (alpha.imag() == 0.0) throw std::domain_error("mapped_transform_row: alpha on the contour");
  Eigen::RowVectorXcd row = -decay_subtraction(map, n);
  for (const cplx x : map.roots(alpha)) row += cauchy_basis_row(x, n, Side::Off).values;
  return row;
}

}  // namespace whrh
