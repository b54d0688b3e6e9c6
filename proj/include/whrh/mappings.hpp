#pragma once

// Rational maps from [-1, 1] onto the real line with several inverse branches.
//
//   TwoToOne:  M(x) = x / (1 - x^2)              branches x, -1/x
//   FourToOne: M(x) = (x + x^3) / (1 - x^2)^2    branches x, 1/x and the two
//              unit-semicircle roots of t^2 + c t + 1 = 0, c = x + 1/x - 1/M(x)
//
// Preimages of infinity are x = +-1; they are carried as flagged points, never
// as large floating values.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "whrh/chebyshev.hpp"

namespace whrh {

enum class MapKind { TwoToOne, FourToOne };

enum class ContourTag { Interval, RealExterior, UpperSemicircle, LowerSemicircle };

/// Which limiting Cauchy row (mu^L at x = -1, mu^R at x = +1) a branch block uses.
enum class EndpointRow { Left, Right };

struct Branch {
  ContourTag tag;
  /// rows placed first (x_1 = -1) and last (x_n = +1) in the branch's Cauchy block
  std::pair<EndpointRow, EndpointRow> endpoint_rows;
};

/// A point of the extended complex plane.
struct ExtendedPoint {
  cplx value{0.0, 0.0};
  bool infinite = false;

  [[nodiscard]] static ExtendedPoint at_infinity() { return {{0.0, 0.0}, true}; }
};

struct Preimage {
  ContourTag tag;
  ExtendedPoint point;
};

class MapPoleError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class ClassificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

[[nodiscard]] inline std::string to_string(MapKind k) {
  return k == MapKind::TwoToOne ? "2to1" : "4to1";
}

[[nodiscard]] inline std::string to_string(ContourTag t) {
  switch (t) {
    case ContourTag::Interval: return "interval";
    case ContourTag::RealExterior: return "real-exterior";
    case ContourTag::UpperSemicircle: return "upper-semicircle";
    case ContourTag::LowerSemicircle: return "lower-semicircle";
  }
  return "?";
}

namespace detail {

/// Both roots of a t^2 + b t + c = 0 without cancellation.
inline std::array<cplx, 2> quadratic_roots(cplx a, cplx b, cplx c) {
  cplx disc = std::sqrt(b * b - 4.0 * a * c);
  if (std::real(std::conj(b) * disc) < 0.0) disc = -disc;
  const cplx q = -0.5 * (b + disc);
  if (q == cplx{0.0, 0.0}) return {cplx{0.0, 0.0}, cplx{0.0, 0.0}};
  return {q / a, c / q};
}

inline double distance_to_contour(ContourTag tag, cplx t) {
  const double re = t.real(), im = t.imag();
  switch (tag) {
    case ContourTag::Interval:
      if (std::abs(re) <= 1.0) return std::abs(im);
      return std::abs(t - cplx{re > 0 ? 1.0 : -1.0, 0.0});
    case ContourTag::RealExterior:
      if (std::abs(re) >= 1.0) return std::abs(im);
      return std::min(std::abs(t - 1.0), std::abs(t + 1.0));
    case ContourTag::UpperSemicircle:
      if (im >= 0.0) return std::abs(std::abs(t) - 1.0);
      return std::min(std::abs(t - 1.0), std::abs(t + 1.0));
    case ContourTag::LowerSemicircle:
      if (im <= 0.0) return std::abs(std::abs(t) - 1.0);
      return std::min(std::abs(t - 1.0), std::abs(t + 1.0));
  }
  return std::numeric_limits<double>::infinity();
}

}  // namespace detail

class RationalMap {
 public:
  explicit RationalMap(MapKind kind) : kind_(kind) {}

  [[nodiscard]] static RationalMap two_to_one() { return RationalMap(MapKind::TwoToOne); }
  [[nodiscard]] static RationalMap four_to_one() { return RationalMap(MapKind::FourToOne); }

  [[nodiscard]] MapKind kind() const noexcept { return kind_; }
  [[nodiscard]] std::size_t degree() const noexcept { return kind_ == MapKind::TwoToOne ? 2 : 4; }

  [[nodiscard]] std::vector<Branch> branches() const {
    using enum EndpointRow;
    if (kind_ == MapKind::TwoToOne) {
      return {{ContourTag::Interval, {Left, Right}}, {ContourTag::RealExterior, {Right, Left}}};
    }
    return {{ContourTag::Interval, {Left, Right}},
            {ContourTag::RealExterior, {Left, Right}},
            {ContourTag::UpperSemicircle, {Right, Left}},
            {ContourTag::LowerSemicircle, {Right, Left}}};
  }

  [[nodiscard]] cplx forward(cplx x) const {
    const cplx s = 1.0 - x * x;
    if (s == cplx{0.0, 0.0}) throw MapPoleError("map_forward: pole at x = +-1");
    if (kind_ == MapKind::TwoToOne) return x / s;
    return (x + x * x * x) / (s * s);
  }

  [[nodiscard]] cplx derivative(cplx x) const {
    const cplx x2 = x * x;
    const cplx s = 1.0 - x2;
    if (s == cplx{0.0, 0.0}) throw MapPoleError("map_derivative: pole at x = +-1");
    if (kind_ == MapKind::TwoToOne) return (1.0 + x2) / (s * s);
    return (1.0 + 6.0 * x2 + x2 * x2) / (s * s * s);
  }

  /// Coefficients (ascending powers) of numerator(t) - alpha * denominator(t).
  [[nodiscard]] std::vector<cplx> preimage_polynomial(cplx alpha) const {
    if (kind_ == MapKind::TwoToOne) return {-alpha, 1.0, alpha};
    return {-alpha, 1.0, 2.0 * alpha, 1.0, -alpha};
  }

  /// Tagged preimages of M(x_p) for an interior grid abscissa x_p.
  [[nodiscard]] std::vector<Preimage> preimages_at_collocation(double xp) const {
    if (!(xp > -1.0 && xp < 1.0))
      throw std::invalid_argument("preimages_at_collocation: x_p must lie in (-1, 1)");
    std::vector<Preimage> out;
    out.push_back({ContourTag::Interval, {{xp, 0.0}, false}});
    const ExtendedPoint ext = xp == 0.0 ? ExtendedPoint::at_infinity()
                                        : ExtendedPoint{{kind_ == MapKind::TwoToOne ? -1.0 / xp : 1.0 / xp, 0.0}, false};
    out.push_back({ContourTag::RealExterior, ext});
    if (kind_ == MapKind::FourToOne) {
      // roots of t^2 + c t + 1 with c = 4x/(1+x^2), written without cancellation
      const double d = 1.0 + xp * xp;
      const double re = -2.0 * xp / d;
      const double im = (1.0 - xp) * (1.0 + xp) / d;
      out.push_back({ContourTag::UpperSemicircle, {{re, im}, false}});
      out.push_back({ContourTag::LowerSemicircle, {{re, -im}, false}});
    }
    return out;
  }

  /// All d roots of M(x) = alpha, untagged.
  [[nodiscard]] std::vector<cplx> roots(cplx alpha) const {
    if (alpha == cplx{0.0, 0.0}) throw std::invalid_argument("preimages: alpha must be nonzero");
    if (kind_ == MapKind::TwoToOne) {
      const auto r = detail::quadratic_roots(alpha, 1.0, -alpha);
      return {r[0], r[1]};
    }
    // palindromic quartic: with u = t + 1/t it reduces to u^2 - u/alpha - 4 = 0
    const auto u = detail::quadratic_roots(1.0, -1.0 / alpha, -4.0);
    std::vector<cplx> out;
    for (const cplx ui : u) {
      // t^2 - u t + 1 = 0 whose discriminant u^2 - 4 equals u / alpha exactly
      cplx s = std::sqrt(ui / alpha);
      if (std::real(std::conj(ui) * s) < 0.0) s = -s;
      const cplx t1 = 0.5 * (ui + s);
      out.push_back(t1);
      out.push_back(1.0 / t1);
    }
    return out;
  }

  /// Tagged roots of M(x) = alpha. Real alpha is classified structurally and
  /// checked against contour membership; complex alpha inherits tags by
  /// continuation along the segment from a real reference point.
  [[nodiscard]] std::vector<Preimage> preimages_general(cplx alpha, double tol = 1e-8) const {
    if (alpha == cplx{0.0, 0.0}) throw std::invalid_argument("preimages_general: alpha must be nonzero");
    if (!std::isfinite(alpha.real()) || !std::isfinite(alpha.imag()))
      throw std::invalid_argument("preimages_general: alpha must be finite");
    if (alpha.imag() == 0.0) return classify_real(alpha.real(), tol);

    const double mag = std::abs(alpha);
    const double re_ref = std::abs(alpha.real()) >= 1e-3 * mag ? alpha.real() : 1e-3 * mag;
    std::vector<Preimage> cur = classify_real(re_ref, tol);
    const cplx a0{re_ref, 0.0};
    double s = 0.0, h = 0.05;
    while (s < 1.0) {
      const double s_next = std::min(1.0, s + h);
      const std::vector<cplx> next = roots(a0 + s_next * (alpha - a0));
      std::vector<Preimage> matched;
      if (match_roots(cur, next, matched)) {
        cur = std::move(matched);
        s = s_next;
        h = std::min(0.1, 1.5 * h);
      } else {
        h *= 0.5;
        if (h < 1e-10) throw ClassificationError("preimages_general: root continuation failed");
      }
    }
    return cur;
  }

 private:
  [[nodiscard]] std::vector<Preimage> classify_real(double a, double tol) const {
    std::vector<Preimage> out;
    if (kind_ == MapKind::TwoToOne) {
      const auto r = detail::quadratic_roots(a, 1.0, -a);
      const bool first_inside = std::abs(r[0]) <= std::abs(r[1]);
      out.push_back({ContourTag::Interval, {first_inside ? r[0] : r[1], false}});
      out.push_back({ContourTag::RealExterior, {first_inside ? r[1] : r[0], false}});
    } else {
      auto u = detail::quadratic_roots(1.0, cplx{-1.0 / a, 0.0}, -4.0);
      if (std::abs(u[0]) < std::abs(u[1])) std::swap(u[0], u[1]);
      // u[0] = x + 1/x gives the real pair, u[1] = -4/u[0] the unit-circle pair
      const auto pair_from = [a](cplx ui) {
        cplx s = std::sqrt(ui / a);
        if (std::real(std::conj(ui) * s) < 0.0) s = -s;
        const cplx t1 = 0.5 * (ui + s);
        return std::array<cplx, 2>{t1, 1.0 / t1};
      };
      const auto real_pair = pair_from(u[0]);
      const auto circ_pair = pair_from(u[1]);
      const bool first_inside = std::abs(real_pair[0]) <= std::abs(real_pair[1]);
      out.push_back({ContourTag::Interval, {first_inside ? real_pair[0] : real_pair[1], false}});
      out.push_back({ContourTag::RealExterior, {first_inside ? real_pair[1] : real_pair[0], false}});
      const bool first_upper = circ_pair[0].imag() >= circ_pair[1].imag();
      out.push_back({ContourTag::UpperSemicircle, {first_upper ? circ_pair[0] : circ_pair[1], false}});
      out.push_back({ContourTag::LowerSemicircle, {first_upper ? circ_pair[1] : circ_pair[0], false}});
    }
    for (const auto& p : out) {
      // membership is relative to the scale of the root
      const double scale = std::max(1.0, std::abs(p.point.value));
      if (detail::distance_to_contour(p.tag, p.point.value) > tol * scale)
        throw ClassificationError("preimages_general: root not on its " + to_string(p.tag) + " contour");
    }
    return out;
  }

  [[nodiscard]] static bool match_roots(const std::vector<Preimage>& prev, const std::vector<cplx>& next,
                                        std::vector<Preimage>& out) {
    const std::size_t d = prev.size();
    double min_sep = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = i + 1; j < d; ++j)
        min_sep = std::min(min_sep, std::abs(prev[i].point.value - prev[j].point.value));
    out.clear();
    std::vector<bool> used(d, false);
    for (const auto& p : prev) {
      std::size_t best = d;
      double best_dist = std::numeric_limits<double>::infinity();
      for (std::size_t j = 0; j < d; ++j) {
        const double dist = std::abs(next[j] - p.point.value);
        if (!used[j] && dist < best_dist) {
          best_dist = dist;
          best = j;
        }
      }
      if (best == d || best_dist > 0.25 * min_sep) return false;
      used[best] = true;
      out.push_back({p.tag, {next[best], false}});
    }
    return true;
  }

  MapKind kind_;
};

/// Collocation points, their images under the map and the rotated contour.
struct CollocationGrid {
  ChebGrid grid;
  std::vector<ExtendedPoint> alpha;          ///< M(x_q); endpoints flagged infinite
  std::vector<ExtendedPoint> alpha_rotated;  ///< alpha * exp(-i chi)
  std::vector<ExtendedPoint> dalpha_dx;      ///< M'(x_q); endpoints flagged infinite
  double chi = 0.0;

  [[nodiscard]] std::size_t size() const noexcept { return grid.size(); }
};

}  // namespace whrh
