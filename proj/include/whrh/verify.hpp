#pragma once

// Self-test suites shared by the CLI and the test programs. Oracles use Boost
// adaptive quadrature, independent of the recurrences in cauchy.hpp.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <iomanip>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "whrh/cauchy.hpp"
#include "whrh/chebyshev.hpp"
#include "whrh/mappings.hpp"

namespace whrh::verify {

struct SuiteResult {
  std::string name;
  bool passed = false;
  double worst = 0.0;  ///< largest deviation seen
  double tolerance = 0.0;
  std::string detail;
};

/// Integrates a complex function over [a, b] with adaptive Gauss-Kronrod.
template <class F>
cplx integrate(F&& f, double a, double b, double tol = 1e-13) {
  using boost::math::quadrature::gauss_kronrod;
  const double re = gauss_kronrod<double, 61>::integrate([&](double t) { return f(t).real(); }, a, b, 20, tol);
  const double im = gauss_kronrod<double, 61>::integrate([&](double t) { return f(t).imag(); }, a, b, 20, tol);
  return {re, im};
}

/// (1/2 pi i) int_{-1}^{1} T_k(t)/(t - z) dt for z off [-1, 1], by quadrature.
inline cplx cauchy_basis_quadrature(std::size_t k, cplx z) {
  const auto f = [&](double t) { return std::cos(static_cast<double>(k) * std::acos(t)) / (cplx{t, 0.0} - z); };
  return integrate(f, -1.0, 1.0) / cplx{0.0, 2.0 * std::numbers::pi};
}

/// Transform over the real line of the density sum_k u_k T_k(M^{-1}(.)), at alpha
/// off the line, via the substitution t = M(x) on the interval branch.
inline cplx mapped_transform_quadrature(const RationalMap& map, const ChebSeries& u, cplx alpha) {
  using boost::math::quadrature::tanh_sinh;
  tanh_sinh<double> ts;
  const auto part = [&](bool imag) {
    return ts.integrate(
        [&](double x) {
          const cplx v = eval_series(u, x) * map.derivative(x) / (map.forward(x) - alpha);
          return imag ? v.imag() : v.real();
        },
        -1.0, 1.0, 1e-13);
  };
  return cplx{part(false), part(true)} / cplx{0.0, 2.0 * std::numbers::pi};
}

inline SuiteResult plemelj_suite(double perturb = 0.0) {
  SuiteResult r{"plemelj", true, 0.0, 1e-13, ""};
  for (const RationalMap& map : {RationalMap::two_to_one(), RationalMap::four_to_one()}) {
    for (std::size_t n : {33u, 129u}) {
      CauchyPair cp = assemble_cauchy(map, n);
      if (perturb != 0.0) cp.c_plus(n / 2, n / 3) += perturb;
      const auto ni = static_cast<Eigen::Index>(n);
      const Eigen::MatrixXcd d = cp.c_plus - cp.c_minus - Eigen::MatrixXcd::Identity(ni, ni);
      r.worst = std::max(r.worst, d.middleRows(1, ni - 2).cwiseAbs().maxCoeff());
    }
  }
  r.passed = r.worst <= r.tolerance;
  return r;
}

/// Interval-branch roundtrips at random points and semicircle preimages on |x| = 1.
inline SuiteResult mapping_suite(std::size_t samples = 1000) {
  SuiteResult r{"mapping-roundtrip", true, 0.0, 1e-12, ""};
  std::mt19937_64 rng(20180901);
  std::uniform_real_distribution<double> ux(-0.999, 0.999);
  std::uniform_real_distribution<double> uim(-0.5, 0.5);
  for (const RationalMap& map : {RationalMap::two_to_one(), RationalMap::four_to_one()}) {
    for (std::size_t s = 0; s < samples; ++s) {
      const double x = ux(rng);
      if (x == 0.0) continue;
      const cplx a = map.forward(x);
      double best = 1e300;
      for (const Preimage& p : map.preimages_general(a)) {
        if (p.point.infinite) continue;
        const cplx back = map.forward(p.point.value);
        r.worst = std::max(r.worst, std::abs(back - a) / std::max(1.0, std::abs(a)));
        if (p.tag == ContourTag::Interval) best = std::abs(p.point.value - x);
        if (p.tag == ContourTag::UpperSemicircle || p.tag == ContourTag::LowerSemicircle)
          r.worst = std::max(r.worst, std::abs(std::abs(p.point.value) - 1.0));
      }
      r.worst = std::max(r.worst, best);
      // complex alpha: every root maps back
      const cplx ac = a + cplx{0.0, uim(rng)};
      if (ac.imag() == 0.0) continue;
      for (const cplx t : map.roots(ac))
        r.worst = std::max(r.worst, std::abs(map.forward(t) - ac) / std::max(1.0, std::abs(ac)));
    }
  }
  r.passed = r.worst <= r.tolerance;
  return r;
}

/// Basis rows against quadrature, the anchor C T_0(i) = 1/4, and the mapped
/// transform against quadrature on the real line.
inline SuiteResult cauchy_oracle_suite() {
  SuiteResult r{"cauchy-oracle", true, 0.0, 1e-9, ""};
  const cplx anchor = cauchy_basis_row(cplx{0.0, 1.0}, 1, Side::Off).values(0);
  const double anchor_err = std::abs(anchor - 0.25);
  const std::vector<cplx> zs = {{0.0, 1.0}, {0.3, -0.2}, {2.5, 0.1}, {-1.5, -0.7}, {0.9, 0.01}};
  double row_err = 0.0;
  for (const cplx z : zs) {
    const Eigen::RowVectorXcd row = cauchy_basis_row(z, 24, Side::Off).values;
    for (std::size_t k = 0; k < 24; k += 3)
      row_err = std::max(row_err, std::abs(row(static_cast<Eigen::Index>(k)) - cauchy_basis_quadrature(k, z)));
  }
  double mapped_err = 0.0;
  for (const RationalMap& map : {RationalMap::two_to_one(), RationalMap::four_to_one()}) {
    const std::size_t n = 17;
    // density vanishing at the interval ends
    ChebSeries u{Eigen::VectorXcd::Zero(n)};
    u.coeffs(0) = cplx{0.5, 0.2};
    u.coeffs(2) = cplx{-0.5, -0.2};
    u.coeffs(1) = cplx{0.3, 0.0};
    u.coeffs(3) = cplx{-0.3, 0.0};
    for (const cplx a : {cplx{0.4, 0.8}, cplx{-2.0, -0.5}, cplx{1.0, 3.0}}) {
      const cplx num = mapped_transform_row(map, a, n) * u.coeffs;
      mapped_err = std::max(mapped_err, std::abs(num - mapped_transform_quadrature(map, u, a)));
    }
  }
  r.worst = std::max({anchor_err, row_err, mapped_err});
  r.passed = anchor_err <= 1e-12 && row_err <= 1e-9 && mapped_err <= 1e-9;
  std::ostringstream msg;
  msg << std::scientific << std::setprecision(2) << "anchor " << anchor_err << ", rows " << row_err << ", mapped "
      << mapped_err;
  r.detail = msg.str();
  return r;
}

inline SuiteResult quadrature_suite() {
  SuiteResult r{"clenshaw-curtis", true, 0.0, 1e-13, ""};
  for (std::size_t n : {9u, 33u, 129u}) {
    const ChebGrid g = chebyshev_points(n);
    const std::vector<double> w = clenshaw_curtis_weights(n);
    for (std::size_t k = 0; k < n; ++k) {
      double s = 0.0;
      for (std::size_t q = 0; q < n; ++q) s += w[q] * std::cos(static_cast<double>(k) * std::acos(g[q]));
      r.worst = std::max(r.worst, std::abs(s - chebyshev_moment(k)));
    }
  }
  r.passed = r.worst <= r.tolerance;
  return r;
}

inline std::vector<SuiteResult> run_all(double plemelj_perturbation = 0.0) {
  return {plemelj_suite(plemelj_perturbation), mapping_suite(), cauchy_oracle_suite(), quadrature_suite()};
}

}  // namespace whrh::verify
