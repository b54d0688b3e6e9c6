#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "whrh/cauchy.hpp"
#include "whrh/chebyshev.hpp"
#include "whrh/mappings.hpp"
#include "whrh/verify.hpp"

using namespace whrh;
using std::numbers::pi;

namespace {

const cplx I{0.0, 1.0};

Eigen::VectorXcd sample(const ChebGrid& g, auto&& f) {
  Eigen::VectorXcd v(static_cast<Eigen::Index>(g.size()));
  for (std::size_t q = 0; q < g.size(); ++q) v(static_cast<Eigen::Index>(q)) = f(g[q]);
  return v;
}

// (1/2 pi i) PV int_{-1}^{1} g(t)/(t - x) dt + g(x)/2, by subtracting g(x) and
// integrating the smooth remainder.
cplx plus_value_quadrature(auto&& g, double x) {
  const auto smooth = [&](double t) -> cplx {
    if (t == x) return 0.0;
    return (g(t) - g(x)) / (t - x);
  };
  const cplx pv = verify::integrate(smooth, -1.0, x) + verify::integrate(smooth, x, 1.0) +
                  g(x) * std::log((1.0 - x) / (1.0 + x));
  return pv / (2.0 * pi * I) + 0.5 * g(x);
}

// (M(x) - M(y)) / (x - y) without cancellation
double map_divided_difference(const RationalMap& map, double x, double y) {
  const double qx = 1 - x * x, qy = 1 - y * y;
  if (map.degree() == 2) return (1 + x * y) / (qx * qy);
  return (1 - x * y) * (x * x * y * y + x * x + 4 * x * y + y * y + 1) / (qx * qx * qy * qy);
}

}  // namespace

// ---- chebyshev

TEST(Chebyshev, PointsSmallN) {
  EXPECT_THROW(chebyshev_points(1), std::invalid_argument);
  const ChebGrid g2 = chebyshev_points(2);
  EXPECT_EQ(g2.x, (std::vector<double>{-1.0, 1.0}));
  const ChebGrid g3 = chebyshev_points(3);
  EXPECT_EQ(g3.x, (std::vector<double>{-1.0, 0.0, 1.0}));
  const ChebGrid g5 = chebyshev_points(5);
  const double r = std::sqrt(2.0) / 2;
  const std::vector<double> want{-1.0, -r, 0.0, r, 1.0};
  for (std::size_t q = 0; q < 5; ++q) EXPECT_NEAR(g5[q], want[q], 1e-15);
}

TEST(Chebyshev, PointsMatchCosinesAndAreAntisymmetric) {
  for (std::size_t n : {4u, 17u, 128u, 513u}) {
    const ChebGrid g = chebyshev_points(n);
    for (std::size_t q = 0; q < n; ++q) {
      EXPECT_NEAR(g[q], -std::cos(pi * static_cast<double>(q) / static_cast<double>(n - 1)), 1e-15);
      EXPECT_EQ(g[q], -g[n - 1 - q]);
      if (q > 0) EXPECT_LT(g[q - 1], g[q]);
    }
  }
}

TEST(Chebyshev, BasisReproduction) {
  const std::size_t n = 9;
  const ChebGrid g = chebyshev_points(n);
  const auto one = values_to_coeffs(sample(g, [](double) { return cplx{1.0}; }));
  const auto lin = values_to_coeffs(sample(g, [](double x) { return cplx{x}; }));
  const auto t2 = values_to_coeffs(sample(g, [](double x) { return cplx{2 * x * x - 1}; }));
  for (Eigen::Index k = 0; k < 9; ++k) {
    EXPECT_NEAR(std::abs(one.coeffs(k) - (k == 0 ? 1.0 : 0.0)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(lin.coeffs(k) - (k == 1 ? 1.0 : 0.0)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(t2.coeffs(k) - (k == 2 ? 1.0 : 0.0)), 0.0, 1e-15);
  }
  EXPECT_THROW((void)values_to_coeffs(Eigen::VectorXcd::Ones(4), chebyshev_points(5)), std::invalid_argument);
}

TEST(Chebyshev, RoundTripRandomComplex) {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> nd;
  for (std::size_t n : {2u, 3u, 16u, 65u, 257u, 513u}) {
    Eigen::VectorXcd v(static_cast<Eigen::Index>(n));
    for (auto& e : v) e = {nd(rng), nd(rng)};
    const ChebSeries s = values_to_coeffs(v);
    const ChebGrid g = chebyshev_points(n);
    const double scale = v.cwiseAbs().maxCoeff();
    const Eigen::VectorXcd back = inverse_transform_matrix(n).cast<cplx>() * s.coeffs;
    EXPECT_LE((back - v).cwiseAbs().maxCoeff(), 1e-13 * scale);
    // the stored nodes are rounded; near +-1 the interpolant moves by ~n^2 per unit x
    const double nd2 = static_cast<double>(n * n);
    for (std::size_t q = 0; q < n; ++q)
      EXPECT_LE(std::abs(eval_series(s, g[q]) - v(static_cast<Eigen::Index>(q))), 1e-13 * scale * std::max(1.0, nd2 * 1e-4));
    const Eigen::MatrixXd prod = transform_matrix(n) * inverse_transform_matrix(n);
    EXPECT_LE((prod - Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n)))
                  .cwiseAbs()
                  .maxCoeff(),
              1e-13);
  }
}

TEST(Chebyshev, EvalSeries) {
  ChebSeries s{Eigen::VectorXcd(4)};
  s.coeffs << 1.0, cplx{2.0, -1.0}, 0.5, -3.0;
  EXPECT_NEAR(std::abs(eval_series(s, 1.0) - s.coeffs.sum()), 0.0, 1e-15);
  ChebSeries t1{Eigen::VectorXcd(2)};
  t1.coeffs << 0.0, 1.0;
  EXPECT_NEAR(eval_series(t1, 0.3).real(), 0.3, 1e-16);
  ChebSeries t2{Eigen::VectorXcd(3)};
  t2.coeffs << 0.0, 0.0, 1.0;
  EXPECT_NEAR(eval_series(t2, 0.5).real(), -0.5, 1e-16);
  // complex argument against the recurrence row
  const cplx z{0.3, 1.7};
  EXPECT_NEAR(std::abs(eval_series(s, z) - (chebyshev_row(z, 4) * s.coeffs).value()), 0.0, 1e-13);
}

TEST(Chebyshev, ClenshawCurtisWeights) {
  EXPECT_THROW(clenshaw_curtis_weights(1), std::invalid_argument);
  const auto w3 = clenshaw_curtis_weights(3);
  EXPECT_NEAR(w3[0], 1.0 / 3, 1e-15);
  EXPECT_NEAR(w3[1], 4.0 / 3, 1e-15);
  EXPECT_NEAR(w3[2], 1.0 / 3, 1e-15);
  EXPECT_NEAR(w3[0] + w3[2], 2.0 / 3, 1e-15);  // x^2 at +-1 only
  for (std::size_t n : {2u, 3u, 8u, 33u, 129u, 513u}) {
    const auto w = clenshaw_curtis_weights(n);
    double sum = 0;
    for (std::size_t q = 0; q < n; ++q) {
      EXPECT_GT(w[q], 0.0);
      EXPECT_EQ(w[q], w[n - 1 - q]);
      sum += w[q];
    }
    EXPECT_NEAR(sum, 2.0, 1e-13);
  }
}

TEST(Chebyshev, ClenshawCurtisExactOnMoments) {
  for (std::size_t n : {5u, 9u, 33u, 129u, 257u}) {
    const ChebGrid g = chebyshev_points(n);
    const auto w = clenshaw_curtis_weights(n);
    for (std::size_t k = 0; k < n; ++k) {
      double s = 0;
      for (std::size_t q = 0; q < n; ++q) s += w[q] * std::cos(static_cast<double>(k) * std::acos(g[q]));
      const double kk = static_cast<double>(k);
      const double want = k == 1 ? 0.0 : (1.0 + std::pow(-1.0, kk)) / (1.0 - kk * kk);
      EXPECT_NEAR(s, want, 1e-13) << "n=" << n << " k=" << k;
    }
  }
}

// ---- mappings

TEST(Mappings, ForwardAndDerivative) {
  const auto two = RationalMap::two_to_one();
  const auto four = RationalMap::four_to_one();
  EXPECT_NEAR(two.forward(0.5).real(), 2.0 / 3, 1e-15);
  EXPECT_NEAR(four.forward(0.5).real(), 10.0 / 9, 1e-15);
  EXPECT_EQ(two.forward(0.0), cplx{0.0});
  EXPECT_EQ(four.forward(0.0), cplx{0.0});
  EXPECT_NEAR(two.derivative(0.0).real(), 1.0, 1e-16);
  EXPECT_NEAR(four.derivative(0.0).real(), 1.0, 1e-16);
  EXPECT_THROW((void)two.forward(1.0), MapPoleError);
  EXPECT_THROW((void)four.derivative(-1.0), MapPoleError);
  for (double x : {0.1, 0.45, 0.9}) {
    EXPECT_EQ(four.derivative(x), four.derivative(-x));
    // central difference
    const double h = 1e-6;
    for (const auto& m : {two, four}) {
      const cplx fd = (m.forward(x + h) - m.forward(x - h)) / (2 * h);
      EXPECT_NEAR(std::abs(fd - m.derivative(x)) / std::abs(m.derivative(x)), 0.0, 1e-8);
    }
  }
}

TEST(Mappings, EndpointAsymptotics) {
  for (int k = 2; k <= 6; ++k) {
    const double x = 1.0 - std::pow(10.0, -k);
    const double d = 1.0 - x;
    EXPECT_NEAR(d * RationalMap::two_to_one().forward(x).real(), 0.5, 2 * d);
    EXPECT_NEAR(d * d * RationalMap::four_to_one().forward(x).real(), 0.5, 2 * d);
  }
}

TEST(Mappings, BranchesAndOrientation) {
  const auto b2 = RationalMap::two_to_one().branches();
  ASSERT_EQ(b2.size(), 2u);
  EXPECT_EQ(b2[1].tag, ContourTag::RealExterior);
  const auto b4 = RationalMap::four_to_one().branches();
  ASSERT_EQ(b4.size(), 4u);
  int intervals = 0;
  for (const auto& b : b4) intervals += b.tag == ContourTag::Interval;
  EXPECT_EQ(intervals, 1);
  EXPECT_EQ(b4[1].endpoint_rows, std::make_pair(EndpointRow::Left, EndpointRow::Right));
  EXPECT_EQ(b4[2].endpoint_rows, std::make_pair(EndpointRow::Right, EndpointRow::Left));
  EXPECT_EQ(b4[3].endpoint_rows, std::make_pair(EndpointRow::Right, EndpointRow::Left));
}

TEST(Mappings, PreimagesAtCollocation) {
  const auto p4 = RationalMap::four_to_one().preimages_at_collocation(0.5);
  ASSERT_EQ(p4.size(), 4u);
  const std::vector<cplx> want{0.5, 2.0, {-0.8, 0.6}, {-0.8, -0.6}};
  const std::vector<ContourTag> tags{ContourTag::Interval, ContourTag::RealExterior, ContourTag::UpperSemicircle,
                                     ContourTag::LowerSemicircle};
  for (std::size_t j = 0; j < 4; ++j) {
    EXPECT_EQ(p4[j].tag, tags[j]);
    EXPECT_NEAR(std::abs(p4[j].point.value - want[j]), 0.0, 1e-15);
  }
  const auto p2 = RationalMap::two_to_one().preimages_at_collocation(0.5);
  EXPECT_NEAR(std::abs(p2[1].point.value - cplx{-2.0}), 0.0, 1e-15);
  const auto z = RationalMap::four_to_one().preimages_at_collocation(0.0);
  EXPECT_TRUE(z[1].point.infinite);
  EXPECT_NEAR(std::abs(z[2].point.value - I), 0.0, 1e-16);
  EXPECT_NEAR(std::abs(z[3].point.value + I), 0.0, 1e-16);
}

TEST(Mappings, PreimagesGeneralRealAlpha) {
  const auto four = RationalMap::four_to_one();
  const auto gen = four.preimages_general(10.0 / 9);
  const auto col = four.preimages_at_collocation(0.5);
  ASSERT_EQ(gen.size(), 4u);
  for (const auto& c : col) {
    bool found = false;
    for (const auto& g : gen)
      if (g.tag == c.tag && std::abs(g.point.value - c.point.value) < 1e-12) found = true;
    EXPECT_TRUE(found) << to_string(c.tag);
  }
  const auto two = RationalMap::two_to_one().preimages_general(2.0 / 3);
  for (const auto& g : two) {
    if (g.tag == ContourTag::Interval) EXPECT_NEAR(std::abs(g.point.value - 0.5), 0.0, 1e-14);
    if (g.tag == ContourTag::RealExterior) EXPECT_NEAR(std::abs(g.point.value + 2.0), 0.0, 1e-14);
  }
}

TEST(Mappings, RootsSatisfyPolynomial) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-5, 5);
  for (const auto& m : {RationalMap::two_to_one(), RationalMap::four_to_one()}) {
    for (int s = 0; s < 200; ++s) {
      const cplx a{u(rng), u(rng)};
      const auto coeffs = m.preimage_polynomial(a);
      const auto rs = m.roots(a);
      ASSERT_EQ(rs.size(), m.degree());
      // Vieta: product of roots = (-1)^d c_0 / c_d
      cplx prod = 1.0;
      for (const cplx r : rs) prod *= r;
      const double sign = m.degree() % 2 == 0 ? 1.0 : -1.0;
      EXPECT_NEAR(std::abs(prod - sign * coeffs.front() / coeffs.back()), 0.0, 1e-11);
      for (const cplx r : rs) EXPECT_NEAR(std::abs(m.forward(r) - a) / std::abs(a), 0.0, 1e-11);
    }
  }
}

TEST(Mappings, RoundTripAndSemicircleModulus) {
  const auto r = verify::mapping_suite(1000);
  EXPECT_TRUE(r.passed) << r.worst;
  EXPECT_LE(r.worst, 1e-12);
}

TEST(Mappings, ComplexAlphaTagsFollowContinuation) {
  const auto four = RationalMap::four_to_one();
  // slightly above the real image of x = 0.5: each tagged root stays near its real-axis counterpart
  const auto gen = four.preimages_general(cplx{10.0 / 9, 1e-4});
  const auto col = four.preimages_at_collocation(0.5);
  for (const auto& c : col)
    for (const auto& g : gen)
      if (g.tag == c.tag) EXPECT_LT(std::abs(g.point.value - c.point.value), 1e-3) << to_string(c.tag);
}

// ---- cauchy

TEST(Cauchy, JoukowskiInverse) {
  EXPECT_NEAR(std::abs(joukowski_inverse(-2.0) - cplx{-2.0 + std::sqrt(3.0)}), 0.0, 1e-15);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-4, 4);
  for (int s = 0; s < 500; ++s) {
    const cplx w{u(rng), u(rng)};
    if (std::abs(w.imag()) < 1e-3) continue;
    EXPECT_LT(std::abs(joukowski_inverse(w)), 1.0);
  }
}

TEST(Cauchy, BasisRowAnchorsAndErrors) {
  EXPECT_NEAR(std::abs(cauchy_basis_row(I, 4, Side::Off).values(0) - 0.25), 0.0, 1e-15);
  EXPECT_THROW((void)cauchy_basis_row(1.0, 4, Side::Off), std::domain_error);
  EXPECT_THROW((void)cauchy_basis_row(-1.0, 4, Side::Plus), std::domain_error);
  EXPECT_THROW((void)cauchy_basis_row(0.5, 4, Side::Off), std::domain_error);
  EXPECT_THROW((void)cauchy_basis_row(cplx{0.5, 0.1}, 4, Side::Plus), std::domain_error);
  for (double x : {-0.9, 0.0, 0.4}) {
    const auto p = cauchy_basis_row(x, 6, Side::Plus).values;
    const auto m = cauchy_basis_row(x, 6, Side::Minus).values;
    for (Eigen::Index k = 0; k < 6; ++k)
      EXPECT_NEAR(std::abs(p(k) - m(k) - std::cos(static_cast<double>(k) * std::acos(x))), 0.0, 1e-15);
  }
}

TEST(Cauchy, BasisRowLargeZ) {
  const cplx z{3e5, 2e5};
  const auto row = cauchy_basis_row(z, 8, Side::Off).values;
  for (std::size_t k = 0; k < 8; ++k) {
    const cplx lead = -chebyshev_moment(k) / (2.0 * pi * I * z);
    if (chebyshev_moment(k) == 0.0) EXPECT_LT(std::abs(row(static_cast<Eigen::Index>(k))), 1e-8);
    else EXPECT_NEAR(std::abs(row(static_cast<Eigen::Index>(k)) / lead - 1.0), 0.0, 1e-4);
  }
}

TEST(Cauchy, BasisRowMatchesQuadrature) {
  const std::vector<cplx> zs{{0.2, 0.5}, {-0.7, -0.05}, {1.3, 0.0}, {-3.0, 2.0}, {0.99, 0.02}, {0.0, -4.0}};
  for (const cplx z : zs) {
    const auto row = cauchy_basis_row(z, 40, Side::Off).values;
    for (std::size_t k = 0; k < 40; k += 7)
      EXPECT_NEAR(std::abs(row(static_cast<Eigen::Index>(k)) - verify::cauchy_basis_quadrature(k, z)), 0.0, 1e-11)
          << z << " k=" << k;
  }
}

TEST(Cauchy, RecurrenceStableNearInterval) {
  // |T_+^{-1}(z)| = 0.99 with z = (zeta + 1/zeta)/2
  const cplx zeta = std::polar(0.99, 1.1);
  const cplx z = 0.5 * (zeta + 1.0 / zeta);
  ASSERT_NEAR(std::abs(joukowski_inverse(z)), 0.99, 1e-14);
  const auto row = cauchy_basis_row(z, 201, Side::Off).values;
  // oscillatory integrand: t = cos theta, fixed Gauss-Kronrod on panels shorter than a period
  using boost::math::quadrature::gauss_kronrod;
  const auto part = [&](bool im) {
    const int panels = 400;
    double acc = 0.0;
    for (int j = 0; j < panels; ++j)
      acc += gauss_kronrod<double, 61>::integrate(
          [&](double th) {
            const cplx v = std::cos(200.0 * th) * std::sin(th) / (std::cos(th) - z);
            return im ? v.imag() : v.real();
          },
          pi * j / panels, pi * (j + 1) / panels, 0);
    return acc;
  };
  const cplx want = cplx{part(false), part(true)} / (2.0 * pi * I);
  EXPECT_NEAR(std::abs(row(200) - want), 0.0, 1e-9);
}

TEST(Cauchy, OffIntervalEntriesDecayAlgebraically) {
  // endpoint contributions make S_k fall like 1/k^2, not like |zeta|^k
  const cplx z{0.3, 0.8};
  const auto row = cauchy_basis_row(z, 400, Side::Off).values;
  const double r100 = std::abs(row(100)), r200 = std::abs(row(200)), r398 = std::abs(row(398));
  EXPECT_NEAR(r100 / r200, 4.0, 0.2);
  EXPECT_NEAR(r200 / r398, std::pow(398.0 / 200.0, 2), 0.2);
  // subtracting the endpoint-dominated part leaves a geometrically decaying tail
  const double rho = std::abs(joukowski_inverse(z));
  ASSERT_LT(std::pow(rho, 60), 1e-8);
}

TEST(Cauchy, IntervalPlusMatrixOracle) {
  const std::size_t n = 33;
  const Eigen::MatrixXcd C1 = interval_plus_matrix(n);
  const ChebGrid g = chebyshev_points(n);
  // g(t) = t at x = 0 equals 1/(pi i)
  const Eigen::VectorXcd lin = sample(g, [](double x) { return cplx{x}; });
  EXPECT_NEAR(std::abs((C1.row(16) * lin)(0) - 1.0 / (pi * I)), 0.0, 1e-14);
  const auto f = [](double t) { return std::exp(t) * cplx{std::cos(2 * t), t * t}; };
  const Eigen::VectorXcd v = sample(g, f);
  for (std::size_t p : {3u, 10u, 16u, 29u})
    EXPECT_NEAR(std::abs((C1.row(static_cast<Eigen::Index>(p)) * v)(0) - plus_value_quadrature(f, g[p])), 0.0, 1e-11);
  const Eigen::MatrixXcd Cm = interval_boundary_matrix(n, Side::Minus);
  const Eigen::VectorXcd ones = Eigen::VectorXcd::Ones(static_cast<Eigen::Index>(n));
  for (Eigen::Index p = 1; p + 1 < static_cast<Eigen::Index>(n); ++p)
    EXPECT_NEAR(std::abs(((C1.row(p) - Cm.row(p)) * ones)(0) - 1.0), 0.0, 1e-13);
}

TEST(Cauchy, EndpointRowsFiniteAndCancelDivergence) {
  for (std::size_t n : {2u, 65u, 513u}) {
    const EndpointRows mu = endpoint_rows(n);
    EXPECT_TRUE(mu.mu_left.allFinite());
    EXPECT_TRUE(mu.mu_right.allFinite());
  }
  // a constant density: the interval part alone grows like log n at the first
  // interior node, the full operator stays at 1/2 on every row
  double prev = 0.0;
  for (std::size_t n : {65u, 129u, 257u, 513u}) {
    const Eigen::VectorXcd ones = Eigen::VectorXcd::Ones(static_cast<Eigen::Index>(n));
    const double part = std::abs((interval_plus_matrix(n) * ones)(1));
    EXPECT_GT(part, prev + 0.15);
    prev = part;
    for (const auto& m : {RationalMap::two_to_one(), RationalMap::four_to_one()}) {
      const Eigen::VectorXcd v = assemble_cauchy(m, n).c_plus * ones;
      EXPECT_LE((v.segment(1, static_cast<Eigen::Index>(n) - 2).array() - 0.5).abs().maxCoeff(), 1e-11);
    }
  }
  const std::size_t n = 9;
  // subtraction term applied to samples of T_0 is a constant column
  const Eigen::RowVectorXcd sub = decay_subtraction(RationalMap::two_to_one(), n);
  const Eigen::MatrixXcd S = Eigen::VectorXcd::Ones(n) * (sub * transform_matrix(n).cast<cplx>());
  const Eigen::VectorXcd col = S * Eigen::VectorXcd::Ones(n);
  EXPECT_NEAR((col.array() - col(0)).abs().maxCoeff(), 0.0, 1e-15);
}

TEST(Cauchy, ExteriorBlock) {
  const std::size_t n = 9;
  const ChebGrid g = chebyshev_points(n);
  std::vector<ExtendedPoint> zs(n, ExtendedPoint::at_infinity());
  for (std::size_t p = 1; p + 1 < n; ++p)
    zs[p] = g[p] == 0.0 ? ExtendedPoint::at_infinity() : ExtendedPoint{{-1.0 / g[p], 0.0}, false};
  const Eigen::MatrixXcd blk = exterior_block(zs, {EndpointRow::Right, EndpointRow::Left}, n);
  EXPECT_TRUE(blk.allFinite());
  // interior row p is the basis row at the preimage
  const Eigen::RowVectorXcd want = cauchy_basis_row(-1.0 / g[2], n, Side::Off).values * transform_matrix(n).cast<cplx>();
  EXPECT_NEAR((blk.row(2) - want).cwiseAbs().maxCoeff(), 0.0, 1e-14);
  zs[3] = ExtendedPoint{{0.2, 0.0}, false};
  EXPECT_THROW((void)exterior_block(zs, {EndpointRow::Right, EndpointRow::Left}, n), std::domain_error);
}

TEST(Cauchy, PlemeljIdentity) {
  for (const auto& m : {RationalMap::two_to_one(), RationalMap::four_to_one()})
    for (std::size_t n : {33u, 129u}) {
      const CauchyPair cp = assemble_cauchy(m, n);
      const auto ni = static_cast<Eigen::Index>(n);
      EXPECT_LE((cp.c_plus - cp.c_minus - Eigen::MatrixXcd::Identity(ni, ni)).middleRows(1, ni - 2).cwiseAbs().maxCoeff(),
                1e-13);
      EXPECT_TRUE(cp.c_plus.allFinite());
      EXPECT_TRUE(cp.c_minus.allFinite());
    }
  EXPECT_THROW((void)assemble_cauchy(RationalMap::four_to_one(), 3), std::invalid_argument);
}

TEST(Cauchy, AssembledRowsMatchQuadratureOverMappedContour) {
  // density (1 - x^2) e^x in the mapped variable; C+ at alpha_p against a
  // principal-value quadrature over the real line via t = M(x) plus half the jump
  for (const auto& map : {RationalMap::two_to_one(), RationalMap::four_to_one()}) {
    for (std::size_t n : {33u, 65u, 129u}) {
      const ChebGrid g = chebyshev_points(n);
      const CauchyPair cp = assemble_cauchy(map, n);
      const auto dens = [](double x) { return cplx{(1 - x * x) * std::exp(x), 0.0}; };
      const Eigen::VectorXcd v = sample(g, dens);
      for (std::size_t p : {n / 5, n / 2, (4 * n) / 5}) {
        const double xp = g[p];
        // in x: (1/2 pi i) PV int f(x) M'(x)/(M(x) - M(xp)) dx, singular only at x = xp
        const auto kernel = [&](double x) -> cplx {
          if (x == xp) return 0.0;
          const double r = map_divided_difference(map, x, xp);
          return (dens(x) * map.derivative(x) / r - dens(xp)) / (x - xp);
        };
        const cplx pv = verify::integrate(kernel, -1.0, xp, 1e-12) + verify::integrate(kernel, xp, 1.0, 1e-12) +
                        dens(xp) * std::log((1.0 - xp) / (1.0 + xp));
        const cplx want = pv / (2.0 * pi * I) + 0.5 * dens(xp);
        const cplx got = (cp.c_plus.row(static_cast<Eigen::Index>(p)) * v)(0);
        EXPECT_NEAR(std::abs(got - want), 0.0, 1e-9) << to_string(map.kind()) << " n=" << n << " p=" << p;
      }
    }
  }
}

TEST(Cauchy, MappedTransformRowMatchesQuadrature) {
  const auto r = verify::cauchy_oracle_suite();
  EXPECT_TRUE(r.passed) << r.detail;
  EXPECT_THROW((void)mapped_transform_row(RationalMap::four_to_one(), 2.0, 9), std::domain_error);
}
