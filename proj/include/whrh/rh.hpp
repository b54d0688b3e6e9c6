#pragma once

// Collocation solver for  A(a) Y+(a) + B(a) Y-(a) + C(a) = 0  on the rotated
// line R exp(-i chi), with Y = Cauchy transform of an m-component density Phi
// represented in a Chebyshev basis through a rational map.

#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "whrh/cauchy.hpp"
#include "whrh/chebyshev.hpp"
#include "whrh/mappings.hpp"

namespace whrh {

enum class HalfPlane { Above, Below };

enum class ProblemKind { Generic, Sommerfeld, SeniorMatrix, SeniorSum, SeniorDifference, Hurd };

/// A point that the rotated contour must keep on a fixed side.
struct Singularity {
  std::string name;
  cplx position;
  HalfPlane required_side;
};

struct ProblemInfo {
  std::string name;
  ProblemKind kind = ProblemKind::Generic;
  std::map<std::string, double> params;
  std::vector<std::string> plus_names;   ///< one per component
  std::vector<std::string> minus_names;  ///< one per component
  std::vector<Singularity> singularities;
  std::vector<std::string> warnings;
};

struct RHProblem {
  std::size_t m = 1;
  std::function<Eigen::MatrixXcd(cplx)> coeff_a;
  std::function<Eigen::MatrixXcd(cplx)> coeff_b;
  std::function<Eigen::VectorXcd(cplx)> rhs_c;
  double chi = std::numbers::pi / 4;
  RationalMap map = RationalMap::four_to_one();
  ProblemInfo info;
};

class RotationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SamplerError : public std::runtime_error {
 public:
  SamplerError(const std::string& what, cplx at) : std::runtime_error(what), alpha(at) {}
  cplx alpha;
};

class SingularSystemError : public std::runtime_error {
 public:
  SingularSystemError(const std::string& what, double cond) : std::runtime_error(what), condition(cond) {}
  double condition;
};

class ContourProximityError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct RHSolution {
  Eigen::MatrixXcd density;  ///< m x n samples of Phi at the grid
  std::vector<ChebSeries> series;
  CauchyPair cauchy;
  CollocationGrid grid;
  RHProblem problem;
  double residual = 0.0;   ///< max-norm residual of the dense solve
  double condition = 0.0;  ///< one-norm condition estimate

  [[nodiscard]] std::size_t n() const noexcept { return grid.size(); }
  [[nodiscard]] std::size_t m() const noexcept { return problem.m; }
};

struct BoundaryValues {
  Eigen::MatrixXcd plus;   ///< m x n
  Eigen::MatrixXcd minus;  ///< m x n
};

/// Values of the upper and lower functions at one point.
struct SectionalValues {
  Eigen::VectorXcd upper;
  Eigen::VectorXcd lower;
};

namespace detail {

inline double contour_coordinate(cplx alpha, double chi) {
  return (alpha * std::polar(1.0, chi)).imag();
}

inline double contour_tolerance(cplx alpha) { return 1e-10 * std::max(1.0, std::abs(alpha)); }

}  // namespace detail

[[nodiscard]] inline HalfPlane half_plane_side(cplx alpha, double chi) {
  const double s = detail::contour_coordinate(alpha, chi);
  if (std::abs(s) <= 1e-14 * std::max(1.0, std::abs(alpha)))
    throw ContourProximityError("half_plane_side: point lies on the rotated contour");
  return s > 0 ? HalfPlane::Above : HalfPlane::Below;
}

[[nodiscard]] inline CollocationGrid build_grid(const RationalMap& map, std::size_t n, double chi) {
  if (!(chi >= 0.0 && chi < std::numbers::pi / 2))
    throw std::invalid_argument("build_grid: chi must lie in [0, pi/2)");
  CollocationGrid g;
  g.grid = chebyshev_points(n);
  g.chi = chi;
  const cplx rot = std::polar(1.0, -chi);
  for (std::size_t q = 0; q < n; ++q) {
    if (q == 0 || q + 1 == n) {
      g.alpha.push_back(ExtendedPoint::at_infinity());
      g.alpha_rotated.push_back(ExtendedPoint::at_infinity());
      g.dalpha_dx.push_back(ExtendedPoint::at_infinity());
      continue;
    }
    const cplx a = map.forward(g.grid[q]);
    g.alpha.push_back({a, false});
    g.alpha_rotated.push_back({a * rot, false});
    g.dalpha_dx.push_back({map.derivative(g.grid[q]), false});
  }
  return g;
}

/// Checks that sweeping R onto R exp(-i chi) leaves every listed singularity on its side.
inline void check_rotation(const RHProblem& problem) {
  for (const Singularity& s : problem.info.singularities) {
    const double c = detail::contour_coordinate(s.position, problem.chi);
    const double tol = 1e-8 * std::max(1.0, std::abs(s.position));
    const bool ok = s.required_side == HalfPlane::Above ? c > tol : c < -tol;
    if (!ok) {
      std::ostringstream msg;
      msg << "rotation by chi = " << problem.chi << " crosses or touches singularity '" << s.name << "' at "
          << s.position;
      throw RotationError(msg.str());
    }
  }
}

[[nodiscard]] inline std::pair<Eigen::MatrixXcd, Eigen::VectorXcd> assemble_system(const RHProblem& problem,
                                                                                   const CollocationGrid& grid,
                                                                                   const CauchyPair& cauchy) {
  const std::size_t n = grid.size();
  const std::size_t m = problem.m;
  if (cauchy.n != n) throw std::invalid_argument("assemble_system: Cauchy pair built for a different n");
  if (cauchy.map.kind() != problem.map.kind())
    throw std::invalid_argument("assemble_system: Cauchy pair built for a different map");
  const auto ni = static_cast<Eigen::Index>(n);
  const auto mi = static_cast<Eigen::Index>(m);
  Eigen::MatrixXcd sys = Eigen::MatrixXcd::Zero(mi * ni, mi * ni);
  Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(mi * ni);

  for (std::size_t p = 1; p + 1 < n; ++p) {
    const cplx a = grid.alpha_rotated[p].value;
    const Eigen::MatrixXcd A = problem.coeff_a(a);
    const Eigen::MatrixXcd B = problem.coeff_b(a);
    const Eigen::VectorXcd C = problem.rhs_c(a);
    if (A.rows() != mi || A.cols() != mi || B.rows() != mi || B.cols() != mi || C.size() != mi)
      throw SamplerError("assemble_system: sampler returned a block of the wrong size", a);
    if (!A.allFinite() || !B.allFinite() || !C.allFinite())
      throw SamplerError("assemble_system: coefficient not finite at a collocation point", a);
    const auto pi = static_cast<Eigen::Index>(p);
    for (Eigen::Index i = 0; i < mi; ++i) {
      const Eigen::Index row = i * ni + pi;
      for (Eigen::Index j = 0; j < mi; ++j) {
        auto dst = sys.block(row, j * ni, 1, ni);
        if (A(i, j) != cplx{0.0, 0.0}) dst += A(i, j) * cauchy.c_plus.row(pi);
        if (B(i, j) != cplx{0.0, 0.0}) dst += B(i, j) * cauchy.c_minus.row(pi);
      }
      rhs(row) = -C(i);
    }
  }
  // decay closure: Phi_i(+-infinity) = 0
  for (Eigen::Index i = 0; i < mi; ++i) {
    sys(i * ni, i * ni) = 1.0;
    sys(i * ni + ni - 1, i * ni + ni - 1) = 1.0;
  }
  return {std::move(sys), std::move(rhs)};
}

/// Solves the problem with the supplied Cauchy pair (which must match the map and n).
[[nodiscard]] inline RHSolution solve_with(const RHProblem& problem, CauchyPair cauchy) {
  const std::size_t n = cauchy.n;
  if (n < 8) throw std::invalid_argument("solve: n must be at least 8");
  if (problem.m < 1) throw std::invalid_argument("solve: block size must be positive");
  check_rotation(problem);
  CollocationGrid grid = build_grid(problem.map, n, problem.chi);
  auto [sys, rhs] = assemble_system(problem, grid, cauchy);

  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(sys);
  // rcond() does not see an exactly zero pivot
  const bool zero_pivot = lu.matrixLU().diagonal().cwiseAbs().minCoeff() == 0.0;
  const double rcond = zero_pivot ? 0.0 : lu.rcond();
  const double cond = rcond > 0 ? 1.0 / rcond : std::numeric_limits<double>::infinity();
  if (!(cond <= 1e12)) {
    std::ostringstream msg;
    msg << "solve: collocation system is singular or ill-conditioned (condition estimate " << cond << ", n = " << n
        << ", problem '" << problem.info.name << "')";
    throw SingularSystemError(msg.str(), cond);
  }
  const Eigen::VectorXcd x = lu.solve(rhs);

  RHSolution sol{Eigen::MatrixXcd(static_cast<Eigen::Index>(problem.m), static_cast<Eigen::Index>(n)),
                 {},
                 std::move(cauchy),
                 std::move(grid),
                 problem,
                 (sys * x - rhs).lpNorm<Eigen::Infinity>(),
                 cond};
  for (std::size_t i = 0; i < problem.m; ++i) {
    sol.density.row(static_cast<Eigen::Index>(i)) =
        x.segment(static_cast<Eigen::Index>(i * n), static_cast<Eigen::Index>(n)).transpose();
    sol.series.push_back(values_to_coeffs(sol.density.row(static_cast<Eigen::Index>(i)).transpose()));
  }
  return sol;
}

[[nodiscard]] inline RHSolution solve(const RHProblem& problem, std::size_t n) {
  if (n < 8) throw std::invalid_argument("solve: n must be at least 8");
  check_rotation(problem);
  return solve_with(problem, assemble_cauchy(problem.map, n));
}

[[nodiscard]] inline BoundaryValues boundary_values(const RHSolution& sol) {
  BoundaryValues bv{sol.density * sol.cauchy.c_plus.transpose(), sol.density * sol.cauchy.c_minus.transpose()};
  const auto last = static_cast<Eigen::Index>(sol.n()) - 1;
  bv.plus.col(0).setZero();
  bv.plus.col(last).setZero();
  bv.minus.col(0).setZero();
  bv.minus.col(last).setZero();
  return bv;
}

/// max over interior collocation points of |A Y+ + B Y- + C|.
[[nodiscard]] inline double rh_defect(const RHSolution& sol) {
  const BoundaryValues bv = boundary_values(sol);
  double worst = 0.0;
  for (std::size_t p = 1; p + 1 < sol.n(); ++p) {
    const cplx a = sol.grid.alpha_rotated[p].value;
    const auto pi = static_cast<Eigen::Index>(p);
    const Eigen::VectorXcd r =
        sol.problem.coeff_a(a) * bv.plus.col(pi) + sol.problem.coeff_b(a) * bv.minus.col(pi) + sol.problem.rhs_c(a);
    worst = std::max(worst, r.lpNorm<Eigen::Infinity>());
  }
  return worst;
}

/// Cauchy transform of the density at a point off the rotated contour: the
/// upper function above it, the lower function below.
[[nodiscard]] inline Eigen::VectorXcd evaluate_offcontour(const RHSolution& sol, cplx alpha) {
  const cplx derotated = alpha * std::polar(1.0, sol.problem.chi);
  if (std::abs(derotated.imag()) <= detail::contour_tolerance(derotated))
    throw ContourProximityError("evaluate_offcontour: point too close to the contour; use boundary values");
  const Eigen::RowVectorXcd row = mapped_transform_row(sol.problem.map, derotated, sol.n());
  Eigen::VectorXcd out(static_cast<Eigen::Index>(sol.m()));
  for (std::size_t i = 0; i < sol.m(); ++i) out(static_cast<Eigen::Index>(i)) = row * sol.series[i].coeffs;
  return out;
}

namespace detail {

/// Interval preimage of a real point of the de-rotated contour.
inline double interval_abscissa(const RationalMap& map, double a) {
  if (a == 0.0) return 0.0;
  for (const Preimage& p : map.preimages_general(cplx{a, 0.0}))
    if (p.tag == ContourTag::Interval) return p.point.value.real();
  throw ClassificationError("interval_abscissa: no interval preimage");
}

}  // namespace detail

/// Both sectionally analytic functions at alpha. Off the contour one side comes
/// from the Cauchy transform and the other from the jump relation; on the
/// contour both are interpolated from the collocation boundary values.
[[nodiscard]] inline SectionalValues sectional_values(const RHSolution& sol, cplx alpha) {
  const cplx derotated = alpha * std::polar(1.0, sol.problem.chi);
  const auto mi = static_cast<Eigen::Index>(sol.m());
  SectionalValues out{Eigen::VectorXcd(mi), Eigen::VectorXcd(mi)};
  if (std::abs(derotated.imag()) <= detail::contour_tolerance(derotated)) {
    const BoundaryValues bv = boundary_values(sol);
    const double x = detail::interval_abscissa(sol.problem.map, derotated.real());
    for (Eigen::Index i = 0; i < mi; ++i) {
      out.upper(i) = eval_series(values_to_coeffs(bv.plus.row(i).transpose()), x);
      out.lower(i) = eval_series(values_to_coeffs(bv.minus.row(i).transpose()), x);
    }
    return out;
  }
  const Eigen::MatrixXcd A = sol.problem.coeff_a(alpha);
  const Eigen::MatrixXcd B = sol.problem.coeff_b(alpha);
  const Eigen::VectorXcd C = sol.problem.rhs_c(alpha);
  const Eigen::VectorXcd y = evaluate_offcontour(sol, alpha);
  if (derotated.imag() > 0) {
    out.upper = y;
    out.lower = -B.partialPivLu().solve(A * y + C);
  } else {
    out.lower = y;
    out.upper = -A.partialPivLu().solve(B * y + C);
  }
  return out;
}

}  // namespace whrh
