#pragma once

// Half-plane diffraction catalogue: hard-hard (Sommerfeld), equal impedance
// faces (Senior, matrix and scalar pair) and unequal faces (Hurd).

#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>

#include <Eigen/Dense>

#include "whrh/rh.hpp"

namespace whrh {

struct PhysicalParams {
  double k = 1.0;
  double theta0 = std::numbers::pi / 5;
  double S = 0.0;
  double theta1 = 0.0;
  double theta2 = 0.0;
  double epsilon = 0.0;  ///< Im(k), diagnostics only

  [[nodiscard]] cplx wavenumber() const noexcept { return {k, epsilon}; }
};

class BranchCutError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// sqrt with its cut along the positive imaginary axis.
[[nodiscard]] inline cplx sqrt_cut_up(cplx w) {
  if (w.real() == 0.0 && w.imag() > 0.0) throw BranchCutError("sqrt_cut_up: argument on the cut");
  return std::polar(1.0, -std::numbers::pi / 4) * std::sqrt(cplx{0.0, 1.0} * w);
}

/// sqrt with its cut along the negative imaginary axis.
[[nodiscard]] inline cplx sqrt_cut_down(cplx w) {
  if (w.real() == 0.0 && w.imag() < 0.0) throw BranchCutError("sqrt_cut_down: argument on the cut");
  return std::polar(1.0, std::numbers::pi / 4) * std::sqrt(cplx{0.0, -1.0} * w);
}

/// (alpha^2 - k^2)^{1/2}, cuts running up from +k and down from -k; gamma(0) = -ik.
[[nodiscard]] inline cplx gamma_eval(cplx k, cplx alpha) {
  return sqrt_cut_up(alpha - k) * sqrt_cut_down(alpha + k);
}

/// (k^2 - alpha^2)^{1/2} = i gamma; beta(0) = k.
[[nodiscard]] inline cplx beta_eval(cplx k, cplx alpha) { return cplx{0.0, 1.0} * gamma_eval(k, alpha); }

namespace detail {

inline Eigen::MatrixXcd scalar(cplx v) { return Eigen::MatrixXcd::Constant(1, 1, v); }

inline void require_range(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

inline void finite_params(const PhysicalParams& p) {
  require_range(std::isfinite(p.k) && p.k > 0, "k must be positive and finite");
  require_range(std::isfinite(p.epsilon) && p.epsilon >= 0, "epsilon must be nonnegative");
  require_range(std::isfinite(p.theta0), "theta0 must be finite");
}

inline ProblemInfo base_info(const std::string& name, ProblemKind kind, const PhysicalParams& p) {
  ProblemInfo info;
  info.name = name;
  info.kind = kind;
  info.params = {{"k", p.k}, {"theta0", p.theta0}, {"epsilon", p.epsilon}};
  const cplx k = p.wavenumber();
  info.singularities.push_back({"+k", k, HalfPlane::Above});
  info.singularities.push_back({"-k", -k, HalfPlane::Below});
  return info;
}

inline void near_grazing_warning(ProblemInfo& info, double theta0) {
  if (std::abs(std::abs(theta0) - std::numbers::pi / 2) < 0.05)
    info.warnings.push_back("theta0 within 0.05 rad of pi/2: convergence becomes slower");
}

}  // namespace detail

[[nodiscard]] inline RHProblem sommerfeld_problem(const PhysicalParams& p, const RationalMap& map, double chi) {
  detail::finite_params(p);
  detail::require_range(p.theta0 > -std::numbers::pi / 2 && p.theta0 < std::numbers::pi / 2,
                        "sommerfeld: theta0 must lie in (-pi/2, pi/2)");
  const cplx k = p.wavenumber();
  const double c0 = std::cos(p.theta0), s0 = std::sin(p.theta0);
  RHProblem prob;
  prob.m = 1;
  prob.map = map;
  prob.chi = chi;
  prob.coeff_a = [k](cplx a) { return detail::scalar(1.0 / gamma_eval(k, a)); };
  prob.coeff_b = [](cplx) { return detail::scalar(1.0); };
  prob.rhs_c = [k, c0, s0](cplx a) {
    Eigen::VectorXcd c(1);
    c(0) = k * s0 / (gamma_eval(k, a) * (a - k * c0));
    return c;
  };
  prob.info = detail::base_info("sommerfeld", ProblemKind::Sommerfeld, p);
  prob.info.plus_names = {"dphi_plus"};
  prob.info.minus_names = {"d_minus"};
  prob.info.singularities.push_back({"incident pole", k * c0, c0 > 0 ? HalfPlane::Above : HalfPlane::Below});
  detail::near_grazing_warning(prob.info, p.theta0);
  return prob;
}

struct SommerfeldExact {
  cplx dphi_plus;
  cplx d_minus;
};

[[nodiscard]] inline SommerfeldExact sommerfeld_exact(const PhysicalParams& p, cplx alpha) {
  const cplx k = p.wavenumber();
  const cplx kc = k * std::cos(p.theta0);
  const cplx ks = k * std::sin(p.theta0);
  const cplx w0 = k + kc;
  const cplx root0 = std::sqrt(w0);
  const cplx up = sqrt_cut_down(alpha + k);    // (alpha + k)^{1/2}
  const cplx down = sqrt_cut_up(alpha - k);    // (alpha - k)^{1/2}
  const cplx d = alpha - kc;

  // [(alpha+k)^{-1/2} - (k+kc)^{-1/2}] / (alpha - kc), Taylor near the removable point
  cplx quotient;
  if (std::abs(d) < 1e-5 * std::max(1.0, std::abs(w0))) {
    const cplx f1 = -0.5 / (w0 * root0);
    const cplx f2 = 0.75 / (w0 * w0 * root0);
    const cplx f3 = -1.875 / (w0 * w0 * w0 * root0);
    quotient = f1 + f2 * d / 2.0 + f3 * d * d / 6.0;
  } else {
    quotient = (1.0 / up - 1.0 / root0) / d;
  }
  const cplx h_plus = ks * quotient;
  SommerfeldExact out;
  out.dphi_plus = -up * h_plus;
  const cplx h_minus = ks / (root0 * d);
  out.d_minus = -h_minus / down;
  return out;
}

[[nodiscard]] inline RHProblem senior_matrix_problem(const PhysicalParams& p, const RationalMap& map, double chi) {
  detail::finite_params(p);
  detail::require_range(std::isfinite(p.S), "senior: S must be finite");
  detail::require_range(p.theta0 > std::numbers::pi / 2 && p.theta0 < 3 * std::numbers::pi / 2,
                        "senior: theta0 must lie in (pi/2, 3pi/2)");
  const cplx k = p.wavenumber();
  const double c0 = std::cos(p.theta0), s0 = std::sin(p.theta0);
  const double S = p.S;
  const cplx I{0.0, 1.0};
  RHProblem prob;
  prob.m = 2;
  prob.map = map;
  prob.chi = chi;
  prob.coeff_a = [k, S, I](cplx a) {
    const cplx d = 1.0 / gamma_eval(k, a) + I * S;
    Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(2, 2);
    A(0, 0) = d;
    A(1, 1) = d;
    return A;
  };
  prob.coeff_b = [k](cplx a) {
    const cplx g = 1.0 / gamma_eval(k, a);
    Eigen::MatrixXcd B(2, 2);
    B << g, 1.0, g, -1.0;
    return B;
  };
  prob.rhs_c = [k, c0, s0, S, I](cplx a) {
    const cplx f = -I / (a - k * c0);
    const cplx sks = S * k * s0;
    Eigen::VectorXcd c(2);
    c << f * (1.0 - sks), f * (-1.0 - sks);
    return c;
  };
  prob.info = detail::base_info("senior-matrix", ProblemKind::SeniorMatrix, p);
  prob.info.params["S"] = S;
  prob.info.plus_names = {"dphi_plus_upper_face", "dphi_plus_lower_face"};
  prob.info.minus_names = {"dphi_minus", "phi_minus"};
  prob.info.singularities.push_back({"incident pole", k * c0, c0 > 0 ? HalfPlane::Above : HalfPlane::Below});
  if (S != 0.0 && std::abs(1.0 / S) < 0.05)
    prob.info.warnings.push_back("impedance magnitude near 0: convergence becomes slower");
  return prob;
}

struct SeniorScalarPair {
  RHProblem sum;         ///< unknowns U1 + U2 (upper) and 2 dphi_minus (lower)
  RHProblem difference;  ///< unknowns U1 - U2 (upper) and phi_minus (lower)
};

[[nodiscard]] inline SeniorScalarPair senior_scalar_problems(const PhysicalParams& p, const RationalMap& map,
                                                             double chi) {
  const RHProblem ref = senior_matrix_problem(p, map, chi);
  const cplx k = p.wavenumber();
  const double c0 = std::cos(p.theta0), s0 = std::sin(p.theta0);
  const double S = p.S;
  const cplx I{0.0, 1.0};

  SeniorScalarPair pair{ref, ref};
  RHProblem& sum = pair.sum;
  sum.m = 1;
  sum.coeff_a = [k, S, I](cplx a) { return detail::scalar(1.0 / gamma_eval(k, a) + I * S); };
  sum.coeff_b = [k](cplx a) { return detail::scalar(1.0 / gamma_eval(k, a)); };
  sum.rhs_c = [k, c0, s0, S, I](cplx a) {
    Eigen::VectorXcd c(1);
    c(0) = 2.0 * I * S * k * s0 / (a - k * c0);
    return c;
  };
  sum.info.name = "senior-sum";
  sum.info.kind = ProblemKind::SeniorSum;
  sum.info.plus_names = {"dphi_plus_sum"};
  sum.info.minus_names = {"dphi_minus_twice"};

  RHProblem& dif = pair.difference;
  dif.m = 1;
  dif.coeff_a = sum.coeff_a;
  dif.coeff_b = [](cplx) { return detail::scalar(2.0); };
  dif.rhs_c = [k, c0, I](cplx a) {
    Eigen::VectorXcd c(1);
    c(0) = -2.0 * I / (a - k * c0);
    return c;
  };
  dif.info.name = "senior-difference";
  dif.info.kind = ProblemKind::SeniorDifference;
  dif.info.plus_names = {"dphi_plus_difference"};
  dif.info.minus_names = {"phi_minus"};
  return pair;
}

/// Matrix-form unknowns (rows: U1, U2 upper; L1, L2 lower) from the scalar pair's values.
[[nodiscard]] inline SectionalValues recombine_senior(const SectionalValues& sum, const SectionalValues& dif) {
  SectionalValues out{Eigen::VectorXcd(2), Eigen::VectorXcd(2)};
  out.upper(0) = 0.5 * (sum.upper(0) + dif.upper(0));
  out.upper(1) = 0.5 * (sum.upper(0) - dif.upper(0));
  out.lower(0) = 0.5 * sum.lower(0);
  out.lower(1) = dif.lower(0);
  return out;
}

[[nodiscard]] inline RHProblem hurd_problem(const PhysicalParams& p, const RationalMap& map, double chi) {
  detail::finite_params(p);
  detail::require_range(p.theta0 > -std::numbers::pi / 2 && p.theta0 < std::numbers::pi / 2,
                        "hurd: theta0 must lie in (-pi/2, pi/2)");
  detail::require_range(p.theta1 >= 0 && p.theta1 <= std::numbers::pi / 2, "hurd: theta1 must lie in [0, pi/2]");
  detail::require_range(p.theta2 >= 0 && p.theta2 <= std::numbers::pi / 2, "hurd: theta2 must lie in [0, pi/2]");
  const cplx k = p.wavenumber();
  const double c0 = std::cos(p.theta0), s0 = std::sin(p.theta0);
  const double s1 = std::sin(p.theta1), s2 = std::sin(p.theta2);
  RHProblem prob;
  prob.m = 2;
  prob.map = map;
  prob.chi = chi;
  prob.coeff_a = [k](cplx a) {
    Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(2, 2);
    A(0, 0) = 1.0 / beta_eval(k, a);
    A(1, 1) = 1.0;
    return A;
  };
  prob.coeff_b = [k, s1, s2](cplx a) {
    const cplx b = beta_eval(k, a);
    const cplx f1 = 1.0 + k * s1 / b;
    const cplx f2 = 1.0 + k * s2 / b;
    Eigen::MatrixXcd B(2, 2);
    B << f1, f1, -f2, f2;
    return Eigen::MatrixXcd(-0.5 * B);
  };
  prob.rhs_c = [k, c0, s0, s1, s2](cplx a) {
    const cplx pref = k / (2.0 * std::numbers::pi * cplx{0.0, 1.0});
    const cplx d = a + k * c0;
    Eigen::VectorXcd c(2);
    c << -pref * (s1 - s0) / (beta_eval(k, a) * d), -pref * (s2 + s0) / d;
    return c;
  };
  prob.info = detail::base_info("hurd", ProblemKind::Hurd, p);
  prob.info.params["theta1"] = p.theta1;
  prob.info.params["theta2"] = p.theta2;
  prob.info.plus_names = {"U1", "U2"};
  prob.info.minus_names = {"L1", "L2"};
  prob.info.singularities.push_back({"incident pole", -k * c0, c0 > 0 ? HalfPlane::Below : HalfPlane::Above});
  detail::near_grazing_warning(prob.info, p.theta0);
  if (p.k * s1 < 0.05 || p.k * s2 < 0.05)
    prob.info.warnings.push_back("impedance magnitude near 0: convergence becomes slower");
  return prob;
}

}  // namespace whrh
