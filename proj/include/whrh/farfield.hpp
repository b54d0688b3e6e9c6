#pragma once

// Far-field directivity by steepest descent from solved transforms.

#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "whrh/diffraction.hpp"
#include "whrh/rh.hpp"

namespace whrh {

struct DirectivityAmplitudes {
  cplx upper;  ///< A, used for 0 <= theta <= pi
  cplx lower;  ///< B, used for pi < theta < 2 pi
};

enum class SampleFlag { Ok, ShadowWindow, Failed };

struct DirectivityCurve {
  std::vector<double> thetas;
  std::vector<cplx> values;
  std::vector<SampleFlag> flags;
  std::vector<double> shadow_angles;
  ProblemInfo info;
};

/// A solved problem the directivity can be taken from: either one catalogue
/// solution or the Senior scalar pair.
struct DirectivitySource {
  const RHSolution* single = nullptr;
  const RHSolution* sum = nullptr;
  const RHSolution* difference = nullptr;

  [[nodiscard]] const ProblemInfo& info() const { return single ? single->problem.info : sum->problem.info; }
  [[nodiscard]] double chi() const { return single ? single->problem.chi : sum->problem.chi; }
  [[nodiscard]] cplx wavenumber() const {
    const auto& p = info().params;
    return {p.at("k"), p.at("epsilon")};
  }
};

namespace detail {

inline SectionalValues source_values(const DirectivitySource& src, cplx alpha) {
  if (src.single) return sectional_values(*src.single, alpha);
  if (!src.sum || !src.difference) throw std::invalid_argument("directivity source is empty");
  return recombine_senior(sectional_values(*src.sum, alpha), sectional_values(*src.difference, alpha));
}

inline ProblemKind source_kind(const DirectivitySource& src) {
  if (src.single) return src.single->problem.info.kind;
  return ProblemKind::SeniorMatrix;
}

}  // namespace detail

[[nodiscard]] inline DirectivityAmplitudes reconstruct_A_B(const DirectivitySource& src, cplx alpha) {
  const cplx k = src.wavenumber();
  switch (detail::source_kind(src)) {
    case ProblemKind::Sommerfeld: {
      const cplx derotated = alpha * std::polar(1.0, src.chi());
      cplx a;
      if (std::abs(derotated.imag()) > detail::contour_tolerance(derotated) && derotated.imag() > 0) {
        const auto& p = src.info().params;
        const cplx incident = k * std::sin(p.at("theta0")) / (alpha - k * std::cos(p.at("theta0")));
        a = -(evaluate_offcontour(*src.single, alpha)(0) + incident) / gamma_eval(k, alpha);
      } else {
        a = detail::source_values(src, alpha).lower(0);
      }
      return {a, -a};
    }
    case ProblemKind::SeniorMatrix: {
      const SectionalValues v = detail::source_values(src, alpha);
      const cplx g = gamma_eval(k, alpha);
      return {-(v.upper(0) + v.lower(0)) / g, (v.upper(1) + v.lower(0)) / g};
    }
    case ProblemKind::Hurd: {
      const SectionalValues v = detail::source_values(src, alpha);
      const cplx b = beta_eval(k, alpha);
      return {0.5 * (v.lower(0) + v.lower(1) / b), 0.5 * (-v.lower(0) + v.lower(1) / b)};
    }
    default:
      throw std::invalid_argument("reconstruct_A_B: not a catalogue problem with a directivity");
  }
}

[[nodiscard]] inline DirectivityAmplitudes reconstruct_A_B(const RHSolution& sol, cplx alpha) {
  return reconstruct_A_B(DirectivitySource{&sol}, alpha);
}

/// -sqrt(2/(k pi)) e^{-i pi/4} sin(theta/2) sin(theta0/2) / (cos theta + cos theta0)
[[nodiscard]] inline cplx sommerfeld_directivity_exact(const PhysicalParams& p, double theta) {
  const double den = std::cos(theta) + std::cos(p.theta0);
  if (den == 0.0) throw std::domain_error("sommerfeld_directivity_exact: shadow boundary");
  return -std::sqrt(2.0 / (p.k * std::numbers::pi)) * std::polar(1.0, -std::numbers::pi / 4) *
         std::sin(theta / 2) * std::sin(p.theta0 / 2) / den;
}

struct DirectivityOptions {
  double window = 0.1;        ///< exclusion half-width in |cos theta + cos theta0|
  double branch_step = 2e-3;  ///< angular step of the one-sided extrapolation at grazing
};

namespace detail {

inline double stationary_sign(ProblemKind kind) { return kind == ProblemKind::Hurd ? 1.0 : -1.0; }

/// D at one angle, without the grazing extrapolation.
inline cplx directivity_point(const DirectivitySource& src, double theta) {
  const double k = src.wavenumber().real();
  const double s = std::sin(theta);
  const cplx alpha = stationary_sign(detail::source_kind(src)) * k * std::cos(theta);
  const DirectivityAmplitudes ab = reconstruct_A_B(src, alpha);
  const cplx pref = std::sqrt(k) * std::polar(1.0, -std::numbers::pi / 4) / std::sqrt(2.0 * std::numbers::pi);
  return s >= 0 ? pref * ab.upper * s : pref * ab.lower * std::abs(s);
}

}  // namespace detail

/// Directivity at one angle. At grazing (stationary point on a branch point)
/// the value is extrapolated quadratically from the side that shares its formula.
[[nodiscard]] inline cplx directivity_at(const DirectivitySource& src, double theta,
                                         const DirectivityOptions& opt = {}) {
  const double c = std::cos(theta), s = std::sin(theta);
  if (std::abs(1.0 - c * c) > 1e-9) return detail::directivity_point(src, theta);
  const bool upper = s >= 0;
  const double dir = upper ? (c > 0 ? 1.0 : -1.0) : (c < 0 ? 1.0 : -1.0);
  const double h = dir * opt.branch_step;
  return 3.0 * detail::directivity_point(src, theta + h) - 3.0 * detail::directivity_point(src, theta + 2 * h) +
         detail::directivity_point(src, theta + 3 * h);
}

[[nodiscard]] inline bool in_shadow_window(const ProblemInfo& info, double theta, double window) {
  return std::abs(std::cos(theta) + std::cos(info.params.at("theta0"))) < window;
}

[[nodiscard]] inline DirectivityCurve directivity(const DirectivitySource& src, const std::vector<double>& thetas,
                                                  const DirectivityOptions& opt = {}) {
  DirectivityCurve out;
  out.info = src.info();
  out.thetas = thetas;
  const double t0 = out.info.params.at("theta0");
  out.shadow_angles = {std::numbers::pi - t0, std::numbers::pi + t0};
  for (double th : thetas) {
    const bool windowed = in_shadow_window(out.info, th, opt.window);
    try {
      out.values.push_back(directivity_at(src, th, opt));
      out.flags.push_back(windowed ? SampleFlag::ShadowWindow : SampleFlag::Ok);
    } catch (const std::exception&) {
      out.values.push_back({std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN()});
      out.flags.push_back(windowed ? SampleFlag::ShadowWindow : SampleFlag::Failed);
    }
  }
  return out;
}

[[nodiscard]] inline DirectivityCurve directivity(const RHSolution& sol, const std::vector<double>& thetas,
                                                  const DirectivityOptions& opt = {}) {
  return directivity(DirectivitySource{&sol}, thetas, opt);
}

class UnimplementedError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

using PsiFunction = std::function<cplx(double)>;

/// Far-field amplitude for the impedance half-plane in closed form; needs the
/// auxiliary function psi, which has to be supplied by the caller.
[[nodiscard]] inline cplx bowman_directivity(const PhysicalParams& p, double theta,
                                             const std::optional<PsiFunction>& psi = std::nullopt) {
  if (!psi) throw UnimplementedError("bowman_directivity: psi is not available");
  const double c = std::cos(p.theta0 / 2), sh = std::sin(theta / 2);
  if (sh + c == 0.0 || sh - c == 0.0) throw std::domain_error("bowman_directivity: pole");
  const cplx u = std::sin(p.theta0 / 2) / (*psi)(std::numbers::pi - p.theta0) *
                 ((*psi)(-theta) / (sh + c) + (*psi)(2 * std::numbers::pi - theta) / (sh - c));
  return 1.0 / cplx{0.0, 4.0} * std::sqrt(2.0 / (p.k * std::numbers::pi)) *
         std::polar(1.0, -std::numbers::pi / 4) * u;
}

}  // namespace whrh
