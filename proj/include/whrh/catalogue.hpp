#pragma once

// Named catalogue formulations: one call solves, observes and exposes the
// directivity source, hiding the Senior scalar pair behind the matrix layout.

#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "whrh/diffraction.hpp"
#include "whrh/farfield.hpp"
#include "whrh/metrics.hpp"
#include "whrh/rh.hpp"

namespace whrh {

enum class Formulation { Sommerfeld, SeniorScalar, SeniorMatrix, Hurd };

[[nodiscard]] inline Formulation parse_formulation(const std::string& s) {
  if (s == "sommerfeld") return Formulation::Sommerfeld;
  if (s == "senior-scalar") return Formulation::SeniorScalar;
  if (s == "senior-matrix") return Formulation::SeniorMatrix;
  if (s == "hurd") return Formulation::Hurd;
  throw std::invalid_argument("unknown problem '" + s + "' (expected sommerfeld, senior-scalar, senior-matrix, hurd)");
}

[[nodiscard]] inline std::string to_string(Formulation f) {
  switch (f) {
    case Formulation::Sommerfeld: return "sommerfeld";
    case Formulation::SeniorScalar: return "senior-scalar";
    case Formulation::SeniorMatrix: return "senior-matrix";
    case Formulation::Hurd: return "hurd";
  }
  return "?";
}

/// The RH problems a formulation solves (two for the Senior scalar pair).
[[nodiscard]] inline std::vector<RHProblem> build_problems(Formulation f, const PhysicalParams& p,
                                                           const RationalMap& map, double chi) {
  switch (f) {
    case Formulation::Sommerfeld: return {sommerfeld_problem(p, map, chi)};
    case Formulation::SeniorMatrix: return {senior_matrix_problem(p, map, chi)};
    case Formulation::SeniorScalar: {
      SeniorScalarPair pair = senior_scalar_problems(p, map, chi);
      return {pair.sum, pair.difference};
    }
    case Formulation::Hurd: return {hurd_problem(p, map, chi)};
  }
  throw std::invalid_argument("build_problems: unknown formulation");
}

struct CatalogueRun {
  Formulation formulation;
  std::vector<RHSolution> parts;

  [[nodiscard]] DirectivitySource source() const {
    if (parts.size() == 2) return DirectivitySource{nullptr, &parts[0], &parts[1]};
    return DirectivitySource{&parts[0]};
  }

  /// Boundary values in the matrix layout: uppers first, then lowers.
  [[nodiscard]] Observed observed() const {
    if (parts.size() == 1) return observe(parts[0]);
    const BoundaryValues s = boundary_values(parts[0]);
    const BoundaryValues d = boundary_values(parts[1]);
    Observed o{parts[0].grid, Eigen::MatrixXcd(4, s.plus.cols()),
               {"dphi_plus_upper_face", "dphi_plus_lower_face", "dphi_minus", "phi_minus"}};
    o.values.row(0) = 0.5 * (s.plus.row(0) + d.plus.row(0));
    o.values.row(1) = 0.5 * (s.plus.row(0) - d.plus.row(0));
    o.values.row(2) = 0.5 * s.minus.row(0);
    o.values.row(3) = d.minus.row(0);
    return o;
  }

  [[nodiscard]] std::vector<std::string> warnings() const {
    std::vector<std::string> w;
    for (const auto& s : parts) w.insert(w.end(), s.problem.info.warnings.begin(), s.problem.info.warnings.end());
    return w;
  }
};

[[nodiscard]] inline CatalogueRun solve_catalogue(Formulation f, const PhysicalParams& p, const RationalMap& map,
                                                  std::size_t n, double chi) {
  CatalogueRun run{f, {}};
  for (const RHProblem& prob : build_problems(f, p, map, chi)) run.parts.push_back(solve(prob, n));
  return run;
}

/// Exact (upper, lower) Sommerfeld values at a contour point.
[[nodiscard]] inline Eigen::VectorXcd sommerfeld_exact_values(const PhysicalParams& p, cplx alpha) {
  const SommerfeldExact e = sommerfeld_exact(p, alpha);
  Eigen::VectorXcd v(2);
  v << e.dphi_plus, e.d_minus;
  return v;
}

}  // namespace whrh
