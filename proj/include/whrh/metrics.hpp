#pragma once

// Error norms on the mapped interval and in alpha, and convergence sweeps.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <future>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "whrh/chebyshev.hpp"
#include "whrh/rh.hpp"

namespace whrh {

enum class Norm { L2, LInf };

[[nodiscard]] inline double e_norm(const Eigen::VectorXcd& exact, const Eigen::VectorXcd& numeric, Norm r) {
  if (exact.size() != numeric.size()) throw std::invalid_argument("e_norm: length mismatch");
  if (exact.size() < 2) throw std::invalid_argument("e_norm: need at least 2 samples");
  const Eigen::VectorXcd d = exact - numeric;
  if (r == Norm::LInf) return d.cwiseAbs().maxCoeff();
  const std::vector<double> w = clenshaw_curtis_weights(static_cast<std::size_t>(d.size()));
  double s = 0.0;
  for (Eigen::Index q = 0; q < d.size(); ++q) s += w[static_cast<std::size_t>(q)] * std::norm(d(q));
  return std::sqrt(s);
}

/// Error in alpha: weights w_q |dalpha/dx|, endpoint terms dropped.
[[nodiscard]] inline double e_alpha_norm(const Eigen::VectorXcd& exact, const Eigen::VectorXcd& numeric,
                                         const CollocationGrid& grid) {
  if (exact.size() != numeric.size() || static_cast<std::size_t>(exact.size()) != grid.size())
    throw std::invalid_argument("e_alpha_norm: length mismatch");
  const std::vector<double> w = clenshaw_curtis_weights(grid.size());
  double s = 0.0;
  for (std::size_t q = 1; q + 1 < grid.size(); ++q) {
    const auto i = static_cast<Eigen::Index>(q);
    s += w[q] * std::norm(exact(i) - numeric(i)) * std::abs(grid.dalpha_dx[q].value);
  }
  return std::sqrt(s);
}

/// Named functions sampled on one collocation grid (rows = functions).
struct Observed {
  CollocationGrid grid;
  Eigen::MatrixXcd values;
  std::vector<std::string> names;
};

/// Upper and lower boundary values of every component, uppers first.
[[nodiscard]] inline Observed observe(const RHSolution& sol) {
  const BoundaryValues bv = boundary_values(sol);
  const auto m = static_cast<Eigen::Index>(sol.m());
  Observed o{sol.grid, Eigen::MatrixXcd(2 * m, static_cast<Eigen::Index>(sol.n())), {}};
  o.values.topRows(m) = bv.plus;
  o.values.bottomRows(m) = bv.minus;
  o.names = sol.problem.info.plus_names;
  o.names.insert(o.names.end(), sol.problem.info.minus_names.begin(), sol.problem.info.minus_names.end());
  return o;
}

enum class ReferenceKind { Exact, SelfHighRes };

struct Reference {
  ReferenceKind kind = ReferenceKind::Exact;
  std::size_t n_ref = 257;
  /// Exact values of every observed function at a (rotated) contour point.
  std::function<Eigen::VectorXcd(cplx)> exact;

  [[nodiscard]] std::string label() const {
    return kind == ReferenceKind::Exact ? std::string("exact") : "self:" + std::to_string(n_ref);
  }
};

struct FunctionErrors {
  double e2 = 0.0;
  double einf = 0.0;
  double ealpha2 = 0.0;
};

struct ConvergenceRecord {
  std::size_t n = 0;
  double e2 = 0.0;  ///< max over the observed functions
  double einf = 0.0;
  double ealpha2 = 0.0;
  ReferenceKind reference = ReferenceKind::Exact;
  std::size_t n_ref = 0;
  std::vector<FunctionErrors> per_function;
  std::vector<std::string> names;
};

using SolveAt = std::function<Observed(std::size_t)>;

namespace detail {

inline ConvergenceRecord compare(const Observed& num, const Eigen::MatrixXcd& ref, const Reference& reference) {
  ConvergenceRecord rec;
  rec.n = num.grid.size();
  rec.reference = reference.kind;
  rec.n_ref = reference.kind == ReferenceKind::Exact ? 0 : reference.n_ref;
  rec.names = num.names;
  for (Eigen::Index i = 0; i < num.values.rows(); ++i) {
    const Eigen::VectorXcd a = ref.row(i).transpose();
    const Eigen::VectorXcd b = num.values.row(i).transpose();
    FunctionErrors fe{e_norm(a, b, Norm::L2), e_norm(a, b, Norm::LInf), e_alpha_norm(a, b, num.grid)};
    rec.e2 = std::max(rec.e2, fe.e2);
    rec.einf = std::max(rec.einf, fe.einf);
    rec.ealpha2 = std::max(rec.ealpha2, fe.ealpha2);
    rec.per_function.push_back(fe);
  }
  return rec;
}

}  // namespace detail

/// One record per n. Solves run concurrently; records come back in n_list order.
[[nodiscard]] inline std::vector<ConvergenceRecord> convergence_sweep(const SolveAt& solve_at,
                                                                      const std::vector<std::size_t>& n_list,
                                                                      const Reference& reference) {
  if (n_list.empty()) throw std::invalid_argument("convergence_sweep: empty n list");
  if (!std::is_sorted(n_list.begin(), n_list.end()))
    throw std::invalid_argument("convergence_sweep: n list must be ascending");
  if (reference.kind == ReferenceKind::SelfHighRes && reference.n_ref <= n_list.back())
    throw std::invalid_argument("convergence_sweep: reference resolution must exceed every n in the list");
  if (reference.kind == ReferenceKind::Exact && !reference.exact)
    throw std::invalid_argument("convergence_sweep: exact reference without an oracle");

  std::vector<ChebSeries> ref_series;
  if (reference.kind == ReferenceKind::SelfHighRes) {
    const Observed hi = solve_at(reference.n_ref);
    for (Eigen::Index i = 0; i < hi.values.rows(); ++i)
      ref_series.push_back(values_to_coeffs(hi.values.row(i).transpose()));
  }

  std::vector<std::future<ConvergenceRecord>> jobs;
  for (std::size_t n : n_list) {
    jobs.push_back(std::async(std::launch::async, [&, n] {
      const Observed num = solve_at(n);
      Eigen::MatrixXcd ref = Eigen::MatrixXcd::Zero(num.values.rows(), num.values.cols());
      for (std::size_t q = 1; q + 1 < n; ++q) {
        const auto qi = static_cast<Eigen::Index>(q);
        if (reference.kind == ReferenceKind::Exact) {
          ref.col(qi) = reference.exact(num.grid.alpha_rotated[q].value);
        } else {
          for (Eigen::Index i = 0; i < ref.rows(); ++i)
            ref(i, qi) = eval_series(ref_series[static_cast<std::size_t>(i)], num.grid.grid[q]);
        }
      }
      return detail::compare(num, ref, reference);
    }));
  }
  std::vector<ConvergenceRecord> out;
  for (auto& j : jobs) out.push_back(j.get());
  return out;
}

[[nodiscard]] inline std::vector<ConvergenceRecord> convergence_sweep(const RHProblem& problem,
                                                                      const RationalMap& map,
                                                                      const std::vector<std::size_t>& n_list,
                                                                      const Reference& reference) {
  RHProblem p = problem;
  p.map = map;
  return convergence_sweep([p](std::size_t n) { return observe(solve(p, n)); }, n_list, reference);
}

}  // namespace whrh
