// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "whrh/catalogue.hpp"
#include "whrh/farfield.hpp"
#include "whrh/metrics.hpp"
#include "whrh/verify.hpp"

using namespace whrh;
using std::numbers::pi;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void report(int id, const char* title, double limit_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool in_time = limit_s <= 0 || secs <= limit_s;
  const bool pass = o.pass && in_time;
  if (!pass) ++failures;
  char timing[64];
  if (limit_s > 0) std::snprintf(timing, sizeof timing, "%.2fs (limit %.0fs)", secs, limit_s);
  else std::snprintf(timing, sizeof timing, "%.2fs", secs);
  std::printf("%s [%d] %s: %s; %s\n", pass ? "PASS" : "FAIL", id, title, o.detail.c_str(), timing);
  std::fflush(stdout);
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// slowest decay per added collocation point, ln(e_i / e_{i+1}) / (n_{i+1} - n_i)
double min_rate(const std::vector<std::size_t>& ns, const std::vector<double>& e) {
  double r = 1e300;
  for (std::size_t i = 1; i < e.size(); ++i)
    r = std::min(r, std::log(e[i - 1] / e[i]) / static_cast<double>(ns[i] - ns[i - 1]));
  return r;
}

// geometric decay: at least a factor e^{-0.1} per point on every step
constexpr double kMinRate = 0.1;

const std::vector<std::size_t> kSweep{17, 33, 65, 129};

PhysicalParams senior_params() {
  PhysicalParams p;
  p.theta0 = 5 * pi / 6;
  p.S = 1.0 / std::sin(pi / 5);
  return p;
}

PhysicalParams hurd_params() {
  PhysicalParams p;
  p.theta0 = pi / 3;
  p.theta1 = pi / 4;
  p.theta2 = pi / 5;
  return p;
}

Reference exact_sommerfeld(const PhysicalParams& p) {
  return {ReferenceKind::Exact, 0, [p](cplx a) { return sommerfeld_exact_values(p, a); }};
}

std::vector<double> angles(int count) {
  std::vector<double> th;
  for (int i = 0; i < count; ++i) th.push_back(2 * pi * i / (count - 1));
  return th;
}

}  // namespace

int main() {
  const auto four = RationalMap::four_to_one();
  const auto two = RationalMap::two_to_one();
  const PhysicalParams som;

  report(1, "sommerfeld 4-to-1 vs exact", 5.0, [&] {
    const auto recs = convergence_sweep(sommerfeld_problem(som, four, pi / 4), four, kSweep, exact_sommerfeld(som));
    std::vector<double> e2, einf;
    std::string table;
    for (const auto& r : recs) {
      e2.push_back(r.e2);
      einf.push_back(r.einf);
      table += fmt(" n=%zu:%.2e/%.2e", r.n, r.e2, r.einf);
    }
    const double tol = 1e-8;
    const double r2 = min_rate(kSweep, e2), rinf = min_rate(kSweep, einf);
    const bool ok = e2.back() <= tol && einf.back() <= tol && r2 >= kMinRate && rinf >= kMinRate;
    return Outcome{ok, fmt("E2/Einf%s; need both <= %.0e at 129; min rate E2 %.3f Einf %.3f (need >= %.1f)",
                           table.c_str(), tol, r2, rinf, kMinRate)};
  });

  report(2, "sommerfeld 2-to-1 at n=100", 2.0, [&] {
    const auto recs = convergence_sweep(sommerfeld_problem(som, two, pi / 4), two, {100}, exact_sommerfeld(som));
    const double e2 = recs[0].e2;
    return Outcome{e2 >= 1e-4 && e2 <= 1e-2, fmt("E2_100 = %.3e, need within [1e-4, 1e-2]", e2)};
  });

  report(3, "senior scalar pair vs matrix", 10.0, [&] {
    const PhysicalParams p = senior_params();
    const Observed a = solve_catalogue(Formulation::SeniorScalar, p, four, 129, pi / 4).observed();
    const Observed b = solve_catalogue(Formulation::SeniorMatrix, p, four, 129, pi / 4).observed();
    const Eigen::MatrixXcd d = a.values - b.values;
    const double agree = d.middleCols(1, d.cols() - 2).cwiseAbs().maxCoeff();

    const std::vector<std::size_t>& ns = kSweep;
    const Reference self{ReferenceKind::SelfHighRes, 257, {}};
    const auto scalar_at = [&](std::size_t n) {
      return solve_catalogue(Formulation::SeniorScalar, p, four, n, pi / 4).observed();
    };
    const auto matrix_at = [&](std::size_t n) {
      return solve_catalogue(Formulation::SeniorMatrix, p, four, n, pi / 4).observed();
    };
    std::vector<double> es, em;
    for (const auto& r : convergence_sweep(scalar_at, ns, self)) es.push_back(r.e2);
    for (const auto& r : convergence_sweep(matrix_at, ns, self)) em.push_back(r.e2);
    const double rs = min_rate(ns, es), rm = min_rate(ns, em);
    const bool ok = agree <= 1e-10 && rs >= kMinRate && rm >= kMinRate;
    return Outcome{ok, fmt("max interior disagreement %.3e (need <= 1e-10); E2 vs 257 scalar %.2e..%.2e "
                           "(min rate %.3f), matrix %.2e..%.2e (min rate %.3f)",
                           agree, es.front(), es.back(), rs, em.front(), em.back(), rm)};
  });

  report(4, "hurd self-convergence", 10.0, [&] {
    const auto recs = convergence_sweep(hurd_problem(hurd_params(), four, pi / 4), four, kSweep,
                                        Reference{ReferenceKind::SelfHighRes, 257, {}});
    bool ok = true;
    std::string per;
    for (std::size_t i = 0; i < recs.back().names.size(); ++i) {
      std::vector<double> e;
      for (const auto& r : recs) e.push_back(r.per_function[i].e2);
      const double r = min_rate(kSweep, e);
      ok = ok && e.back() <= 1e-8 && r >= kMinRate;
      per += fmt(" %s %.2e (rate %.3f)", recs.back().names[i].c_str(), e.back(), r);
    }
    return Outcome{ok, fmt("E2_129 vs 257:%s; need <= 1e-8 and rate >= %.1f", per.c_str(), kMinRate)};
  });

  report(5, "directivity", 5.0, [&] {
    const std::vector<double> th = angles(361);
    const RHSolution s = solve(sommerfeld_problem(som, four, pi / 4), 129);
    const DirectivityCurve c = directivity(s, th);
    double worst = 0.0, scale = 0.0;
    bool finite = true;
    for (std::size_t i = 0; i < th.size(); ++i) {
      if (c.flags[i] == SampleFlag::ShadowWindow) continue;
      finite = finite && c.flags[i] == SampleFlag::Ok;
      const double ex = std::abs(sommerfeld_directivity_exact(som, th[i]));
      scale = std::max(scale, ex);
      worst = std::max(worst, std::abs(std::abs(c.values[i]) - ex));
    }
    const double rel = worst / scale;
    const double spot = std::abs(directivity_at(DirectivitySource{&s}, pi / 2));
    const double spot_exact = std::abs(sommerfeld_directivity_exact(som, pi / 2));

    // senior and hurd: n = 129 against n = 257
    const auto stability = [&](Formulation f, const PhysicalParams& p) {
      const CatalogueRun lo = solve_catalogue(f, p, four, 129, pi / 4);
      const CatalogueRun hi = solve_catalogue(f, p, four, 257, pi / 4);
      const DirectivityCurve a = directivity(lo.source(), th), b = directivity(hi.source(), th);
      double w = 0.0;
      for (std::size_t i = 0; i < th.size(); ++i) {
        if (a.flags[i] == SampleFlag::ShadowWindow) continue;
        if (a.flags[i] != SampleFlag::Ok || b.flags[i] != SampleFlag::Ok) return 1e300;
        w = std::max(w, std::abs(a.values[i] - b.values[i]));
      }
      return w;
    };
    const double ws = stability(Formulation::SeniorScalar, senior_params());
    const double wh = stability(Formulation::Hurd, hurd_params());
    const bool ok = finite && rel <= 1e-6 && std::abs(spot - spot_exact) <= 1e-6 && ws <= 1e-8 && wh <= 1e-8;
    return Outcome{ok, fmt("sommerfeld max rel |D| error %.3e (need <= 1e-6); |D(pi/2)| = %.7f vs %.7f; "
                           "129 vs 257 senior %.3e, hurd %.3e (need <= 1e-8)",
                           rel, spot, spot_exact, ws, wh)};
  });

  report(6, "operator identities", 0.0, [] {
    const auto pl = verify::plemelj_suite();
    const auto oc = verify::cauchy_oracle_suite();
    return Outcome{pl.passed && oc.passed,
                   fmt("Plemelj %.3e (need <= 1e-13); oracle %s (need anchor <= 1e-12, quadrature <= 1e-9)", pl.worst,
                       oc.detail.c_str())};
  });

  report(7, "mapping and quadrature", 0.0, [] {
    const auto mp = verify::mapping_suite(1000);
    const auto cc = verify::quadrature_suite();
    return Outcome{mp.passed && cc.passed,
                   fmt("roundtrip/semicircle %.3e (need <= 1e-12); Clenshaw-Curtis moments %.3e (need <= 1e-13)",
                       mp.worst, cc.worst)};
  });

  std::printf("%d of 7 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
