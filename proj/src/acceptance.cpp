#include "annulus/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <map>
#include <numbers>
#include <random>

#include "annulus/elliptic.hpp"
#include "annulus/errors.hpp"
#include "annulus/geodesics.hpp"
#include "annulus/metrics.hpp"
#include "annulus/reference.hpp"
#include "annulus/variation.hpp"

namespace annulus {

namespace {

constexpr double kPi = std::numbers::pi;

constexpr const char* kTitles[] = {"Carathéodory limits",
                                   "Szegő metric limits",
                                   "Carathéodory curvature limits",
                                   "Szegő curvature limits",
                                   "series vs elliptic Szegő metric",
                                   "asymptotic N-function ratios",
                                   "elliptic functions",
                                   "boundary asymptotics at r=0.5",
                                   "curvature and comparison bounds",
                                   "geodesics",
                                   "headless run time"};

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

// Collects failures while building a detail line.
struct Verdict {
  bool pass = true;
  std::vector<std::string> notes;

  void check(bool ok, std::string what) {
    if (!ok) pass = false;
    notes.push_back((ok ? "" : "FAILED ") + std::move(what));
  }
  std::string text() const {
    std::string s;
    for (const auto& n : notes) s += (s.empty() ? "" : "; ") + n;
    return s;
  }
};

double c_at(double r, double lambda) {
  return sample(r, cplx(std::pow(r, lambda), 0.0), default_truncation()).c;
}

// Values of one quantity at fixed lambda over a grid, from a shared sweep.
struct SweepTable {
  SweepSpec spec;
  std::vector<SweepRow> rows;

  std::vector<double> column(double lambda, Quantity q) const {
    const auto qi = std::find(spec.quantities.begin(), spec.quantities.end(), q) - spec.quantities.begin();
    std::vector<double> out;
    for (const auto& row : rows) {
      if (row.lambda == lambda) out.push_back(row.values[qi]);
    }
    return out;
  }
  double at(double r, double lambda, Quantity q) const {
    const auto qi = std::find(spec.quantities.begin(), spec.quantities.end(), q) - spec.quantities.begin();
    for (const auto& row : rows) {
      if (row.lambda == lambda && row.r == r) return row.values[qi];
    }
    throw InternalConsistencyError("sweep row missing");
  }
};

SweepTable limit_sweep(std::vector<double> lambdas, std::vector<Quantity> qs, unsigned threads) {
  SweepTable t;
  t.spec = default_sweep_spec(true);
  t.spec.lambda_values = std::move(lambdas);
  t.spec.quantities = std::move(qs);
  t.rows = run_sweep(t.spec, default_truncation(), threads);
  for (const auto& row : t.rows) {
    if (!row.ok()) throw InternalConsistencyError("sweep row failed: " + row.status);
  }
  return t;
}

struct Regime {
  double lambda;
  double limit;  // +-inf for divergent regimes
};

// Classification plus the 5% check at r = 1e-6 for finite limits.
void check_regimes(Verdict& v, const SweepTable& t, Quantity q, const std::vector<Regime>& regimes) {
  for (const Regime& g : regimes) {
    const auto col = t.column(g.lambda, q);
    const LimitClass cls = limit_classifier(t.spec.r_values, col);
    if (std::isinf(g.limit)) {
      const LimitKind want = g.limit > 0 ? LimitKind::plus_infinity : LimitKind::minus_infinity;
      v.check(cls.kind == want, fmt("lambda=%.4g %s (last %.4g)", g.lambda,
                                    std::string(limit_kind_name(cls.kind)).c_str(), col.back()));
    } else {
      const double at6 = t.at(1e-6, g.lambda, q);
      v.check(cls.kind == LimitKind::finite && rel(at6, g.limit) <= 0.05,
              fmt("lambda=%.4g %s, value %.5g at r=1e-6 vs %g", g.lambda,
                  std::string(limit_kind_name(cls.kind)).c_str(), at6, g.limit));
    }
  }
}

CriterionResult c1() {
  Verdict v;
  const double a = c_at(1e-4, 0.25), b = c_at(1e-4, 0.5);
  v.check(rel(a, 1.0) <= 0.02, fmt("lambda=0.25: %.10g (%.7f%% from 1)", a, 100.0 * rel(a, 1.0)));
  v.check(rel(b, 2.0) <= 0.02, fmt("lambda=0.5: %.10g (%.7f%% from 2)", b, 100.0 * rel(b, 2.0)));
  const double r3 = c_at(1e-3, 0.75), r4 = c_at(1e-4, 0.75), r5 = c_at(1e-5, 0.75);
  v.check(r4 > 1e2 && r4 / r3 >= 2.0 && r5 / r4 >= 2.0,
          fmt("lambda=0.75: %.6g, %.6g, %.6g", r3, r4, r5));
  return {1, kTitles[0], v.pass, v.text()};
}

CriterionResult c2(const AcceptanceOptions& opt) {
  Verdict v;
  const SweepTable t = limit_sweep({0.15, 0.25, 0.5}, {Quantity::s}, opt.threads);
  check_regimes(v, t, Quantity::s, {{0.15, 1.0}, {0.25, std::sqrt(2.0)}, {0.5, INFINITY}});
  return {2, kTitles[1], v.pass, v.text()};
}

CriterionResult c3(const AcceptanceOptions& opt) {
  Verdict v;
  const SweepTable t = limit_sweep({0.15, 0.25, 0.5, 0.75, 0.85}, {Quantity::kappa_c}, opt.threads);
  check_regimes(v, t, Quantity::kappa_c,
                {{0.15, -4.0}, {0.25, -8.0}, {0.5, -INFINITY}, {0.75, -8.0}, {0.85, -4.0}});
  return {3, kTitles[2], v.pass, v.text()};
}

CriterionResult c4(const AcceptanceOptions& opt) {
  Verdict v;
  const std::vector<Regime> regimes = {{0.10, -4.0},      {1.0 / 6.0, -12.0}, {0.25, -INFINITY},
                                       {1.0 / 3.0, -4.0}, {0.5, 4.0},         {2.0 / 3.0, -4.0},
                                       {0.75, -INFINITY}, {5.0 / 6.0, -12.0}, {0.90, -4.0}};
  std::vector<double> lambdas;
  for (const auto& g : regimes) lambdas.push_back(g.lambda);
  const SweepTable t = limit_sweep(lambdas, {Quantity::kappa_s}, opt.threads);
  check_regimes(v, t, Quantity::kappa_s, regimes);
  const double k49 = sample(1e-6, cplx(std::pow(1e-6, 4.0 / 9.0), 0.0), default_truncation()).kappa_s;
  v.check(k49 > 3.5, fmt("kappa_s(r^(4/9)) = %.6g at r=1e-6", k49));
  return {4, kTitles[3], v.pass, v.text()};
}

CriterionResult c5(const AcceptanceOptions& opt) {
  Verdict v;
  std::mt19937_64 rng(20240605);
  const int per_r = opt.quick ? 10 : 100;
  double worst = 0.0;
  for (double r : {0.2, 0.5, 0.8}) {
    const auto ctx = elliptic::make_elliptic_context(r);
    std::uniform_real_distribution<double> lam(0.0, 1.0), arg(-kPi, kPi);
    for (int i = 0; i < per_r; ++i) {
      double l = lam(rng);
      while (l == 0.0) l = lam(rng);
      const cplx z = std::polar(std::pow(r, l), arg(rng));
      const double a = sample(r, z, default_truncation()).s;
      const double b = szego_metric_wp(ctx, z);
      worst = std::max(worst, rel(a, b));
    }
  }
  v.check(worst <= 1e-8, fmt("max relative difference %.3g over %d points", worst, 3 * per_r));
  return {5, kTitles[4], v.pass, v.text()};
}

CriterionResult c6(const AcceptanceOptions& opt) {
  Verdict v;
  const std::vector<double> grid = {1e-2, 1e-3, 1e-4, 1e-5, 1e-6};
  struct Seq {
    const char* name;
    double lambda;
    int j;
  };
  for (const Seq& s : {Seq{"J0", 0.3, 0}, Seq{"J1", 0.4, 1}, Seq{"J2", 0.4, 2}}) {
    std::vector<double> ratio;
    for (double r : grid) {
      const JOnAr j = j_functions_on_A_r(r, s.lambda, default_truncation());
      const double a0 = asymptotic_N(r, s.lambda, 0), a1 = asymptotic_N(r, s.lambda, 1),
                   a2 = asymptotic_N(r, s.lambda, 2);
      const JFunctions& one = j.at_one;
      ratio.push_back(s.j == 0 ? one.J0 / a0 : s.j == 1 ? one.J1 / (a1 / a0) : one.J2 / (a2 / a1));
    }
    bool monotone = true;
    for (std::size_t i = 1; i < ratio.size(); ++i) {
      monotone = monotone && std::abs(ratio[i] - 1.0) <= std::abs(ratio[i - 1] - 1.0);
    }
    v.check(monotone && std::abs(ratio.back() - 1.0) <= 0.01,
            fmt("%s ratio at lambda=%g: %.6g -> %.10g%s", s.name, s.lambda, ratio.front(),
                ratio.back(), monotone ? "" : " (not monotone)"));
  }
  (void)opt;
  return {6, kTitles[5], v.pass, v.text()};
}

CriterionResult c7(const AcceptanceOptions& opt) {
  Verdict v;
  std::mt19937_64 rng(7);
  const int n = opt.quick ? 20 : 100;
  double ode = 0.0, zeta_q = 0.0, sigma_q = 0.0, sum_e = 0.0, lattice = 0.0;
  bool ordered = true;
  for (double r : {0.2, 0.5, 0.8}) {
    const auto ctx = elliptic::make_elliptic_context(r);
    std::uniform_real_distribution<double> ux(-ctx.omega1, ctx.omega1), uy(-kPi, kPi);
    for (int i = 0; i < n; ++i) {
      cplx z(ux(rng), uy(rng));
      if (std::abs(z) < 1e-2) z += 0.1;
      ode = std::max(ode, elliptic::ode_residual(ctx, z));
      for (int k : {1, 3}) {
        const cplx w = ctx.omega(k);
        zeta_q = std::max(zeta_q, std::abs(elliptic::zeta(ctx, z + 2.0 * w) - elliptic::zeta(ctx, z) -
                                           2.0 * ctx.eta(k)));
        const cplx s0 = elliptic::sigma(ctx, z);
        const cplx s1 = elliptic::sigma(ctx, z + 2.0 * w);
        sigma_q = std::max(sigma_q, std::abs(s1 + std::exp(2.0 * ctx.eta(k) * (z + w)) * s0) /
                                        std::max(std::abs(s1), std::abs(s0)));
      }
      if (i < (opt.quick ? 2 : 5)) {
        lattice = std::max(lattice, std::abs(reference::lattice_wp(r, z) - elliptic::wp(ctx, z)) /
                                        std::max(1.0, std::abs(elliptic::wp(ctx, z))));
      }
    }
    ordered = ordered && ctx.e1 > ctx.e2 && ctx.e2 > ctx.e3;
    sum_e = std::max(sum_e, static_cast<double>(std::abs(ctx.e1 + ctx.e2 + ctx.e3)));
  }
  v.check(ode <= 1e-9, fmt("ODE residual %.2g", ode));
  v.check(zeta_q <= 1e-10, fmt("zeta quasi-period %.2g", zeta_q));
  v.check(sigma_q <= 1e-10, fmt("sigma quasi-period %.2g", sigma_q));
  v.check(ordered, "e1 > e2 > e3");
  v.check(sum_e <= 1e-12, fmt("|e1+e2+e3| %.2g", sum_e));
  v.check(lattice <= 1e-8, fmt("lattice sum %.2g", lattice));
  return {7, kTitles[6], v.pass, v.text()};
}

CriterionResult c8() {
  Verdict v;
  const double r = 0.5;
  const auto tr = default_truncation();
  std::vector<double> outer, inner;
  for (int k = 3; k <= 12; ++k) {
    outer.push_back(1.0 - std::ldexp(1.0, -k));
    inner.push_back(r / outer.back());  // image under z -> r / z
  }
  for (Boundary b : {Boundary::outer, Boundary::inner}) {
    const auto& rho = b == Boundary::outer ? outer : inner;
    const BoundaryProbe p = boundary_asymptotics_probe(r, 0, 0, rho, b, ProbeQuantity::kernel, tr);
    // Divide out |d psi| so both circles share the limit 1/(2 pi).
    const double grad = b == Boundary::outer ? 1.0 : r;
    const double kernel = p.values.back() / grad;
    const MetricSample m = sample(r, cplx(rho.back(), 0.0), tr);
    const double k2 = higher_curvature(r, cplx(rho.back(), 0.0), 2, Metric::caratheodory, tr);
    const char* name = boundary_name(b);
    v.check(rel(kernel, 1.0 / (2.0 * kPi)) <= 0.01, fmt("%s S(-psi)/|d psi| %.7g", name, kernel));
    v.check(rel(m.kappa_c, -4.0) <= 0.02, fmt("%s kappa_c %.6g", name, m.kappa_c));
    v.check(rel(m.kappa_s, -4.0) <= 0.02, fmt("%s kappa_s %.6g", name, m.kappa_s));
    v.check(rel(k2, -16.0) <= 0.05, fmt("%s kappa2_c %.6g", name, k2));
  }
  return {8, kTitles[7], v.pass, v.text()};
}

CriterionResult c9(const AcceptanceOptions& opt) {
  Verdict v;
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> log_r(std::log(1e-4), std::log(0.9)), lam(0.01, 0.99),
      arg(-kPi, kPi);
  const int n = opt.quick ? 100 : 1000;
  // Relative slack for roundoff where a bound is attained asymptotically.
  constexpr double kSlack = 1e-9;
  int bad_c = 0, bad_s = 0, bad_ratio = 0;
  double max_kc = -INFINITY, max_ks = -INFINITY, min_ratio = INFINITY;
  for (int i = 0; i < n; ++i) {
    const double r = std::exp(log_r(rng));
    const cplx z = std::polar(std::pow(r, lam(rng)), arg(rng));
    const MetricSample m = sample(r, z, default_truncation());
    bad_c += m.kappa_c > -4.0 * (1.0 - kSlack);
    bad_s += m.kappa_s > 4.0 * (1.0 + kSlack);
    bad_ratio += m.s < m.c * (1.0 - kSlack);
    max_kc = std::max(max_kc, m.kappa_c);
    max_ks = std::max(max_ks, m.kappa_s);
    min_ratio = std::min(min_ratio, m.s / m.c);
  }
  v.check(bad_c == 0, fmt("kappa_c <= -4 (max %.12g)", max_kc));
  v.check(bad_s == 0, fmt("kappa_s <= 4 (max %.12g)", max_ks));
  v.check(bad_ratio == 0, fmt("s >= c (min s/c %.12g) at %d points", min_ratio, n));
  return {9, kTitles[8], v.pass, v.text()};
}

CriterionResult c10() {
  Verdict v;
  const auto tr = default_truncation();
  double rho_err = 0.0, residual = 0.0, drift = 0.0;
  for (double r : {0.05, 0.1, 0.3}) {
    for (Metric w : {Metric::caratheodory, Metric::szego}) {
      const ClosedGeodesic g = find_closed_geodesic(r, w, tr);
      rho_err = std::max(rho_err, std::abs(g.rho_star - std::sqrt(r)));
      residual = std::max(residual, std::abs(g.closure_residual));
      IntegrateOptions io;
      io.t_end = g.length;
      const GeodesicTrace t = integrate(r, w, launch_state(r, w, g.rho_star, kPi / 2.0, tr), io, tr);
      drift = std::max({drift, t.speed_drift, t.angular_drift});
    }
  }
  // A generic trace through the neck region of r = 0.1.
  for (Metric w : {Metric::caratheodory, Metric::szego}) {
    IntegrateOptions io;
    io.t_end = 200.0;
    io.band_lo = 0.11;
    io.band_hi = 0.99;
    const GeodesicTrace t = integrate(0.1, w, launch_state(0.1, w, 0.4, 1.9, tr), io, tr);
    drift = std::max({drift, t.speed_drift, t.angular_drift});
  }
  // A long orbit around the stable circle of the r = 0.01 Szegő metric.
  std::size_t steps = 0;
  {
    const double r = 0.01, rho = 0.1;
    IntegrateOptions io;
    io.t_end = 100.0 * 2.0 * kPi * rho * radial_profile(r, rho, Metric::szego, tr).m;
    io.band_lo = 0.09;
    io.band_hi = 0.11;
    const GeodesicTrace t = integrate(r, Metric::szego, launch_state(r, Metric::szego, 0.103, 1.5, tr), io, tr);
    drift = std::max({drift, t.speed_drift, t.angular_drift});
    steps = t.steps;
    v.check(!t.escaped && steps >= 10000, fmt("long orbit %zu steps", steps));
  }
  v.check(rho_err <= 1e-6, fmt("|rho* - sqrt r| %.2g", rho_err));
  v.check(residual <= 1e-6, fmt("closure residual %.2g", residual));
  v.check(drift <= 1e-7, fmt("first-integral drift %.2g", drift));

  const SpiralReport s = spiral_trace(0.1, Metric::szego, 0.5, SpiralOptions{}, tr);
  v.check(s.confined && s.trace.winding >= 20 && s.trace.rho_min >= 0.12 && s.trace.rho_max <= 0.98 &&
              !s.closed && s.closure_distance > 1e-3,
          fmt("spiral: %d windings in [%.4f, %.4f], closure distance %.3g", s.trace.winding,
              s.trace.rho_min, s.trace.rho_max, s.closure_distance));
  return {10, kTitles[9], v.pass, v.text()};
}

}  // namespace

CriterionResult run_criterion(int id, const AcceptanceOptions& opt) {
  const auto t0 = std::chrono::steady_clock::now();
  CriterionResult out;
  try {
    switch (id) {
      case 1: out = c1(); break;
      case 2: out = c2(opt); break;
      case 3: out = c3(opt); break;
      case 4: out = c4(opt); break;
      case 5: out = c5(opt); break;
      case 6: out = c6(opt); break;
      case 7: out = c7(opt); break;
      case 8: out = c8(); break;
      case 9: out = c9(opt); break;
      case 10: out = c10(); break;
      default: throw DomainError("criterion id must lie in [1, 10]");
    }
  } catch (const Error& e) {
    if (id < 1 || id > 10) throw;
    out = {id, kTitles[id - 1], false, std::string("error: ") + e.what()};
  }
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt,
                                            const std::function<void(const CriterionResult&)>& on_result) {
  std::vector<CriterionResult> out;
  double total = 0.0;
  for (int id = 1; id <= 10; ++id) {
    out.push_back(run_criterion(id, opt));
    total += out.back().seconds;
    if (on_result) on_result(out.back());
  }
  const double budget = opt.quick ? 60.0 : 600.0;
  CriterionResult last{11, kTitles[10], total <= budget,
                       fmt("%s suite took %.1f s (budget %.0f s)", opt.quick ? "quick" : "full", total, budget),
                       0.0};
  out.push_back(last);
  if (on_result) on_result(out.back());
  return out;
}

std::string format_result(const CriterionResult& r) {
  return fmt("%s [%2d] %s: %s (%.2f s)", r.pass ? "PASS" : "FAIL", r.id, r.title.c_str(),
             r.detail.c_str(), r.seconds);
}

}  // namespace annulus
