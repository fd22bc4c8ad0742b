// Command-line driver: eval, sweep, geodesic, elliptic, selftest.
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "annulus/acceptance.hpp"
#include "annulus/elliptic.hpp"
#include "annulus/errors.hpp"
#include "annulus/geodesics.hpp"
#include "annulus/metrics.hpp"
#include "annulus/output.hpp"
#include "annulus/variation.hpp"

using namespace annulus;

namespace {

enum Exit { kOk = 0, kDomain = 2, kConvergence = 3, kAllRowsFailed = 4, kSelftest = 5 };

struct Common {
  std::string format = "csv";
  std::string output;
  std::optional<double> tail_tol;
  std::optional<int> n_max;
  unsigned threads = 0;

  Truncation truncation() const {
    Truncation tr = default_truncation();
    if (tail_tol) {
      if (!(*tail_tol > 0.0)) throw DomainError("--tail-tol must be positive");
      tr.tail_tol = *tail_tol;
    }
    if (n_max) {
      if (*n_max < 1 || *n_max > tr.hard_cap) throw DomainError("--n-max must lie in [1, 2^20]");
      tr.n_max = *n_max;
    }
    return tr;
  }

  void emit(const Table& t) const {
    const Format f = parse_format(format);
    if (output.empty()) {
      write_table(std::cout, t, f);
      return;
    }
    std::ofstream out(output, std::ios::binary);
    if (!out) throw DomainError("cannot open output file '" + output + "'");
    write_table(out, t, f);
  }
};

// Accepts decimals and fractions such as 1/6.
double parse_real(const std::string& s) {
  const auto slash = s.find('/');
  try {
    std::size_t used = 0;
    if (slash == std::string::npos) {
      const double v = std::stod(s, &used);
      if (used == s.size()) return v;
    } else {
      const double a = std::stod(s.substr(0, slash), &used);
      if (used == slash) {
        const std::string rest = s.substr(slash + 1);
        const double b = std::stod(rest, &used);
        if (used == rest.size() && b != 0.0) return a / b;
      }
    }
  } catch (const std::exception&) {
  }
  throw DomainError("cannot parse number '" + s + "'");
}

std::vector<double> parse_reals(const std::vector<std::string>& items) {
  std::vector<double> out;
  for (const auto& s : items) out.push_back(parse_real(s));
  return out;
}

Metric parse_metric(const std::string& s) {
  if (s == "c") return Metric::caratheodory;
  if (s == "s") return Metric::szego;
  throw DomainError("metric must be c or s");
}

void require_r(double r) {
  if (!(r > 0.0 && r < 1.0)) throw DomainError("inner radius r must lie in (0, 1)");
}

int cmd_eval(const Common& common, double r, const std::string& z_text) {
  require_r(r);
  const cplx z = parse_complex(z_text);
  const MetricSample m = sample(r, z, common.truncation());
  Table t;
  t.columns = {"r", "z_re", "z_im", "lambda", "S", "two_pi_S", "c", "s", "kappa_c", "kappa_s",
               "pairs_used", "tail_bound"};
  t.rows.push_back({r, z.real(), z.imag(), m.lambda, m.S, 2.0 * std::numbers::pi * m.S, m.c, m.s,
                    m.kappa_c, m.kappa_s, static_cast<long long>(m.tail.pairs_used), m.tail.tail_bound});
  common.emit(t);
  return kOk;
}

int cmd_sweep(const Common& common, bool extended, bool classify,
              const std::vector<std::string>& r_list, const std::vector<std::string>& lambda_list,
              const std::vector<std::string>& quantity_list) {
  SweepSpec spec = default_sweep_spec(extended);
  if (!r_list.empty()) spec.r_values = parse_reals(r_list);
  if (!lambda_list.empty()) spec.lambda_values = parse_reals(lambda_list);
  if (!quantity_list.empty()) {
    spec.quantities.clear();
    for (const auto& q : quantity_list) spec.quantities.push_back(parse_quantity(q));
  }
  spec.validate();
  const auto tr = common.truncation();
  const std::vector<SweepRow> rows = run_sweep(spec, tr, common.threads);
  std::size_t good = 0;
  for (const auto& row : rows) good += row.ok();

  Table t;
  t.metadata = {{"command", "sweep"}, {"tail_tol", format_double(tr.tail_tol)}};
  if (!classify) {
    t.columns = {"r", "lambda"};
    for (Quantity q : spec.quantities) t.columns.emplace_back(quantity_name(q));
    t.columns.insert(t.columns.end(), {"pairs_used", "tail_bound", "status"});
    for (const auto& row : rows) {
      std::vector<Cell> cells{row.r, row.lambda};
      for (double v : row.values) cells.emplace_back(v);
      cells.emplace_back(static_cast<long long>(row.pairs_used));
      cells.emplace_back(row.tail_bound);
      cells.emplace_back(row.status);
      t.rows.push_back(std::move(cells));
    }
  } else {
    t.columns = {"lambda", "quantity", "limit", "value", "reason"};
    for (double lambda : spec.lambda_values) {
      for (std::size_t qi = 0; qi < spec.quantities.size(); ++qi) {
        std::vector<double> rs, vs;
        for (const auto& row : rows) {
          if (row.lambda == lambda && row.ok()) {
            rs.push_back(row.r);
            vs.push_back(row.values[qi]);
          }
        }
        LimitClass cls;
        try {
          cls = limit_classifier(rs, vs);
        } catch (const DomainError& e) {
          cls.reason = e.what();
        }
        t.rows.push_back({lambda, std::string(quantity_name(spec.quantities[qi])),
                          std::string(limit_kind_name(cls.kind)), cls.value, cls.reason});
      }
    }
  }
  common.emit(t);
  return good == 0 ? kAllRowsFailed : kOk;
}

int cmd_geodesic(const Common& common, double r, const std::string& metric, bool closed,
                 bool spiral, const std::string& z0_text, double angle, double t_end) {
  require_r(r);
  const Metric w = parse_metric(metric);
  const auto tr = common.truncation();
  Table t;
  if (closed) {
    const ClosedGeodesic g = find_closed_geodesic(r, w, tr);
    t.columns = {"r", "metric", "rho_star", "length", "closure_residual"};
    t.rows.push_back({r, std::string(metric_name(w)), g.rho_star, g.length, g.closure_residual});
    common.emit(t);
    return kOk;
  }
  const cplx z0 = parse_complex(z0_text);
  GeodesicTrace trace;
  if (spiral) {
    SpiralOptions so;
    so.t_end = t_end;
    const SpiralReport s = spiral_trace(r, w, z0, so, tr);
    t.metadata = {{"launch_angle", format_double(s.launch_angle)},
                  {"angular_momentum", format_double(s.angular_momentum)},
                  {"band", format_double(s.band_lo) + ".." + format_double(s.band_hi)},
                  {"confined", s.confined ? "true" : "false"},
                  {"closure_distance", format_double(s.closure_distance)},
                  {"closed", s.closed ? "true" : "false"}};
    trace = s.trace;
  } else {
    if (!(t_end > 0.0)) throw DomainError("--t-end must be positive");
    IntegrateOptions io;
    io.t_end = t_end;
    trace = integrate(r, w, launch_state(r, w, z0, angle, tr), io, tr);
  }
  t.metadata.insert(t.metadata.end(),
                    {{"winding", std::to_string(trace.winding)},
                     {"length", format_double(trace.length)},
                     {"rho_min", format_double(trace.rho_min)},
                     {"rho_max", format_double(trace.rho_max)},
                     {"speed_drift", format_double(trace.speed_drift)},
                     {"angular_drift", format_double(trace.angular_drift)},
                     {"escaped", trace.escaped ? trace.escape_reason : "no"}});
  t.columns = {"t", "re_z", "im_z", "abs_z", "speed", "winding"};
  for (const auto& p : trace.samples) {
    t.rows.push_back({p.t, p.z.real(), p.z.imag(), std::abs(p.z), p.speed, static_cast<long long>(p.winding)});
  }
  common.emit(t);
  return kOk;
}

int cmd_elliptic(const Common& common, double r, const std::string& z_text) {
  require_r(r);
  const cplx z = parse_complex(z_text);
  const auto ctx = elliptic::make_elliptic_context(r);
  Table t;
  t.columns = {"quantity", "re", "im"};
  auto add = [&](const char* name, cplx v) { t.rows.push_back({std::string(name), v.real(), v.imag()}); };
  add("wp", elliptic::wp(ctx, z));
  add("wp_prime", elliptic::wp_prime(ctx, z));
  add("zeta", elliptic::zeta(ctx, z));
  add("sigma", elliptic::sigma(ctx, z));
  add("e1", static_cast<double>(ctx.e1));
  add("e2", static_cast<double>(ctx.e2));
  add("e3", static_cast<double>(ctx.e3));
  add("g2", ctx.g2);
  add("g3", ctx.g3);
  add("eta1", ctx.eta(1));
  add("eta2", ctx.eta(2));
  add("eta3", ctx.eta(3));
  add("omega1", ctx.omega(1));
  add("omega3", ctx.omega(3));
  add("ode_residual", elliptic::ode_residual(ctx, z));
  common.emit(t);
  return kOk;
}

int cmd_selftest(bool quick, unsigned threads) {
  AcceptanceOptions opt;
  opt.quick = quick;
  opt.threads = threads;
  bool all = true;
  run_acceptance(opt, [&](const CriterionResult& r) {
    all = all && r.pass;
    std::printf("%s\n", format_result(r).c_str());
    std::fflush(stdout);
  });
  return all ? kOk : kSelftest;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Szegő kernel, Carathéodory and Szegő metrics on annuli"};
  app.set_version_flag("--version", "annulus-metrics " + std::string(kVersion));
  app.require_subcommand(1, 1);

  Common common;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", common.format, "csv or json")->capture_default_str();
    sub->add_option("--output,-o", common.output, "write to a file instead of stdout");
    sub->add_option("--tail-tol", common.tail_tol, "relative tail tolerance of the series");
    sub->add_option("--n-max", common.n_max, "initial number of series term pairs");
  };

  double r = 0.0;
  std::string z = "0", metric = "s";

  auto* eval = app.add_subcommand("eval", "metrics and curvatures at one point");
  eval->add_option("--r", r, "inner radius")->required();
  eval->add_option("--z", z, "point as a+bi")->required();
  add_common(eval);

  bool extended = false, classify = false;
  std::vector<std::string> r_list, lambda_list, quantity_list;
  auto* sweep = app.add_subcommand("sweep", "quantities at |z| = r^lambda over a grid");
  sweep->add_flag("--extended", extended, "extend the default r grid to 1e-8");
  sweep->add_flag("--classify", classify, "report the r -> 0 limit per lambda and quantity");
  sweep->add_option("--r", r_list, "r values, strictly decreasing")->delimiter(',');
  sweep->add_option("--lambda", lambda_list, "lambda values, fractions allowed")->delimiter(',');
  sweep->add_option("--quantities", quantity_list,
                    "c, s, kappa_c, kappa_s, N0, N1, N2, ratio_s_over_c")
      ->delimiter(',');
  sweep->add_option("--threads", common.threads, "workers, 0 = all cores");
  add_common(sweep);

  bool closed = false, spiral = false;
  std::string z0 = "0.5";
  double angle = std::numbers::pi / 2.0, t_end = 0.0;
  auto* geo = app.add_subcommand("geodesic", "closed geodesic, spiral or a single trace");
  geo->add_option("--r", r, "inner radius")->required();
  geo->add_option("--metric", metric, "c or s")->capture_default_str();
  geo->add_flag("--closed", closed, "report the closed geodesic");
  geo->add_flag("--spiral", spiral, "trace the spiral through --z0");
  geo->add_option("--z0", z0, "start point as a+bi")->capture_default_str();
  geo->add_option("--angle", angle, "launch angle from the outward radial direction");
  geo->add_option("--t-end", t_end, "parameter length of the trace");
  add_common(geo);

  auto* ell = app.add_subcommand("elliptic", "Weierstrass functions of the annulus lattice");
  ell->add_option("--r", r, "inner radius")->required();
  ell->add_option("--z", z, "argument as a+bi")->required();
  add_common(ell);

  bool quick = false;
  auto* self = app.add_subcommand("selftest", "run the acceptance suite");
  self->add_flag("--quick", quick, "reduced point counts");
  self->add_option("--threads", common.threads, "workers, 0 = all cores");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kDomain;
  }

  try {
    if (*eval) return cmd_eval(common, r, z);
    if (*sweep) return cmd_sweep(common, extended, classify, r_list, lambda_list, quantity_list);
    if (*geo) return cmd_geodesic(common, r, metric, closed, spiral, z0, angle, t_end);
    if (*ell) return cmd_elliptic(common, r, z);
    return cmd_selftest(quick, common.threads);
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDomain;
  } catch (const ShapeError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDomain;
  } catch (const SingularJetError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDomain;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConvergence;
  }
}
