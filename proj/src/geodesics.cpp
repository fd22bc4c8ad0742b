#include "annulus/geodesics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include <boost/math/tools/roots.hpp>
#include <boost/numeric/odeint/stepper/runge_kutta_dopri5.hpp>

#include "annulus/errors.hpp"

namespace annulus {

namespace {

constexpr double kPi = std::numbers::pi;

using State = std::array<double, 4>;  // Re z, Im z, Re v, Im v

cplx pos(const State& x) { return {x[0], x[1]}; }
cplx vel(const State& x) { return {x[2], x[3]}; }

void require_radius(double r) {
  if (!(r > 0.0 && r < 1.0)) throw DomainError("inner radius r must lie in (0, 1)");
}

struct Integrals {
  double m;
  double energy;   // m |v|
  double angular;  // m^2 Im(conj(z) v)
};

Integrals integrals(double r, Metric which, cplx z, cplx v, const Truncation& tr) {
  const double m = radial_profile(r, std::abs(z), which, tr).m;
  return {m, m * std::abs(v), m * m * (std::conj(z) * v).imag()};
}

// Sign of Im z with zero inheriting the previous sign.
int half_plane(cplx z, int previous) {
  if (z.imag() > 0.0) return 1;
  if (z.imag() < 0.0) return -1;
  return previous;
}

// Signed crossing of the positive real axis between consecutive samples.
int crossing(cplx a, cplx b, int& side) {
  const int next = half_plane(b, side);
  int out = 0;
  if (side != 0 && next != 0 && next != side) {
    const double s = a.imag() / (a.imag() - b.imag());
    const double x = a.real() + s * (b.real() - a.real());
    if (x > 0.0) out = next > side ? 1 : -1;
  }
  side = next;
  return out;
}

}  // namespace

cplx geodesic_rhs(double r, Metric which, const GeodesicState& state, const Truncation& tr) {
  require_radius(r);
  const double rho = std::abs(state.z);
  if (!(rho > r && rho < 1.0)) throw DomainError("geodesic position left the annulus");
  const RadialProfile p = radial_profile(r, rho, which, tr);
  return -2.0 * p.dlogm_dt * std::conj(state.z) * state.v * state.v;
}

GeodesicState launch_state(double r, Metric which, cplx z0, double angle, const Truncation& tr) {
  require_radius(r);
  const double rho = std::abs(z0);
  if (!(rho > r && rho < 1.0)) throw DomainError("launch point must satisfy r < |z0| < 1");
  const double m = radial_profile(r, rho, which, tr).m;
  return {z0, z0 / rho * std::polar(1.0 / m, angle)};
}

GeodesicTrace integrate(double r, Metric which, const GeodesicState& initial,
                        const IntegrateOptions& opt, const Truncation& tr) {
  require_radius(r);
  if (!(std::isfinite(opt.t_end) && opt.t_end > 0.0)) throw DomainError("t_end must be finite and positive");
  if (!(opt.step_tol > 0.0)) throw DomainError("step_tol must be positive");
  const double rho0 = std::abs(initial.z);
  if (!(rho0 > r + opt.collar && rho0 < 1.0 - opt.collar)) {
    throw DomainError("initial position lies in the boundary collar");
  }

  auto system = [&](const State& x, State& dx, double) {
    const cplx a = geodesic_rhs(r, which, {pos(x), vel(x)}, tr);
    dx = {x[2], x[3], a.real(), a.imag()};
  };

  GeodesicTrace out;
  State x{initial.z.real(), initial.z.imag(), initial.v.real(), initial.v.imag()};
  State dxdt{};
  system(x, dxdt, 0.0);
  const Integrals first = integrals(r, which, initial.z, initial.v, tr);
  if (!(first.energy > 0.0)) throw DomainError("initial velocity must be nonzero");
  // Angular momentum is compared on the scale of a tangential launch.
  const double angular_scale = std::max(std::abs(first.angular), first.m * rho0 * first.energy * 1e-3);

  int side = half_plane(initial.z, 0);
  out.samples.push_back({0.0, initial.z, initial.v, first.energy, 0});
  out.rho_min = out.rho_max = rho0;

  boost::numeric::odeint::runge_kutta_dopri5<State> stepper;
  double t = 0.0;
  double dt = std::min(opt.t_end, 1e-2 * first.m * rho0 / first.energy * 2.0 * kPi);
  const double dt_floor = 1e-14 * opt.t_end;
  // Per unit parameter budget for the first integrals.
  const double drift_rate = opt.step_tol;
  double last_speed = first.energy;

  auto escape = [&](const std::string& why) {
    out.escaped = true;
    out.escape_reason = why;
  };

  while (t < opt.t_end) {
    if (out.steps >= opt.max_steps) {
      escape("step budget exhausted");
      break;
    }
    // At least 16 steps per turn so crossings are resolved.
    const double turn = 2.0 * kPi * std::abs(pos(x)) / std::abs(vel(x));
    const double h = std::min({dt, turn / 16.0, opt.t_end - t});
    State xn{}, dxn{}, err{};
    bool ok = true;
    double factor = 0.25;
    Integrals now{};
    try {
      stepper.do_step(system, x, dxdt, t, xn, dxn, h, err);
      double e = 0.0;
      for (int i = 0; i < 4; ++i) {
        e = std::max(e, std::abs(err[i]) / (opt.step_tol * (1.0 + std::abs(xn[i]))));
      }
      now = integrals(r, which, pos(xn), vel(xn), tr);
      const double de = std::abs(now.energy - first.energy) / first.energy;
      const double da = std::abs(now.angular - first.angular) / angular_scale;
      const double budget = drift_rate * std::max(t + h, 1.0);
      factor = std::clamp(0.9 * std::pow(std::max(e, 1e-12), -0.2), 0.2, 5.0);
      if (e > 1.0) {
        ok = false;
      } else if (de > budget || da > budget) {
        ok = false;
        factor = 0.5;
      }
    } catch (const DomainError&) {
      ok = false;
    } catch (const ConvergenceError&) {
      // Only happens within ~1e-5 of a boundary circle.
      escape("kernel series too long near the boundary");
      break;
    }
    if (!ok) {
      ++out.rejected;
      dt = h * factor;
      if (dt < dt_floor) {
        escape("step size underflow near the boundary");
        break;
      }
      continue;
    }

    const cplx z_prev = pos(x);
    x = xn;
    dxdt = dxn;
    t += h;
    ++out.steps;
    dt = h * factor;

    const cplx z = pos(x);
    const double rho = std::abs(z);
    out.winding += crossing(z_prev, z, side);
    out.samples.push_back({t, z, vel(x), now.energy, out.winding});
    out.length += 0.5 * h * (last_speed + now.energy);
    last_speed = now.energy;
    out.rho_min = std::min(out.rho_min, rho);
    out.rho_max = std::max(out.rho_max, rho);
    out.speed_drift = std::max(out.speed_drift, std::abs(now.energy - first.energy) / first.energy);
    out.angular_drift =
        std::max(out.angular_drift, std::abs(now.angular - first.angular) / angular_scale);

    if (rho <= r + opt.collar) {
      escape("inner collar");
      break;
    }
    if (rho >= 1.0 - opt.collar) {
      escape("outer collar");
      break;
    }
    if (opt.band_lo && rho < *opt.band_lo) {
      escape("below band");
      break;
    }
    if (opt.band_hi && rho > *opt.band_hi) {
      escape("above band");
      break;
    }
  }
  return out;
}

ClosedGeodesic find_closed_geodesic(double r, Metric which, const Truncation& tr) {
  require_radius(r);
  const double L = std::log(r);
  constexpr int kGrid = 64;
  // rho = r^u on a uniform grid in u.
  std::array<double, kGrid + 1> loop{};
  int best = 1;
  for (int k = 1; k < kGrid; ++k) {
    const double rho = std::exp(L * k / kGrid);
    loop[k] = rho * radial_profile(r, rho, which, tr).m;
    if (loop[k] < loop[best]) best = k;
  }
  if (best == 1 || best == kGrid - 1) {
    throw InternalConsistencyError("loop length is minimal at the edge of the annulus");
  }
  auto g = [&](double u) { return closure_residual(r, std::exp(L * u), which, tr); };
  // g < 0 inside (u decreasing means rho increasing), so bracket in u.
  double lo = static_cast<double>(best - 1) / kGrid, hi = static_cast<double>(best + 1) / kGrid;
  double glo = g(lo), ghi = g(hi);
  if (!(glo * ghi < 0.0)) {
    throw InternalConsistencyError("closure residual does not change sign around the minimum");
  }
  std::uintmax_t iters = 200;
  const auto root = boost::math::tools::toms748_solve(
      g, lo, hi, glo, ghi, boost::math::tools::eps_tolerance<double>(52), iters);
  const double u = 0.5 * (root.first + root.second);

  ClosedGeodesic out;
  out.rho_star = std::exp(L * u);
  out.closure_residual = closure_residual(r, out.rho_star, which, tr);
  out.length = 2.0 * kPi * out.rho_star * radial_profile(r, out.rho_star, which, tr).m;
  return out;
}

namespace {

// Cubic Hermite interpolation of position and velocity between two samples.
struct Segment {
  cplx z0, v0, a0, z1, v1, a1;
  double h;

  cplx z(double s) const {
    const double s2 = s * s, s3 = s2 * s;
    return (2 * s3 - 3 * s2 + 1) * z0 + (s3 - 2 * s2 + s) * h * v0 + (-2 * s3 + 3 * s2) * z1 +
           (s3 - s2) * h * v1;
  }
  cplx v(double s) const {
    const double s2 = s * s, s3 = s2 * s;
    return (2 * s3 - 3 * s2 + 1) * v0 + (s3 - 2 * s2 + s) * h * a0 + (-2 * s3 + 3 * s2) * v1 +
           (s3 - s2) * h * a1;
  }
};

// Minimum of |d rho| + |d unit velocity| over returns to the ray through z0.
double closure_distance(double r, Metric which, const GeodesicTrace& tr_, const Truncation& tr) {
  const auto& pts = tr_.samples;
  if (pts.size() < 2) return 0.0;
  const cplx rot = std::conj(pts.front().z) / std::abs(pts.front().z);
  const double rho0 = std::abs(pts.front().z);
  const cplx dir0 = pts.front().v * rot / std::abs(pts.front().v);
  double best = std::numeric_limits<double>::infinity();
  int side = 0;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const cplx a = pts[i - 1].z * rot, b = pts[i].z * rot;
    if (crossing(a, b, side) == 0) continue;
    const Segment seg{a,
                      pts[i - 1].v * rot,
                      geodesic_rhs(r, which, {pts[i - 1].z, pts[i - 1].v}, tr) * rot,
                      b,
                      pts[i].v * rot,
                      geodesic_rhs(r, which, {pts[i].z, pts[i].v}, tr) * rot,
                      pts[i].t - pts[i - 1].t};
    double lo = 0.0, hi = 1.0;
    const bool up = a.imag() < 0.0;
    for (int it = 0; it < 60; ++it) {
      const double mid = 0.5 * (lo + hi);
      ((seg.z(mid).imag() < 0.0) == up ? lo : hi) = mid;
    }
    const double s = 0.5 * (lo + hi);
    const cplx v = seg.v(s);
    best = std::min(best, std::abs(std::abs(seg.z(s)) - rho0) + std::abs(v / std::abs(v) - dir0));
  }
  return best;
}

}  // namespace

SpiralReport spiral_trace(double r, Metric which, cplx z0, const SpiralOptions& opt,
                          const Truncation& tr) {
  require_radius(r);
  const double rho0 = std::abs(z0);
  SpiralReport out;
  out.band_lo = r + opt.band_margin;
  out.band_hi = 1.0 - opt.band_margin;
  if (!(rho0 > out.band_lo && rho0 < out.band_hi)) {
    throw DomainError("launch point must lie inside the band");
  }
  const ClosedGeodesic closed = find_closed_geodesic(r, which, tr);
  if (std::abs(rho0 - closed.rho_star) <= 1e-9 * closed.rho_star) {
    throw DomainError("launch point lies on the closed geodesic");
  }
  const double K = closed.length / (2.0 * kPi);
  const double R0 = rho0 * radial_profile(r, rho0, which, tr).m;
  if (!(R0 > K)) throw InternalConsistencyError("loop length at z0 is below the closed geodesic");
  out.angular_momentum = K;
  // Head toward the closed circle.
  const double inward = rho0 > closed.rho_star ? -1.0 : 1.0;
  out.launch_angle = inward < 0.0 ? kPi - std::asin(K / R0) : std::asin(K / R0);
  const double t_end = opt.t_end > 0.0 ? opt.t_end : 25.0 * 2.0 * kPi * R0;

  // State (rho, theta) with rho' = +-(1/m) sqrt(1 - K^2/R^2), theta' = K / R^2.
  using Reduced = std::array<double, 2>;
  auto rates = [&](const Reduced& x) {
    const double rho = x[0];
    const double m = radial_profile(r, rho, which, tr).m;
    const double R = rho * m;
    const double gap = std::max(0.0, (R - K) * (R + K)) / (R * R);
    return Reduced{inward * std::sqrt(gap) / m, K / (R * R)};
  };
  auto system = [&](const Reduced& x, Reduced& dx, double) { dx = rates(x); };
  auto sample_at = [&](double t, const Reduced& x, const Reduced& dx) {
    const cplx e = std::polar(1.0, x[1]);
    const cplx z = x[0] * e;
    const cplx v = (dx[0] + cplx(0.0, x[0] * dx[1])) * e;
    const Integrals in = integrals(r, which, z, v, tr);
    return std::pair{TracePoint{t, z, v, in.energy, 0}, in};
  };

  const double theta0 = std::arg(z0);
  Reduced x{rho0, theta0};
  Reduced dx = rates(x);
  GeodesicTrace& trace = out.trace;
  auto [p0, in0] = sample_at(0.0, x, dx);
  trace.samples.push_back(p0);
  trace.rho_min = trace.rho_max = rho0;
  int side = half_plane(z0, 0);

  boost::numeric::odeint::runge_kutta_dopri5<Reduced> stepper;
  double t = 0.0, dt = 1e-3 * t_end;
  double last_speed = p0.speed;
  out.confined = true;
  while (t < t_end) {
    const double h = std::min({dt, 2.0 * kPi * K / 16.0, t_end - t});
    Reduced xn{}, dxn{}, err{};
    stepper.do_step(system, x, dx, t, xn, dxn, h, err);
    const double e = std::max(std::abs(err[0]) / (opt.step_tol * (1.0 + xn[0])),
                              std::abs(err[1]) / (opt.step_tol * (1.0 + std::abs(xn[1]))));
    const double factor = std::clamp(0.9 * std::pow(std::max(e, 1e-12), -0.2), 0.2, 5.0);
    dt = h * factor;
    if (e > 1.0) {
      ++trace.rejected;
      continue;
    }
    const cplx z_prev = trace.samples.back().z;
    x = xn;
    dx = dxn;
    t += h;
    ++trace.steps;
    auto [p, in] = sample_at(t, x, dx);
    trace.winding += crossing(z_prev, p.z, side);
    p.winding = trace.winding;
    trace.samples.push_back(p);
    trace.length += 0.5 * h * (last_speed + p.speed);
    last_speed = p.speed;
    trace.rho_min = std::min(trace.rho_min, x[0]);
    trace.rho_max = std::max(trace.rho_max, x[0]);
    trace.speed_drift = std::max(trace.speed_drift, std::abs(in.energy - in0.energy) / in0.energy);
    trace.angular_drift =
        std::max(trace.angular_drift, std::abs(in.angular - in0.angular) / std::abs(in0.angular));
    if (x[0] < out.band_lo || x[0] > out.band_hi) {
      out.confined = false;
      trace.escaped = true;
      trace.escape_reason = x[0] < out.band_lo ? "below band" : "above band";
      break;
    }
  }
  out.closure_distance = closure_distance(r, which, trace, tr);
  out.closed = out.closure_distance <= opt.closure_match;
  return out;
}

ShootingResult shoot_launch_angle(double r, Metric which, cplx z0, double t_end,
                                  double band_margin, int max_shots, const Truncation& tr) {
  require_radius(r);
  if (max_shots < 1) throw DomainError("max_shots must be positive");
  const ClosedGeodesic closed = find_closed_geodesic(r, which, tr);
  IntegrateOptions io;
  io.t_end = t_end;
  io.band_lo = r + band_margin;
  io.band_hi = 1.0 - band_margin;

  ShootingResult out;
  double lo = 0.0, hi = kPi;
  for (out.shots = 1; out.shots <= max_shots; ++out.shots) {
    const double angle = 0.5 * (lo + hi);
    const GeodesicTrace trace = integrate(r, which, launch_state(r, which, z0, angle, tr), io, tr);
    const double reached = trace.samples.back().t;
    if (reached >= out.escape_time) {
      out.escape_time = reached;
      out.angle = angle;
      out.winding = trace.winding;
    }
    if (!trace.escaped) {
      out.confined = true;
      break;
    }
    (std::abs(trace.samples.back().z) > closed.rho_star ? lo : hi) = angle;
    if (hi - lo < 4.0 * std::numeric_limits<double>::epsilon()) break;
  }
  out.shots = std::min(out.shots, max_shots);
  return out;
}

}  // namespace annulus
