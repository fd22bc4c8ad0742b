#include <doctest.h>

#include <numbers>

#include "annulus/errors.hpp"
#include "annulus/geodesics.hpp"

using namespace annulus;

namespace {

constexpr double kPi = std::numbers::pi;
const Truncation tr = default_truncation();

double state_distance(const TracePoint& a, const GeodesicState& b) {
  return std::abs(a.z - b.z) + std::abs(a.v - b.v);
}

}  // namespace

TEST_SUITE("geodesics") {

TEST_CASE("right-hand side symmetries") {
  const double r = 0.2;
  const GeodesicState s{cplx(0.5, 0.2), cplx(-0.3, 0.7)};
  for (Metric w : {Metric::caratheodory, Metric::szego}) {
    const cplx a = geodesic_rhs(r, w, s, tr);
    for (double t : {0.4, 2.5}) {
      const cplx e = std::polar(1.0, t);
      CHECK(std::abs(geodesic_rhs(r, w, {e * s.z, e * s.v}, tr) - e * a) <= 1e-14 * std::abs(a));
    }
    const cplx radial = geodesic_rhs(r, w, {0.6, 0.3}, tr);
    CHECK(radial.imag() == 0.0);
    // Reflection in the real axis.
    const cplx b = geodesic_rhs(r, w, {std::conj(s.z), std::conj(s.v)}, tr);
    CHECK(std::abs(b - std::conj(a)) <= 1e-14 * std::abs(a));
  }
  CHECK_THROWS_AS(geodesic_rhs(r, Metric::szego, {0.1, 1.0}, tr), DomainError);
}

TEST_CASE("launch state") {
  const auto s = launch_state(0.1, Metric::szego, std::polar(0.5, 1.0), kPi / 2, tr);
  const double m = radial_profile(0.1, 0.5, Metric::szego, tr).m;
  CHECK(m * std::abs(s.v) == doctest::Approx(1.0).epsilon(1e-15));
  // Tangential counterclockwise launch is orthogonal to the position.
  CHECK(std::abs((std::conj(s.z) * s.v).real()) <= 1e-15);
  CHECK((std::conj(s.z) * s.v).imag() > 0.0);
  const auto out = launch_state(0.1, Metric::szego, 0.5, 0.0, tr);
  CHECK(out.v.real() > 0.0);
  CHECK(out.v.imag() == 0.0);
}

TEST_CASE("closed geodesic is the circle through sqrt(r)") {
  for (double r : {0.05, 0.1, 0.3}) {
    for (Metric w : {Metric::caratheodory, Metric::szego}) {
      const auto g = find_closed_geodesic(r, w, tr);
      CAPTURE(r);
      CHECK(g.rho_star == doctest::Approx(std::sqrt(r)).epsilon(1e-8));
      CHECK(std::abs(g.closure_residual) <= 1e-8);
      const double m = radial_profile(r, g.rho_star, w, tr).m;
      CHECK(g.length == doctest::Approx(2.0 * kPi * g.rho_star * m).epsilon(1e-14));
    }
  }
}

TEST_CASE("the circle is traversed and closes") {
  for (double r : {0.05, 0.1, 0.3}) {
    const Metric w = Metric::caratheodory;
    const auto g = find_closed_geodesic(r, w, tr);
    const auto s0 = launch_state(r, w, g.rho_star, kPi / 2, tr);
    IntegrateOptions opt;
    opt.t_end = g.length;  // unit speed
    opt.step_tol = 1e-13;
    const auto trace = integrate(r, w, s0, opt, tr);
    CAPTURE(r);
    REQUIRE_FALSE(trace.escaped);
    CHECK(state_distance(trace.samples.back(), s0) <= 1e-6);
    CHECK(trace.winding == 1);
    CHECK(trace.length == doctest::Approx(g.length).epsilon(1e-8));
    CHECK(trace.rho_max - trace.rho_min <= 1e-6);
  }
}

TEST_CASE("first integrals over a long trace") {
  // An orbit oscillating about the stable circle at r = 0.01, Szegő metric.
  const double r = 0.01, rho = 0.1;
  const double loop = 2.0 * kPi * rho * radial_profile(r, rho, Metric::szego, tr).m;
  IntegrateOptions opt;
  opt.t_end = 100.0 * loop;
  opt.band_lo = 0.09;
  opt.band_hi = 0.11;
  const auto trace = integrate(r, Metric::szego, launch_state(r, Metric::szego, 0.103, 1.5, tr), opt, tr);
  REQUIRE_FALSE(trace.escaped);
  CHECK(trace.steps >= 10000);
  CHECK(trace.speed_drift <= 1e-7);
  CHECK(trace.angular_drift <= 1e-7);
  CHECK(trace.winding == 100);
  // Length of a unit-speed curve equals the elapsed parameter.
  CHECK(trace.length == doctest::Approx(trace.samples.back().t).epsilon(1e-7));
}

TEST_CASE("time reversal") {
  const double r = 0.2;
  const auto s0 = launch_state(r, Metric::caratheodory, cplx(0.4, 0.3), 1.2, tr);
  IntegrateOptions opt;
  opt.t_end = 2.0;
  opt.step_tol = 1e-12;
  const auto fwd = integrate(r, Metric::caratheodory, s0, opt, tr);
  REQUIRE_FALSE(fwd.escaped);
  const auto& end = fwd.samples.back();
  const auto back = integrate(r, Metric::caratheodory, {end.z, -end.v}, opt, tr);
  REQUIRE_FALSE(back.escaped);
  CHECK(std::abs(back.samples.back().z - s0.z) + std::abs(back.samples.back().v + s0.v) <= 1e-6);
}

TEST_CASE("perturbations of the closed circle") {
  // The shortest circle is unstable: a small offset grows away from it.
  const double r = 0.1;
  const auto g = find_closed_geodesic(r, Metric::caratheodory, tr);
  IntegrateOptions opt;
  opt.t_end = 10.0 * g.length;
  opt.band_lo = g.rho_star * 0.8;
  opt.band_hi = g.rho_star * 1.25;
  const auto away = integrate(r, Metric::caratheodory,
                              launch_state(r, Metric::caratheodory, g.rho_star * (1 + 1e-4), kPi / 2, tr), opt, tr);
  CHECK(away.escaped);
  CHECK(away.escape_reason.find("band") != std::string::npos);

  // For small r the Szegő metric makes the circle through sqrt(r) a local
  // maximum of rho m(rho), which is stable.
  const double rs = 0.01, rho = std::sqrt(rs);
  CHECK(std::abs(closure_residual(rs, rho, Metric::szego, tr)) <= 1e-10);
  const auto near = integrate(rs, Metric::szego, launch_state(rs, Metric::szego, rho * (1 + 1e-3), kPi / 2, tr),
                              {.t_end = 20.0, .band_lo = rho * 0.9, .band_hi = rho * 1.1}, tr);
  CHECK_FALSE(near.escaped);
  CHECK(near.rho_max <= rho * 1.01);
  CHECK(near.rho_min >= rho * 0.99);
  CHECK(near.rho_min < rho);
  const auto shortest = find_closed_geodesic(rs, Metric::szego, tr);
  CHECK(std::abs(shortest.rho_star - rho) > 1e-3);
  CHECK(shortest.length < 2.0 * kPi * rho * radial_profile(rs, rho, Metric::szego, tr).m);
}

TEST_CASE("spiral towards the closed geodesic") {
  const double r = 0.1;
  const auto sp = spiral_trace(r, Metric::szego, 0.5, {}, tr);
  CHECK(sp.confined);
  CHECK(std::abs(sp.trace.winding) >= 20);
  CHECK(sp.trace.rho_min >= sp.band_lo);
  CHECK(sp.trace.rho_max <= 0.5 + 1e-12);
  CHECK_FALSE(sp.closed);
  CHECK(sp.closure_distance > 1e-3);
  const auto g = find_closed_geodesic(r, Metric::szego, tr);
  CHECK(sp.angular_momentum == doctest::Approx(g.length / (2.0 * kPi)).epsilon(1e-12));
  // The spiral approaches the circle from outside.
  CHECK(std::abs(sp.trace.samples.back().z) - g.rho_star < 1e-3);
  int prev = 0;
  bool monotone = true;
  for (const auto& p : sp.trace.samples) {
    monotone = monotone && p.winding >= prev;
    prev = p.winding;
  }
  CHECK(monotone);

  // Early on the reduced system agrees with the full equation.
  const auto s0 = launch_state(r, Metric::szego, 0.5, sp.launch_angle, tr);
  const auto& probe = sp.trace.samples[sp.trace.samples.size() / 20];
  IntegrateOptions opt;
  opt.t_end = probe.t;
  opt.step_tol = 1e-12;
  const auto full = integrate(r, Metric::szego, s0, opt, tr);
  CHECK(std::abs(full.samples.back().z - probe.z) <= 1e-6);

  CHECK_THROWS_AS(spiral_trace(r, Metric::szego, g.rho_star, {}, tr), DomainError);
  CHECK_THROWS_AS(spiral_trace(r, Metric::szego, 0.999, {}, tr), DomainError);
}

TEST_CASE("shooting reproduces the spiral launch angle") {
  const double r = 0.1;
  const auto sp = spiral_trace(r, Metric::szego, 0.5, {}, tr);
  const auto shot = shoot_launch_angle(r, Metric::szego, 0.5, 60.0, 0.02, 45, tr);
  CHECK(shot.angle == doctest::Approx(sp.launch_angle).epsilon(1e-8));
  CHECK(shot.winding >= 2);
  // From inside the circle the launch points outward.
  const auto inside = spiral_trace(r, Metric::szego, 0.2, {}, tr);
  CHECK(inside.launch_angle < kPi / 2);
  CHECK(sp.launch_angle > kPi / 2);
}

TEST_CASE("radial launch escapes without winding") {
  const auto trace = integrate(0.1, Metric::caratheodory, launch_state(0.1, Metric::caratheodory, 0.5, 0.0, tr),
                               {.t_end = 50.0, .band_hi = 0.95}, tr);
  CHECK(trace.escaped);
  CHECK(trace.escape_reason == "above band");
  CHECK(trace.winding == 0);
  CHECK(trace.rho_min == doctest::Approx(0.5));
  for (const auto& p : trace.samples) CHECK(p.z.imag() == 0.0);
}

}  // TEST_SUITE
