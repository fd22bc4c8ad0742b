#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "annulus/metrics.hpp"

namespace annulus {

struct GeodesicState {
  cplx z;  // position in A_r
  cplx v;  // velocity dz/dt
};

struct TracePoint {
  double t = 0.0;
  cplx z;
  cplx v;
  double speed = 0.0;  // m(z) |v|
  int winding = 0;
};

struct GeodesicTrace {
  std::vector<TracePoint> samples;
  int winding = 0;        // signed crossings of the positive real axis
  double length = 0.0;    // integral of m |dz|
  bool escaped = false;
  std::string escape_reason;
  double rho_min = 0.0;
  double rho_max = 0.0;
  double speed_drift = 0.0;    // max relative change of m |v|
  double angular_drift = 0.0;  // max relative change of m^2 Im(conj(z) v)
  std::size_t steps = 0;
  std::size_t rejected = 0;
};

/// sigma'' = -(d log m^2)(sigma')^2 with d log m^2 from the kernel series.
/// Throws DomainError when the position is outside the annulus.
cplx geodesic_rhs(double r, Metric which, const GeodesicState& state, const Truncation& tr);

struct IntegrateOptions {
  double t_end = 1.0;
  double step_tol = 1e-10;
  double collar = 1e-9;                    // escape distance from either circle
  std::optional<double> band_lo, band_hi;  // stop once |z| leaves [band_lo, band_hi]
  std::size_t max_steps = 2'000'000;
};

/// Adaptive Dormand-Prince 5(4) integration. Steps are rejected when the
/// embedded error or the change of either first integral exceeds the
/// tolerance. Leaving the collar or band ends the trace with an escape report.
GeodesicTrace integrate(double r, Metric which, const GeodesicState& initial,
                        const IntegrateOptions& opt, const Truncation& tr);

/// Initial state at z0 with unit metric speed, launched at angle `angle`
/// counterclockwise from the outward radial direction.
GeodesicState launch_state(double r, Metric which, cplx z0, double angle, const Truncation& tr);

struct ClosedGeodesic {
  double rho_star = 0.0;
  double length = 0.0;            // 2 pi rho* m(rho*)
  double closure_residual = 0.0;  // 1 + rho d log m / d rho at rho*
};

/// Circle minimizing 2 pi rho m(rho) over (r, 1). Throws
/// InternalConsistencyError when the minimum sits at the edge of the scan.
ClosedGeodesic find_closed_geodesic(double r, Metric which, const Truncation& tr);

struct SpiralOptions {
  double t_end = 0.0;  // 0 picks 25 loop lengths of the circle through z0
  double band_margin = 0.02;
  double step_tol = 1e-10;
  double closure_match = 1e-6;
};

struct SpiralReport {
  GeodesicTrace trace;
  double launch_angle = 0.0;      // from the outward radial direction
  double angular_momentum = 0.0;  // equals rho* m(rho*)
  double band_lo = 0.0, band_hi = 0.0;
  bool confined = false;           // stayed in [band_lo, band_hi] for the whole window
  double closure_distance = 0.0;   // min over returns to the ray through z0
  bool closed = false;             // closure_distance <= closure_match
};

/// Geodesic through z0 asymptotic to the closed circle. Its angular momentum
/// is rho* m(rho*), which fixes the launch angle; the trace is integrated in
/// the rotation-reduced form (rho, theta). Throws DomainError when |z0| is on
/// the closed geodesic or outside the band.
SpiralReport spiral_trace(double r, Metric which, cplx z0, const SpiralOptions& opt,
                          const Truncation& tr);

struct ShootingResult {
  double angle = 0.0;
  int shots = 0;
  double escape_time = 0.0;  // parameter at which the best shot left the band
  int winding = 0;           // windings of the best shot
  bool confined = false;
};

/// Bisection on the launch angle between outward and inward escapes, using the
/// full geodesic equation. The window it can hold is limited by the
/// instability of the closed geodesic.
ShootingResult shoot_launch_angle(double r, Metric which, cplx z0, double t_end,
                                  double band_margin, int max_shots, const Truncation& tr);

}  // namespace annulus
