#pragma once

#include <complex>

namespace annulus::elliptic {

using cplx = std::complex<double>;

/// Lattice data for the Weierstrass functions with half-periods
/// omega1 = -log r (real) and omega3 = i*pi.
///
/// eta3 is purely imaginary on this lattice and only its imaginary part is
/// stored. `q` is the nome of the internal q-series; when `swapped` is set the
/// series is expanded around the imaginary half-period (nome r instead of
/// exp(-pi^2/omega1)), whichever nome is smaller.
struct EllipticContext {
  double r = 0.0;
  double omega1 = 0.0;
  double omega3_im = 0.0;
  double g2 = 0.0;
  double g3 = 0.0;
  // Extended precision: e2 - e3 shrinks like exp(-pi^2/omega1) relative to
  // e2 and is below double resolution once r exceeds about 0.75.
  long double e1 = 0.0;
  long double e2 = 0.0;
  long double e3 = 0.0;
  double eta1 = 0.0;
  double eta3_im = 0.0;
  double c = 0.0;  // eta1 / omega1
  double q = 0.0;
  double log_q = 0.0;  // q itself underflows for r close to 1
  bool swapped = false;
  double tol = 0.0;

  cplx omega(int k) const;
  cplx eta(int k) const;
};

/// Relative radius, in units of min(omega1, pi), of the disc around each
/// lattice point inside which wp, wp_prime and zeta raise PoleError.
inline constexpr double kPoleExclusion = 1e-6;

/// Builds the lattice constants for the annulus r < |z| < 1.
/// Throws DomainError for r outside (0, 1) or tol <= 0, ConvergenceError when
/// the constants fail their root checks at `tol`.
EllipticContext make_elliptic_context(double r, double tol = 1e-12);

cplx wp(const EllipticContext& ctx, cplx z);
cplx wp_prime(const EllipticContext& ctx, cplx z);
cplx zeta(const EllipticContext& ctx, cplx z);
cplx sigma(const EllipticContext& ctx, cplx z);

/// log(sigma(z)) on an unspecified branch; use for products and quotients of
/// sigma values that would overflow on their own.
cplx log_sigma(const EllipticContext& ctx, cplx z);

/// sigma_k(u) = exp(-eta_k u) sigma(u + omega_k) / sigma(omega_k), k = 1, 2, 3.
cplx sigma_k_complex(const EllipticContext& ctx, int k, cplx u);

/// Real value of sigma_k at real u (the imaginary part vanishes on this lattice).
double sigma_k(const EllipticContext& ctx, int k, double u);

/// exp(-c u^2) sigma_2(u)^2 with c = eta1 / omega1. Throws RangeError when the
/// result is not representable.
double sigma2_star_sq(const EllipticContext& ctx, double u);

/// |wp'^2 - (4 wp^3 - g2 wp - g3)| / (1 + |wp|)^3 at z.
double ode_residual(const EllipticContext& ctx, cplx z);

}  // namespace annulus::elliptic
