#include "annulus/elliptic.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "annulus/errors.hpp"

namespace annulus::elliptic {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI{0.0, 1.0};

// exp(z) - 1 without cancellation for small |z|.
cplx expm1c(cplx z) {
  const double x = z.real(), y = z.imag();
  const double s = std::sin(0.5 * y);
  return {std::expm1(x) * std::cos(y) - 2.0 * s * s, std::exp(x) * std::sin(y)};
}

// log(1 + z) for |z| < 1, accurate when |z| is small.
cplx log1pc(cplx z) {
  const double x = z.real(), y = z.imag();
  return {0.5 * std::log1p(2.0 * x + x * x + y * y), std::atan2(y, 1.0 + x)};
}

// Expansion data: base half-period omega, nome q = exp(log_q) and the
// quasi-period eta belonging to omega.
struct Representation {
  cplx omega;
  double log_q;
  cplx eta;
};

Representation representation(const EllipticContext& ctx) {
  if (ctx.swapped) return {cplx(0.0, ctx.omega3_im), ctx.log_q, cplx(0.0, ctx.eta3_im)};
  return {cplx(ctx.omega1, 0.0), ctx.log_q, cplx(ctx.eta1, 0.0)};
}

struct SeriesValues {
  cplx wp, wp_prime, zeta, log_sigma;
};

enum Want : unsigned { kWp = 1, kWpPrime = 2, kZeta = 4, kLogSigma = 8 };

// Number of series terms for which n^2 q^n has dropped below double resolution.
int term_count(double log_q) {
  int n = 1;
  while (n < 400 && 2.0 * std::log(n + 1.0) + (n + 1.0) * log_q > -45.0) ++n;
  return n;
}

// q-series for the Weierstrass functions about the base half-period, valid for
// Im(pi z / (2 omega)) >= 0 and z inside the period cell. No pole handling.
SeriesValues series(const Representation& rep, cplx z, unsigned want) {
  const cplx k = kPi / (2.0 * rep.omega);  // dv/dz
  const cplx v = k * z;
  const cplx b = 2.0 * kI * v;  // p = exp(b), |p| <= 1
  const double a = 2.0 * rep.log_q;
  const cplx pm1 = expm1c(b);
  const cplx p = pm1 + 1.0;

  SeriesValues out{};
  const int nterms = term_count(rep.log_q);
  cplx s_wp = 0.0, s_wpp = 0.0, s_zeta = 0.0, s_log = 0.0;
  for (int n = nterms; n >= 1; --n) {
    const double dn = n;
    const double qn = std::exp(dn * a);        // q^{2n}
    const double one_minus = -std::expm1(dn * a);  // 1 - q^{2n}
    const cplx up = std::exp(dn * (a + b));    // q^{2n} p^n
    const cplx dw = std::exp(dn * (a - b));    // q^{2n} p^{-n}
    if (want & kWp) s_wp += dn * (up + dw) * 0.5 / one_minus;
    if (want & (kWpPrime | kZeta)) {
      const cplx sn = (up - dw) / (2.0 * kI) / one_minus;
      if (want & kWpPrime) s_wpp += dn * dn * sn;
      if (want & kZeta) s_zeta += sn;
    }
    if (want & kLogSigma) {
      const cplx pu = std::exp(dn * a + b);
      const cplx pd = std::exp(dn * a - b);
      s_log += log1pc(-pu) + log1pc(-pd) - 2.0 * std::log1p(-qn);
    }
  }

  if (want & kWp) {
    const cplx csc2 = -4.0 * p / (pm1 * pm1);
    out.wp = -rep.eta / rep.omega + k * k * csc2 - 2.0 * (4.0 * k * k) * s_wp;
  }
  if (want & kWpPrime) {
    const cplx csc2cot = -4.0 * kI * p * (p + 1.0) / (pm1 * pm1 * pm1);
    out.wp_prime = -2.0 * k * k * k * csc2cot + 2.0 * (8.0 * k * k * k) * s_wpp;
  }
  if (want & kZeta) {
    const cplx cot = kI * (p + 1.0) / pm1;
    out.zeta = rep.eta * z / rep.omega + k * cot + 4.0 * k * s_zeta;
  }
  if (want & kLogSigma) {
    // log sin v = -i v + log(p - 1) - log(2i)
    const cplx log_sin = -kI * v + std::log(pm1) - std::log(2.0 * kI);
    out.log_sigma = std::log(1.0 / k) + rep.eta * z * z / (2.0 * rep.omega) + log_sin + s_log;
  }
  return out;
}

struct Reduced {
  cplx z0;     // representative inside the cell, with Im v >= 0
  bool flipped;
  long m, n;   // z = (flipped ? -z0 : z0) + 2 m omega1 + 2 n omega3
};

Reduced reduce(const EllipticContext& ctx, cplx z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw DomainError("elliptic argument is not finite");
  }
  const long m = std::lround(z.real() / (2.0 * ctx.omega1));
  const long n = std::lround(z.imag() / (2.0 * ctx.omega3_im));
  cplx z0 = z - cplx(2.0 * m * ctx.omega1, 2.0 * n * ctx.omega3_im);
  const bool flip = ctx.swapped ? (z0.real() > 0.0) : (z0.imag() < 0.0);
  if (flip) z0 = -z0;
  return {z0, flip, m, n};
}

void check_pole(const EllipticContext& ctx, const Reduced& red) {
  const double scale = std::min(ctx.omega1, ctx.omega3_im);
  if (std::abs(red.z0) < kPoleExclusion * scale) {
    const cplx lattice(2.0 * red.m * ctx.omega1, 2.0 * red.n * ctx.omega3_im);
    std::ostringstream msg;
    msg << "argument within the pole-exclusion radius of lattice point (" << lattice.real()
        << ", " << lattice.imag() << ")";
    throw PoleError(msg.str(), lattice);
  }
}

long double theta2_4(long double q) {
  // theta_2^4 = 16 q (sum_{n>=0} q^{n(n+1)})^4
  long double s = 0.0L;
  for (int n = 0; n < 60; ++n) {
    const long double t = std::pow(q, static_cast<long double>(n) * (n + 1));
    s += t;
    if (t < 1e-25L * s) break;
  }
  return 16.0L * q * s * s * s * s;
}

long double theta4_4(long double q) {
  long double s = 1.0L;
  for (int n = 1; n < 60; ++n) {
    const long double t = std::pow(q, static_cast<long double>(n) * n);
    s += (n % 2 ? -2.0L : 2.0L) * t;
    if (t < 1e-25L) break;
  }
  return s * s * s * s;
}

}  // namespace

cplx EllipticContext::omega(int k) const {
  switch (k) {
    case 1: return {omega1, 0.0};
    case 2: return {-omega1, -omega3_im};
    case 3: return {0.0, omega3_im};
    default: throw DomainError("half-period index must be 1, 2 or 3");
  }
}

cplx EllipticContext::eta(int k) const {
  switch (k) {
    case 1: return {eta1, 0.0};
    case 2: return {-eta1, -eta3_im};
    case 3: return {0.0, eta3_im};
    default: throw DomainError("half-period index must be 1, 2 or 3");
  }
}

EllipticContext make_elliptic_context(double r, double tol) {
  if (!(r > 0.0 && r < 1.0)) throw DomainError("inner radius r must lie in (0, 1)");
  if (!(tol > 0.0)) throw DomainError("elliptic tolerance must be positive");

  EllipticContext ctx;
  ctx.r = r;
  ctx.tol = tol;
  ctx.omega1 = -std::log(r);
  ctx.omega3_im = kPi;
  const double L = ctx.omega1;
  // Nome exp(-pi^2/L) about omega1, or r about omega3; use the smaller one.
  ctx.swapped = L > kPi;
  ctx.log_q = ctx.swapped ? -L : -kPi * kPi / L;
  ctx.q = std::exp(ctx.log_q);

  // Eisenstein-type sum 1 - 24 sum n q^{2n} / (1 - q^{2n}).
  double e2sum = 0.0;
  for (int n = term_count(ctx.log_q); n >= 1; --n) {
    const double a = 2.0 * n * ctx.log_q;
    e2sum += n * std::exp(a) / -std::expm1(a);
  }
  const double eisen = 1.0 - 24.0 * e2sum;

  const long double q = std::exp(static_cast<long double>(ctx.log_q));
  const long double t2 = theta2_4(q), t4 = theta4_4(q);
  if (!ctx.swapped) {
    ctx.eta1 = kPi * kPi / (12.0 * L) * eisen;
    const Representation rep{cplx(L, 0.0), ctx.log_q, cplx(ctx.eta1, 0.0)};
    ctx.eta3_im = series(rep, cplx(0.0, kPi), kZeta).zeta.imag();
    const long double K = static_cast<long double>(kPi) * kPi / (12.0L * L * L);
    ctx.e1 = K * (t2 + 2.0L * t4);
    ctx.e2 = K * (t2 - t4);
    ctx.e3 = -K * (2.0L * t2 + t4);
  } else {
    // eta3 = pi^2 E / (12 i pi); the other quasi-period from zeta(-omega1).
    ctx.eta3_im = -kPi / 12.0 * eisen;
    const Representation rep{cplx(0.0, kPi), ctx.log_q, cplx(0.0, ctx.eta3_im)};
    ctx.eta1 = -series(rep, cplx(-L, 0.0), kZeta).zeta.real();
    const long double K = 1.0L / 12.0L;  // -pi^2 / (12 (i pi)^2)
    ctx.e3 = -K * (t2 + 2.0L * t4);
    ctx.e2 = -K * (t2 - t4);
    ctx.e1 = K * (2.0L * t2 + t4);
  }
  const long double e1 = ctx.e1, e2 = ctx.e2, e3 = ctx.e3;
  ctx.g2 = static_cast<double>(2.0L * (e1 * e1 + e2 * e2 + e3 * e3));
  ctx.g3 = static_cast<double>(4.0L * e1 * e2 * e3);
  ctx.c = ctx.eta1 / ctx.omega1;

  const long double g2 = 2.0L * (e1 * e1 + e2 * e2 + e3 * e3), g3 = 4.0L * e1 * e2 * e3;
  const double bound = tol * (1.0 + std::abs(ctx.g2) + std::abs(ctx.g3));
  for (long double e : {e1, e2, e3}) {
    const double res = static_cast<double>(std::abs(4.0L * e * e * e - g2 * e - g3));
    if (!(res <= bound)) {
      throw ConvergenceError("half-period values fail the root check at the requested tolerance");
    }
  }
  if (!(std::abs(static_cast<double>(e1 + e2 + e3)) <= bound) || !(e1 > e2 && e2 >= e3) ||
      !std::isfinite(ctx.eta1) || !std::isfinite(ctx.eta3_im)) {
    throw ConvergenceError("elliptic constants failed their consistency checks");
  }
  return ctx;
}

cplx wp(const EllipticContext& ctx, cplx z) {
  const Reduced red = reduce(ctx, z);
  check_pole(ctx, red);
  return series(representation(ctx), red.z0, kWp).wp;
}

cplx wp_prime(const EllipticContext& ctx, cplx z) {
  const Reduced red = reduce(ctx, z);
  check_pole(ctx, red);
  const cplx d = series(representation(ctx), red.z0, kWpPrime).wp_prime;
  return red.flipped ? -d : d;
}

cplx zeta(const EllipticContext& ctx, cplx z) {
  const Reduced red = reduce(ctx, z);
  check_pole(ctx, red);
  cplx v = series(representation(ctx), red.z0, kZeta).zeta;
  if (red.flipped) v = -v;
  return v + 2.0 * static_cast<double>(red.m) * ctx.eta(1) +
         2.0 * static_cast<double>(red.n) * ctx.eta(3);
}

cplx log_sigma(const EllipticContext& ctx, cplx z) {
  const Reduced red = reduce(ctx, z);
  if (red.z0 == cplx(0.0, 0.0)) {
    return {-std::numeric_limits<double>::infinity(), 0.0};
  }
  cplx v = series(representation(ctx), red.z0, kLogSigma).log_sigma;
  if (red.flipped) v += cplx(0.0, kPi);
  if (red.m != 0 || red.n != 0) {
    const double m = static_cast<double>(red.m), n = static_cast<double>(red.n);
    const cplx base = red.flipped ? -red.z0 : red.z0;
    const cplx eta_mn = m * ctx.eta(1) + n * ctx.eta(3);
    const cplx half = m * ctx.omega(1) + n * ctx.omega(3);
    v += 2.0 * eta_mn * (base + half);
    const long parity = (red.m + red.n + red.m * red.n) & 1L;
    if (parity) v += cplx(0.0, kPi);
  }
  return v;
}

cplx sigma(const EllipticContext& ctx, cplx z) {
  const cplx ls = log_sigma(ctx, z);
  if (std::isinf(ls.real()) && ls.real() < 0.0) return {0.0, 0.0};
  return std::exp(ls);
}

cplx sigma_k_complex(const EllipticContext& ctx, int k, cplx u) {
  const cplx wk = ctx.omega(k);
  const cplx ek = ctx.eta(k);
  return std::exp(-ek * u + log_sigma(ctx, u + wk) - log_sigma(ctx, wk));
}

double sigma_k(const EllipticContext& ctx, int k, double u) {
  return sigma_k_complex(ctx, k, cplx(u, 0.0)).real();
}

double sigma2_star_sq(const EllipticContext& ctx, double u) {
  const cplx l = -ctx.eta(2) * u + log_sigma(ctx, cplx(u, 0.0) + ctx.omega(2)) -
                 log_sigma(ctx, ctx.omega(2));
  const double value = std::exp(2.0 * l.real() - ctx.c * u * u);
  if (!std::isfinite(value) || value == 0.0) {
    throw RangeError("sigma2* squared is not representable at u = " + std::to_string(u));
  }
  return value;
}

double ode_residual(const EllipticContext& ctx, cplx z) {
  const Reduced red = reduce(ctx, z);
  check_pole(ctx, red);
  const SeriesValues s = series(representation(ctx), red.z0, kWp | kWpPrime);
  const cplx w = s.wp, d = s.wp_prime;
  const double denom = std::pow(1.0 + std::abs(w), 3);
  return std::abs(d * d - (4.0 * w * w * w - ctx.g2 * w - ctx.g3)) / denom;
}

}  // namespace annulus::elliptic
