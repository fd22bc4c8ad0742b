#include "annulus/hardy.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "annulus/errors.hpp"

namespace annulus {

namespace {

const double kLog2Pi = std::log(2.0 * std::numbers::pi);

// log(1 + e^x) without overflow.
double softplus(double x) { return std::max(x, 0.0) + std::log1p(std::exp(-std::abs(x))); }

// Falling factorials (n)_0 .. (n)_3.
std::array<double, 4> falling(long n) {
  const double x = static_cast<double>(n);
  return {1.0, x, x * (x - 1.0), x * (x - 1.0) * (x - 2.0)};
}

// log of 1 / (2 pi (1 + r^(2n+1))), the kernel coefficient of (z conj(w))^n.
double log_kernel_weight(double log_r, long n) {
  return -kLog2Pi - softplus((2.0 * n + 1.0) * log_r);
}

void require_unit_crossing(const GeneralAnnulus& a) {
  if (!(a.log_in < 0.0 && a.log_out > 0.0)) {
    throw DomainError("moment sums need an annulus with r_in < 1 < r_out");
  }
}

template <std::size_t P>
MomentSums moments_impl(const GeneralAnnulus& a, int j_max, const Truncation& tr) {
  std::array<int, P> deg{};
  for (std::size_t j = 0; j < P; ++j) deg[j] = static_cast<int>(j);
  const auto res = paired_series<double, P>(
      tr, deg, [&](long n) { return -log_alpha_n(a, n); },
      [](long n) {
        std::array<double, P> t{};
        double p = 1.0;
        for (std::size_t j = 0; j < P; ++j) {
          t[j] = p;
          p *= static_cast<double>(n);
        }
        return t;
      });
  MomentSums out;
  out.s.assign(res.sum.begin(), res.sum.begin() + j_max + 1);
  out.annulus = a;
  out.tail = res.tail;
  return out;
}

void check_kernel_point(double r, cplx z, const char* name) {
  const double m = std::abs(z);
  const double slack = 1.0 + 4.0 * std::numeric_limits<double>::epsilon();
  if (!(m * slack >= r && m <= slack)) {
    throw DomainError(std::string("kernel argument ") + name + " lies outside the closed annulus");
  }
}

}  // namespace

GeneralAnnulus GeneralAnnulus::from_radii(double r_in, double r_out) {
  if (!(r_in > 0.0 && r_out > r_in && std::isfinite(r_out))) {
    throw DomainError("annulus radii must satisfy 0 < r_in < r_out");
  }
  return {std::log(r_in), std::log(r_out)};
}

GeneralAnnulus GeneralAnnulus::from_logs(double log_in, double log_out) {
  if (!(log_in < log_out) || !std::isfinite(log_in) || !std::isfinite(log_out)) {
    throw DomainError("annulus radii must satisfy 0 < r_in < r_out");
  }
  return {log_in, log_out};
}

double GeneralAnnulus::r_in() const { return std::exp(log_in); }
double GeneralAnnulus::r_out() const { return std::exp(log_out); }

double log_alpha_n(const GeneralAnnulus& a, long n) {
  const double k = 2.0 * static_cast<double>(n) + 1.0;
  const double e_in = k * a.log_in, e_out = k * a.log_out;
  const double hi = std::max(e_in, e_out), lo = std::min(e_in, e_out);
  return kLog2Pi + hi + std::log1p(std::exp(lo - hi));
}

double alpha_n(const GeneralAnnulus& a, long n) {
  const double v = std::exp(log_alpha_n(a, n));
  if (!std::isfinite(v) || v == 0.0) {
    throw RangeError("alpha_n not representable at n = " + std::to_string(n));
  }
  return v;
}

MomentSums moment_sums(const GeneralAnnulus& a, int j_max, const Truncation& tr) {
  if (j_max < 0 || j_max > 8) throw DomainError("moment order j_max must lie in [0, 8]");
  require_unit_crossing(a);
  if (j_max <= 4) return moments_impl<5>(a, j_max, tr);
  return moments_impl<9>(a, j_max, tr);
}

cplx szego_kernel(double r, cplx z, cplx w, const Truncation& tr) {
  if (!(r > 0.0 && r < 1.0)) throw DomainError("inner radius r must lie in (0, 1)");
  check_kernel_point(r, z, "z");
  check_kernel_point(r, w, "w");
  const cplx zw = z * std::conj(w);
  const double rho = std::abs(zw);
  if (!(rho > r * r && rho < 1.0)) {
    throw DomainError("kernel needs r^2 < |z conj(w)| < 1");
  }
  const double log_r = std::log(r), log_rho = std::log(rho), phi = std::arg(zw);
  const auto res = paired_series<cplx, 1>(
      tr, {0}, [&](long n) { return log_kernel_weight(log_r, n) + n * log_rho; },
      [&](long n) { return std::array<cplx, 1>{std::polar(1.0, n * phi)}; });
  return res.sum[0];
}

std::array<double, 4> kernel_radial_derivatives(double r, double rho, const Truncation& tr) {
  if (!(r > 0.0 && r < 1.0)) throw DomainError("inner radius r must lie in (0, 1)");
  if (!(rho > r && rho < 1.0)) throw DomainError("point must lie inside the annulus");
  const double log_r = std::log(r), log_t = 2.0 * std::log(rho);
  const auto res = paired_series<double, 4>(
      tr, {0, 1, 2, 3}, [&](long n) { return log_kernel_weight(log_r, n) + n * log_t; },
      [](long n) { return falling(n); });
  const double t = rho * rho;
  return {res.sum[0], res.sum[1] / t, res.sum[2] / (t * t), res.sum[3] / (t * t * t)};
}

WirtingerJet szego_diagonal_jet(double r, cplx z0, int order, const Truncation& tr) {
  if (!(r > 0.0 && r < 1.0)) throw DomainError("inner radius r must lie in (0, 1)");
  const double rho = std::abs(z0);
  if (!(rho > r && rho < 1.0)) throw DomainError("point must lie inside the annulus");
  WirtingerJet jet(order);  // validates the order
  constexpr int M = WirtingerJet::kMaxOrder + 1;
  std::array<int, M * M> deg{};
  for (int j = 0; j < M; ++j) {
    for (int k = 0; k < M; ++k) deg[j * M + k] = j + k;
  }
  const double log_r = std::log(r), log_t = 2.0 * std::log(rho);
  const auto res = paired_series<double, M * M>(
      tr, deg, [&](long n) { return log_kernel_weight(log_r, n) + n * log_t; },
      [&](long n) {
        const auto f = falling(n);
        std::array<double, M * M> t{};
        for (int j = 0; j < M; ++j) {
          for (int k = 0; k < M; ++k) t[j * M + k] = f[j] * f[k];
        }
        return t;
      });
  const double theta = std::arg(z0);
  for (int j = 0; j <= order; ++j) {
    for (int k = 0; k <= order; ++k) {
      jet(j, k) = std::polar(std::pow(rho, -(j + k)), (k - j) * theta) * res.sum[j * M + k];
    }
  }
  return jet;
}

JFunctions j_functions_at_one(const GeneralAnnulus& a, const Truncation& tr) {
  require_unit_crossing(a);
  JFunctions out;
  out.sums = moment_sums(a, 4, tr);
  const auto& s = out.sums.s;
  const double den = s[1] * s[1] - s[0] * s[2];
  if (!(den < 0.0) || !(s[0] > 0.0)) {
    throw InternalConsistencyError("Cauchy-Schwarz gap s1^2 - s0 s2 is not negative");
  }
  out.cs_gap = -den / (s[0] * s[2]);
  ExtremalCoefficients& c = out.coeffs;
  c.beta = s[1] / s[0];
  c.gamma = (s[1] * s[2] - s[0] * s[3]) / den;
  c.delta = (s[1] * s[3] - s[2] * s[2]) / den;

  const auto norms = paired_series<double, 2>(
      tr, {2, 4}, [&](long n) { return -log_alpha_n(a, n); },
      [&](long n) {
        const double x = static_cast<double>(n);
        const double p1 = x - c.beta;
        const double p2 = x * x - c.gamma * x - c.delta;
        return std::array<double, 2>{p1 * p1, p2 * p2};
      });
  out.J0 = s[0];
  out.J1 = norms.sum[0];
  out.J2 = norms.sum[1];
  out.tail = norms.tail;
  out.tail.tail_bound = std::max(out.tail.tail_bound, out.sums.tail.tail_bound);
  if (out.J1 == 0.0 || out.J2 == 0.0) {
    throw RangeError("maximal domain functions underflow on this annulus");
  }
  if (!(out.J1 > 0.0 && out.J2 > 0.0)) {
    throw InternalConsistencyError("maximal domain functions are not positive");
  }
  return out;
}

cplx extremal_function_value(const GeneralAnnulus& a, Extremal which, cplx z,
                             const Truncation& tr, int derivative) {
  if (derivative < 0 || derivative > 3) throw DomainError("derivative order must lie in [0, 3]");
  const double m = std::abs(z);
  const double slack = 1.0 + 4.0 * std::numeric_limits<double>::epsilon();
  if (!(m * slack >= a.r_in() && m <= a.r_out() * slack)) {
    throw DomainError("extremal function argument lies outside the closed annulus");
  }
  const JFunctions jf = j_functions_at_one(a, tr);
  const ExtremalCoefficients c = jf.coeffs;
  const int poly_deg = which == Extremal::f0 ? 0 : which == Extremal::f_beta ? 1 : 2;
  const double log_m = std::log(m), theta = std::arg(z);
  const auto res = paired_series<cplx, 1>(
      tr, {poly_deg + derivative}, [&](long n) { return -log_alpha_n(a, n) + n * log_m; },
      [&](long n) {
        const double x = static_cast<double>(n);
        double p = 1.0;
        if (which == Extremal::f_beta) p = x - c.beta;
        if (which == Extremal::f_gammadelta) p = x * x - c.gamma * x - c.delta;
        return std::array<cplx, 1>{p * falling(n)[derivative] * std::polar(1.0, x * theta)};
      });
  return res.sum[0] * std::pow(z, -derivative);
}

JOnAr j_functions_on_A_r(double r, double lambda, const Truncation& tr) {
  if (!(r > 0.0 && r < 1.0)) throw DomainError("inner radius r must lie in (0, 1)");
  if (!(lambda > 0.0 && lambda < 1.0)) throw DomainError("lambda must lie in (0, 1)");
  const double L = std::log(r);
  JOnAr out;
  out.at_one = j_functions_at_one(GeneralAnnulus::from_logs((1.0 - lambda) * L, -lambda * L), tr);
  const double vals[3] = {out.at_one.J0, out.at_one.J1, out.at_one.J2};
  double scaled[3];
  for (int j = 0; j < 3; ++j) {
    scaled[j] = std::exp(std::log(vals[j]) - (2.0 * j + 1.0) * lambda * L);
    if (!std::isfinite(scaled[j]) || scaled[j] == 0.0) {
      throw RangeError("J" + std::to_string(j) + " on A_r not representable at r = " +
                       std::to_string(r) + ", lambda = " + std::to_string(lambda));
    }
  }
  out.J0 = scaled[0];
  out.J1 = scaled[1];
  out.J2 = scaled[2];
  return out;
}

}  // namespace annulus
