#pragma once

#include <array>
#include <complex>
#include <vector>

#include "annulus/jets.hpp"
#include "annulus/summation.hpp"

namespace annulus {

/// Round annulus r_in < |z| < r_out. The logarithms of the radii are the
/// primary data, so annuli such as A(r^(1-lambda), r^(-lambda)) stay exact
/// for tiny r.
struct GeneralAnnulus {
  double log_in = 0.0;
  double log_out = 0.0;

  /// Throws DomainError unless 0 < r_in < r_out.
  static GeneralAnnulus from_radii(double r_in, double r_out);
  static GeneralAnnulus from_logs(double log_in, double log_out);

  double r_in() const;
  double r_out() const;
};

/// Squared H^2 norm of z^n: 2 pi (r_in^(2n+1) + r_out^(2n+1)).
/// Throws RangeError (naming n) when the value is not representable.
double alpha_n(const GeneralAnnulus& a, long n);
/// log(alpha_n), finite for every n.
double log_alpha_n(const GeneralAnnulus& a, long n);

struct MomentSums {
  std::vector<double> s;  // s_j = sum_n n^j / alpha_n, j = 0..j_max
  GeneralAnnulus annulus;
  TailReport tail;
};

/// Throws DomainError for j_max outside [0, 8], ConvergenceError when the
/// tail bound cannot be met below the hard cap.
MomentSums moment_sums(const GeneralAnnulus& a, int j_max, const Truncation& tr);

/// Szegő kernel of A_r = {r < |z| < 1}:
/// S(z, w) = (1/2pi) sum_n (z conj(w))^n / (1 + r^(2n+1)).
/// Points may lie on the boundary circles as long as r^2 < |z conj(w)| < 1.
cplx szego_kernel(double r, cplx z, cplx w, const Truncation& tr);

/// F(t), F'(t), F''(t), F'''(t) for the diagonal S(z, z) = F(|z|^2), at t = rho^2.
std::array<double, 4> kernel_radial_derivatives(double r, double rho, const Truncation& tr);

/// Jet of z -> S(z, z) at z0 with entries d^j dbar^k S, j, k <= order.
WirtingerJet szego_diagonal_jet(double r, cplx z0, int order, const Truncation& tr);

struct ExtremalCoefficients {
  double beta = 0.0;
  double gamma = 0.0;
  double delta = 0.0;
};

struct JFunctions {
  double J0 = 0.0;
  double J1 = 0.0;
  double J2 = 0.0;
  ExtremalCoefficients coeffs;
  MomentSums sums;
  double cs_gap = 0.0;  // (s0 s2 - s1^2) / (s0 s2), conditioning of the 2x2 system
  TailReport tail;
};

/// Maximal domain functions of A(r_in, r_out) at the point 1.
///
/// J1 and J2 are evaluated as the norms sum (n - beta)^2 / alpha_n and
/// sum (n^2 - gamma n - delta)^2 / alpha_n of the extremal functions; these
/// are minima in beta and (gamma, delta), so coefficient round-off enters
/// only quadratically. Throws DomainError unless r_in < 1 < r_out and
/// InternalConsistencyError when s1^2 - s0 s2 is not negative.
JFunctions j_functions_at_one(const GeneralAnnulus& a, const Truncation& tr);

enum class Extremal { f0, f_beta, f_gammadelta };

/// d-th derivative (d <= 3) at z of f0 = sum z^n / alpha_n,
/// f_beta = sum (n - beta) z^n / alpha_n or
/// f_gammadelta = sum (n^2 - gamma n - delta) z^n / alpha_n.
cplx extremal_function_value(const GeneralAnnulus& a, Extremal which, cplx z,
                             const Truncation& tr, int derivative = 0);

struct JOnAr {
  double J0 = 0.0;
  double J1 = 0.0;
  double J2 = 0.0;
  JFunctions at_one;  // the same quantities on A(r^(1-lambda), r^(-lambda)) at 1
};

/// J^(j) of A_r at the point r^lambda, obtained from A(r^(1-lambda), r^(-lambda))
/// at 1 by the factor r^(-(2j+1) lambda). Throws RangeError when a rescaled
/// value is not representable.
JOnAr j_functions_on_A_r(double r, double lambda, const Truncation& tr);

}  // namespace annulus
