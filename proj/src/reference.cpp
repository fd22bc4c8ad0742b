#include "annulus/reference.hpp"

#include <cmath>
#include <numbers>

#include "annulus/errors.hpp"
#include "annulus/summation.hpp"

namespace annulus::reference {

namespace {

cplx box_sum(double two_l, cplx z, int M, int N) {
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  CompensatedSum<cplx> acc;
  acc += 1.0 / (z * z);
  for (int m = -M; m <= M; ++m) {
    for (int n = -N; n <= N; ++n) {
      if (m == 0 && n == 0) continue;
      const cplx w(m * two_l, n * kTwoPi);
      const cplx d = z - w;
      acc += 1.0 / (d * d) - 1.0 / (w * w);
    }
  }
  return acc.value();
}

}  // namespace

cplx lattice_wp(double r, cplx z, int n0) {
  if (!(r > 0.0 && r < 1.0)) throw DomainError("inner radius r must lie in (0, 1)");
  if (n0 < 1) throw DomainError("box size must be positive");
  const double two_l = -2.0 * std::log(r);
  // Match the real half-extent (m0 + 1/2) 2L to the imaginary one (n0 + 1/2) 2 pi.
  const int m0 = std::max(1, static_cast<int>(std::lround((n0 + 0.5) * std::numbers::pi * 2.0 / two_l - 0.5)));
  // Scaling the box by 3 keeps its edges at half cells: 3 (2 m0 + 1) = 2 (3 m0 + 1) + 1.
  const cplx s1 = box_sum(two_l, z, m0, n0);
  const cplx s3 = box_sum(two_l, z, 3 * m0 + 1, 3 * n0 + 1);
  return (9.0 * s3 - s1) / 8.0;
}

double kernel_direct(double r, double rho, int n_max) {
  if (!(r > 0.0 && r < 1.0)) throw DomainError("inner radius r must lie in (0, 1)");
  const double t = rho * rho;
  CompensatedSum<double> acc;
  for (int n = -n_max; n <= n_max; ++n) {
    const double term = n >= 0 ? std::pow(t, n) / (1.0 + std::pow(r, 2 * n + 1))
                               : std::pow(t / (r * r), n) / (std::pow(r, -(2 * n + 1)) + 1.0) / r;
    acc += term / (2.0 * std::numbers::pi);
  }
  return acc.value();
}

}  // namespace annulus::reference
