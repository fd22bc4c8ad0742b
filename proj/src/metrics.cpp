#include "annulus/metrics.hpp"

#include <cmath>
#include <numbers>

#include "annulus/errors.hpp"

namespace annulus {

namespace {

constexpr double kPi = std::numbers::pi;

void require_inside(double r, cplx z) {
  if (!(r > 0.0 && r < 1.0)) throw DomainError("inner radius r must lie in (0, 1)");
  const double m = std::abs(z);
  if (!(m > r && m < 1.0)) throw DomainError("point must satisfy r < |z| < 1");
}

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace

const char* metric_name(Metric m) { return m == Metric::caratheodory ? "c" : "s"; }

const char* boundary_name(Boundary b) { return b == Boundary::outer ? "outer" : "inner"; }

MetricSample sample_from_j(cplx z, double lambda, const JOnAr& j) {
  MetricSample out;
  out.z = z;
  out.lambda = lambda;
  out.S = j.J0;
  out.c = 2.0 * kPi * j.J0;
  out.s = std::sqrt(j.J1 / j.J0);
  out.kappa_s = 4.0 - 2.0 * j.J0 * j.J2 / (j.J1 * j.J1);
  out.kappa_c = -j.J1 / (kPi * kPi * j.J0 * j.J0 * j.J0);
  out.tail = j.at_one.tail;
  return out;
}

MetricSample sample(double r, cplx z, const Truncation& tr) {
  require_inside(r, z);
  const double lambda = std::log(std::abs(z)) / std::log(r);
  return sample_from_j(z, lambda, j_functions_on_A_r(r, lambda, tr));
}

cplx wp_difference(const elliptic::EllipticContext& ctx, cplx z) {
  require_inside(ctx.r, z);
  const cplx u(2.0 * std::log(std::abs(z)), 0.0);
  return elliptic::wp(ctx, u) - elliptic::wp(ctx, u + ctx.omega(1) + ctx.omega(3));
}

double szego_metric_wp(const elliptic::EllipticContext& ctx, cplx z) {
  const double d = wp_difference(ctx, z).real();
  if (!(d > 0.0)) throw InternalConsistencyError("wp difference is not positive");
  return std::sqrt(d) / std::abs(z);
}

double szego_metric_wp(double r, cplx z) {
  require_inside(r, z);
  return szego_metric_wp(elliptic::make_elliptic_context(r), z);
}

double capacity_curvature_density(const elliptic::EllipticContext& ctx, cplx z) {
  require_inside(ctx.r, z);
  const double m = std::abs(z);
  return (elliptic::wp(ctx, cplx(2.0 * std::log(m), 0.0)).real() + ctx.c) / (m * m);
}

double sigma_star_laplacian(const elliptic::EllipticContext& ctx, cplx z) {
  require_inside(ctx.r, z);
  const double m = std::abs(z);
  const cplx u = cplx(2.0 * std::log(m), 0.0) + ctx.omega(1) + ctx.omega(3);
  return -(elliptic::wp(ctx, u).real() + ctx.c) / (m * m);
}

double capacity_metric(const elliptic::EllipticContext& ctx, cplx z, const Truncation& tr) {
  require_inside(ctx.r, z);
  const double S = szego_kernel(ctx.r, z, z, tr).real();
  const double star_sq = elliptic::sigma2_star_sq(ctx, -2.0 * std::log(std::abs(z)));
  return 2.0 * kPi * S / std::sqrt(star_sq);
}

double capacity_metric(double r, cplx z) {
  require_inside(r, z);
  return capacity_metric(elliptic::make_elliptic_context(r), z, default_truncation());
}

WirtingerJet metric_jet(double r, cplx z, Metric which, int order, const Truncation& tr) {
  require_inside(r, z);
  if (which == Metric::caratheodory) {
    return jet_scale(szego_diagonal_jet(r, z, order, tr), 2.0 * kPi);
  }
  if (order + 1 > WirtingerJet::kMaxOrder) {
    throw ShapeError("Szegő metric jet of order " + std::to_string(order) +
                     " needs kernel derivatives beyond the jet order cap");
  }
  return jet_sqrt(jet_ddbar(jet_log(szego_diagonal_jet(r, z, order + 1, tr))));
}

double curvature_from_jet(const WirtingerJet& m, int N) {
  if (N < 1 || N > 2) throw DomainError("curvature order N must be 1 or 2");
  if (m.order() < N) throw ShapeError("metric jet order below the curvature order");
  cplx det;
  if (N == 1) {
    det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  } else {
    det = m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
          m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
          m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
  }
  const double m0 = m(0, 0).real();
  return -4.0 * det.real() / std::pow(m0, (N + 1) * (N + 1));
}

double higher_curvature(double r, cplx z, int N, Metric which, const Truncation& tr) {
  if (N < 1 || N > 2) throw DomainError("curvature order N must be 1 or 2");
  if (N == 2 && which == Metric::szego) {
    throw DomainError("second-order curvature is provided for the Carathéodory metric only");
  }
  return curvature_from_jet(metric_jet(r, z, which, N, tr), N);
}

RadialProfile radial_profile(double r, double rho, Metric which, const Truncation& tr) {
  const auto F = kernel_radial_derivatives(r, rho, tr);
  const double t = rho * rho;
  const double l1 = F[1] / F[0];
  if (which == Metric::caratheodory) return {2.0 * kPi * F[0], l1};
  const double l2 = F[2] / F[0] - l1 * l1;
  const double l3 = F[3] / F[0] - 3.0 * l1 * F[2] / F[0] + 2.0 * l1 * l1 * l1;
  // s^2 = d dbar log S = (t L')' with L = log F.
  const double h = l1 + t * l2;
  const double dh = 2.0 * l2 + t * l3;
  if (!(h > 0.0)) throw InternalConsistencyError("d dbar log S is not positive");
  return {std::sqrt(h), 0.5 * dh / h};
}

double closure_residual(double r, double rho, Metric which, const Truncation& tr) {
  return 1.0 + 2.0 * rho * rho * radial_profile(r, rho, which, tr).dlogm_dt;
}

namespace {

void require_half_plane(cplx dpsi, cplx z) {
  if (dpsi == 0.0) throw DomainError("d psi(p) must be nonzero");
  if (!(2.0 * (dpsi * z).real() < 1.0)) throw DomainError("point lies outside the half-plane");
}

}  // namespace

cplx half_plane_kernel(cplx dpsi, cplx z, cplx w) {
  require_half_plane(dpsi, z);
  require_half_plane(dpsi, w);
  return std::abs(dpsi) / (2.0 * kPi * (1.0 - dpsi * z - std::conj(dpsi) * std::conj(w)));
}

double half_plane_szego_metric(cplx dpsi, cplx z) {
  require_half_plane(dpsi, z);
  return std::abs(dpsi) / (1.0 - 2.0 * (dpsi * z).real());
}

BoundaryProbe boundary_asymptotics_probe(double r, int k, int l, std::span<const double> approach,
                                         Boundary boundary, ProbeQuantity quantity,
                                         const Truncation& tr) {
  if (k < 0 || l < 0 || k + l > 2) throw DomainError("probe needs k, l >= 0 and k + l <= 2");
  if (!(r > 0.0 && r < 1.0)) throw DomainError("inner radius r must lie in (0, 1)");
  BoundaryProbe out;
  out.boundary = boundary;
  const bool outer = boundary == Boundary::outer;
  out.defining_function = outer ? "|z|^2-1" : "r^2-|z|^2";
  // |d psi(p)| and d psi(p) = dbar psi(p) at the real boundary point p.
  const double grad_abs = outer ? 1.0 : r;
  const double grad = outer ? 1.0 : -r;
  const double scale = quantity == ProbeQuantity::kernel ? 1.0 / (2.0 * kPi) : 1.0;
  out.expected_limit = factorial(k + l) * scale * grad_abs * std::pow(grad, k + l);

  const int order = std::max(k, l);
  for (double rho : approach) {
    const cplx z(rho, 0.0);
    require_inside(r, z);
    const WirtingerJet jet = quantity == ProbeQuantity::kernel
                                 ? szego_diagonal_jet(r, z, order, tr)
                                 : metric_jet(r, z, Metric::szego, order, tr);
    const double minus_psi = outer ? 1.0 - rho * rho : rho * rho - r * r;
    out.rho.push_back(rho);
    out.values.push_back(jet(k, l).real() * std::pow(minus_psi, k + l + 1));
  }
  return out;
}

}  // namespace annulus
