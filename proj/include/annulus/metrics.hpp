#pragma once

#include <complex>
#include <span>
#include <vector>

#include "annulus/elliptic.hpp"
#include "annulus/hardy.hpp"
#include "annulus/jets.hpp"

namespace annulus {

/// Carathéodory and Szegő metric data of A_r at one point.
struct MetricSample {
  cplx z;
  double lambda = 0.0;   // |z| = r^lambda
  double S = 0.0;        // Szegő kernel on the diagonal
  double c = 0.0;        // Carathéodory density, 2 pi S
  double s = 0.0;        // Szegő metric density
  double kappa_c = 0.0;
  double kappa_s = 0.0;
  TailReport tail;
};

enum class Metric { caratheodory, szego };

const char* metric_name(Metric m);

/// All quantities from the maximal domain functions J0, J1, J2 at |z|.
/// Throws DomainError unless r < |z| < 1.
MetricSample sample(double r, cplx z, const Truncation& tr);

/// The same from precomputed values of J^(j) on A_r at the point z.
MetricSample sample_from_j(cplx z, double lambda, const JOnAr& j);

/// wp(2 log|z|) - wp(2 log|z| + omega1 + omega3); real and positive in A_r.
cplx wp_difference(const elliptic::EllipticContext& ctx, cplx z);

/// Szegő metric density from the elliptic closed form
/// s^2 = (wp(2 log|z|) - wp(2 log|z| + omega1 + omega3)) / |z|^2.
double szego_metric_wp(const elliptic::EllipticContext& ctx, cplx z);
double szego_metric_wp(double r, cplx z);

/// Zarankiewicz density (wp(2 log|z|) + c) / |z|^2, equal to d dbar log of the
/// capacity metric.
double capacity_curvature_density(const elliptic::EllipticContext& ctx, cplx z);

/// d dbar log sigma2*(-2 log|z|) = -(wp(2 log|z| + omega1 + omega3) + c) / |z|^2.
double sigma_star_laplacian(const elliptic::EllipticContext& ctx, cplx z);

/// Logarithmic capacity metric 2 pi S(z) / sigma2*(-2 log|z|).
double capacity_metric(const elliptic::EllipticContext& ctx, cplx z, const Truncation& tr);
double capacity_metric(double r, cplx z);

/// Jet of the metric density at z: 2 pi S for the Carathéodory metric,
/// sqrt(d dbar log S) for the Szegő metric (which consumes one extra S order).
WirtingerJet metric_jet(double r, cplx z, Metric which, int order, const Truncation& tr);

/// -4 det(d^j dbar^k m)_{j,k<=N} / m^((N+1)^2) for N in {1, 2}.
double curvature_from_jet(const WirtingerJet& m, int N);

/// N-th order curvature. N = 2 is provided for the Carathéodory metric only;
/// other combinations throw DomainError.
double higher_curvature(double r, cplx z, int N, Metric which, const Truncation& tr);

/// Density m(rho) of a rotation-invariant metric and d log m / dt, t = |z|^2.
/// The Wirtinger derivative is d log m = (d log m / dt) conj(z).
struct RadialProfile {
  double m = 0.0;
  double dlogm_dt = 0.0;
};

RadialProfile radial_profile(double r, double rho, Metric which, const Truncation& tr);

/// 1 + rho d log m / d rho; the circle |z| = rho is a geodesic iff this vanishes.
double closure_residual(double r, double rho, Metric which, const Truncation& tr);

/// Blow-up model at a boundary point p with d psi(p) = dpsi: the half-plane
/// {-1 + 2 Re(dpsi z) < 0}. Throws DomainError outside it or for dpsi = 0.
cplx half_plane_kernel(cplx dpsi, cplx z, cplx w);
double half_plane_szego_metric(cplx dpsi, cplx z);

enum class Boundary { outer, inner };
enum class ProbeQuantity { kernel, szego_metric };

const char* boundary_name(Boundary b);

struct BoundaryProbe {
  Boundary boundary = Boundary::outer;
  const char* defining_function = "";  // "|z|^2-1" or "r^2-|z|^2"
  std::vector<double> rho;
  std::vector<double> values;  // d^k dbar^l q(rho) (-psi(rho))^(k+l+1)
  double expected_limit = 0.0;
};

/// Probes d^k dbar^l q (-psi)^(k+l+1) along real points rho approaching the
/// boundary point 1 (outer, psi = |z|^2 - 1) or r (inner, psi = r^2 - |z|^2),
/// where q is S or the Szegő metric density. Requires k + l <= 2.
BoundaryProbe boundary_asymptotics_probe(double r, int k, int l, std::span<const double> approach,
                                         Boundary boundary, ProbeQuantity quantity,
                                         const Truncation& tr);

}  // namespace annulus
