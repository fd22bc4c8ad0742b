#include <doctest.h>

#include <Eigen/Dense>
#include <numbers>
#include <random>

#include "annulus/errors.hpp"
#include "annulus/hardy.hpp"
#include "annulus/reference.hpp"
#include "oracles.hpp"

using namespace annulus;

namespace {

constexpr double kPi = std::numbers::pi;
const Truncation tr = default_truncation();

double disc_kernel(double rho) { return 1.0 / (2.0 * kPi * (1.0 - rho * rho)); }

}  // namespace

TEST_SUITE("hardy") {

TEST_CASE("annulus construction") {
  CHECK_THROWS_AS(GeneralAnnulus::from_radii(0.0, 1.0), DomainError);
  CHECK_THROWS_AS(GeneralAnnulus::from_radii(2.0, 1.0), DomainError);
  CHECK_THROWS_AS(GeneralAnnulus::from_logs(1.0, 1.0), DomainError);
  const auto a = GeneralAnnulus::from_radii(0.5, 2.0);
  CHECK(a.r_in() == doctest::Approx(0.5));
  CHECK(a.r_out() == doctest::Approx(2.0));
}

TEST_CASE("monomial norms") {
  const auto a = GeneralAnnulus::from_radii(0.5, 2.0);
  CHECK(alpha_n(a, 0) == doctest::Approx(5.0 * kPi).epsilon(1e-15));
  // Arc-length integral of |z|^(2n) over both circles.
  for (long n : {-3L, -1L, 2L, 5L}) {
    double integral = 0.0;
    for (double R : {0.5, 2.0}) {
      integral += oracles::circle_integral([&](cplx z) { return std::pow(std::norm(z), double(n)); }, R, 64).real();
    }
    CHECK(alpha_n(a, n) == doctest::Approx(integral).epsilon(1e-13));
  }
  const auto sym = GeneralAnnulus::from_radii(0.3, 1.0 / 0.3);
  for (long n = 0; n < 20; ++n) CHECK(alpha_n(sym, n) == doctest::Approx(alpha_n(sym, -n - 1)).epsilon(1e-13));
  CHECK(alpha_n(a, 200) / (2.0 * kPi * std::pow(2.0, 401)) == doctest::Approx(1.0));
  CHECK_THROWS_AS(alpha_n(a, 2000), RangeError);
  CHECK(std::isfinite(log_alpha_n(a, 2000)));
}

TEST_CASE("moment sums on symmetric annuli") {
  for (double r : {0.1, 0.5, 0.9}) {
    const auto m = moment_sums(GeneralAnnulus::from_radii(r, 1.0 / r), 4, tr);
    CHECK(m.s[1] == doctest::Approx(-m.s[0] / 2.0).epsilon(1e-13));
    const auto jf = j_functions_at_one(GeneralAnnulus::from_radii(r, 1.0 / r), tr);
    CHECK(jf.coeffs.beta == doctest::Approx(-0.5).epsilon(1e-13));
    CHECK(jf.coeffs.gamma == doctest::Approx(-1.0).epsilon(1e-10));
  }
  CHECK_THROWS_AS(moment_sums(GeneralAnnulus::from_radii(0.5, 2.0), 9, tr), DomainError);
  CHECK_THROWS_AS(moment_sums(GeneralAnnulus::from_radii(1.5, 2.0), 2, tr), DomainError);
}

TEST_CASE("Cauchy-Schwarz gap is positive") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-4.0, 4.0);
  for (int i = 0; i < 50; ++i) {
    const double li = -std::exp(u(rng)), lo = std::exp(u(rng));
    const auto m = moment_sums(GeneralAnnulus::from_logs(li, lo), 2, tr);
    CHECK(m.s[0] > 0.0);
    CHECK(m.s[0] * m.s[2] - m.s[1] * m.s[1] > 0.0);
  }
}

TEST_CASE("s0 against plain summation") {
  const double r = 0.9;
  const auto a = GeneralAnnulus::from_radii(r, 1.0 / r);
  long double direct = 0.0L;
  for (long n = -50000; n < 50000; ++n) direct += std::exp(-static_cast<long double>(log_alpha_n(a, n)));
  const auto m = moment_sums(a, 0, tr);
  CHECK(m.s[0] == doctest::Approx(static_cast<double>(direct)).epsilon(1e-12));
  CHECK(m.tail.pairs_used < 50000);
}

TEST_CASE("kernel symmetries") {
  const double r = 0.3;
  const cplx z(0.4, 0.3), w(-0.2, 0.5);
  CHECK(std::abs(szego_kernel(r, z, w, tr) - std::conj(szego_kernel(r, w, z, tr))) <= 1e-15);
  const double d = szego_kernel(r, z, z, tr).real();
  for (double t : {0.3, 1.7, 4.0}) {
    const cplx zr = z * std::polar(1.0, t);
    CHECK(szego_kernel(r, zr, zr, tr).real() == doctest::Approx(d).epsilon(1e-14));
  }
  CHECK(std::abs(szego_kernel(r, z, z, tr).imag()) <= 1e-16);
  CHECK(reference::kernel_direct(r, 0.5, 400) == doctest::Approx(d).epsilon(1e-13));
  CHECK_THROWS_AS(szego_kernel(r, 0.1, 0.5, tr), DomainError);
  CHECK_THROWS_AS(szego_kernel(1.0, 0.5, 0.5, tr), DomainError);
}

TEST_CASE("small inner radius approaches the disc kernel") {
  for (double rho : {0.1, 0.5, 0.9}) {
    CHECK(szego_kernel(1e-8, rho, rho, tr).real() == doctest::Approx(disc_kernel(rho)).epsilon(1e-6));
  }
}

TEST_CASE("self-inversion covariance") {
  const double r = 0.2;
  const double a = std::pow(r, 0.3), b = std::pow(r, 0.7);
  const double sa = szego_kernel(r, a, a, tr).real(), sb = szego_kernel(r, b, b, tr).real();
  // S(z, z) = |phi'(z)| S(phi(z), phi(z)) with phi(z) = r / z makes rho S(rho) symmetric.
  CHECK(std::abs(sa * a - sb * b) <= 1e-10 * sa * a);
  CHECK(sa * a * a == doctest::Approx(r * sb).epsilon(1e-10));
}

TEST_CASE("reproducing property on the boundary") {
  const double r = 0.4;
  const cplx z(0.5, 0.3);
  for (int k : {-2, 0, 3}) {
    cplx total = 0.0;
    for (double R : {r, 1.0}) {
      total += oracles::circle_integral([&](cplx t) { return std::pow(t, k) * szego_kernel(r, z, t, tr); }, R, 512);
    }
    CHECK(std::abs(total - std::pow(z, k)) <= 1e-12 * std::max(1.0, std::abs(std::pow(z, k))));
  }
}

TEST_CASE("radial derivatives") {
  const double r = 0.3, rho = 0.6, h = 1e-4;
  const auto F = kernel_radial_derivatives(r, rho, tr);
  const auto at = [&](double t) { return kernel_radial_derivatives(r, std::sqrt(t), tr)[0]; };
  const double t = rho * rho;
  CHECK(F[0] == doctest::Approx(szego_kernel(r, rho, rho, tr).real()).epsilon(1e-15));
  CHECK(F[1] == doctest::Approx((at(t + h) - at(t - h)) / (2 * h)).epsilon(1e-7));
  CHECK(F[2] == doctest::Approx((at(t + h) - 2 * at(t) + at(t - h)) / (h * h)).epsilon(1e-5));
  CHECK_THROWS_AS(kernel_radial_derivatives(r, 0.2, tr), DomainError);
}

TEST_CASE("diagonal jet against the Cauchy oracle") {
  const double r = 0.3;
  const cplx z0(0.45, 0.4);
  const auto jet = szego_diagonal_jet(r, z0, 3, tr);
  const auto F = [&](cplx z, cplx w) { return szego_kernel(r, z, std::conj(w), tr); };
  for (int j = 0; j <= 3; ++j) {
    for (int k = 0; k <= 3; ++k) {
      const cplx ref = oracles::cauchy_mixed(F, z0, std::conj(z0), j, k, 0.1, 48);
      CAPTURE(j);
      CAPTURE(k);
      CHECK(std::abs(jet(j, k) - ref) <= 1e-8 * std::abs(ref));
    }
  }
  CHECK_THROWS_AS(szego_diagonal_jet(r, z0, 4, tr), ShapeError);
  CHECK_THROWS_AS(szego_diagonal_jet(r, 0.2, 2, tr), DomainError);
}

TEST_CASE("J1 matches a finite-dimensional extremal problem") {
  // max |f'(1)|^2 over f = sum a_n z^n, f(1) = 0, ||f|| = 1. The monomials are
  // orthogonal, so in coordinates b_n = a_n sqrt(alpha_n) this is the top
  // eigenvalue of P u u^T P with P the projector orthogonal to v.
  const auto a = GeneralAnnulus::from_radii(0.6, 1.4);
  const int N = 80;
  Eigen::VectorXd u(2 * N + 1), v(2 * N + 1);
  for (int n = -N; n <= N; ++n) {
    const double s = std::sqrt(alpha_n(a, n));
    u(n + N) = n / s;
    v(n + N) = 1.0 / s;
  }
  const Eigen::MatrixXd P = Eigen::MatrixXd::Identity(2 * N + 1, 2 * N + 1) - v * v.transpose() / v.squaredNorm();
  const Eigen::VectorXd pu = P * u;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(pu * pu.transpose());
  const double top = es.eigenvalues().maxCoeff();
  const auto jf = j_functions_at_one(a, tr);
  CHECK(jf.J1 == doctest::Approx(top).epsilon(1e-8));
  CHECK(jf.J0 == doctest::Approx(v.squaredNorm()).epsilon(1e-12));
}

TEST_CASE("extremal functions") {
  const auto a = GeneralAnnulus::from_radii(0.5, 2.0);
  const auto jf = j_functions_at_one(a, tr);
  CHECK(std::abs(extremal_function_value(a, Extremal::f_beta, 1.0, tr)) <= 1e-10);
  CHECK(std::abs(extremal_function_value(a, Extremal::f_gammadelta, 1.0, tr)) <= 1e-10);
  CHECK(std::abs(extremal_function_value(a, Extremal::f_gammadelta, 1.0, tr, 1)) <= 1e-10);
  CHECK(extremal_function_value(a, Extremal::f0, 1.0, tr).real() == doctest::Approx(jf.J0).epsilon(1e-14));

  // Norms by quadrature over both boundary circles.
  const auto norm_sq = [&](Extremal e) {
    double total = 0.0;
    for (double R : {0.5, 2.0}) {
      total += oracles::circle_integral(
                   [&](cplx z) { return std::norm(extremal_function_value(a, e, z, tr)); }, R, 128)
                   .real();
    }
    return total;
  };
  const double fb = std::norm(extremal_function_value(a, Extremal::f_beta, 1.0, tr, 1));
  CHECK(fb / norm_sq(Extremal::f_beta) == doctest::Approx(jf.J1).epsilon(1e-9));
  const double fg = std::norm(extremal_function_value(a, Extremal::f_gammadelta, 1.0, tr, 2));
  CHECK(fg / norm_sq(Extremal::f_gammadelta) == doctest::Approx(jf.J2).epsilon(1e-9));
  CHECK_THROWS_AS(extremal_function_value(a, Extremal::f0, 3.0, tr), DomainError);
  CHECK_THROWS_AS(extremal_function_value(a, Extremal::f0, 1.0, tr, 4), DomainError);
}

TEST_CASE("J functions on A_r by rescaling") {
  const double r = 0.2, lambda = 0.3;
  const auto j = j_functions_on_A_r(r, lambda, tr);
  // Rescaling identity checked against a direct evaluation on A(r, 1) with the
  // point moved to 1 by hand: the moments scale with r^(-lambda (2n+1)).
  const auto direct = j_functions_at_one(GeneralAnnulus::from_logs((1 - lambda) * std::log(r), -lambda * std::log(r)), tr);
  CHECK(j.J0 == doctest::Approx(direct.J0 * std::pow(r, -lambda)).epsilon(1e-14));
  // J0 is the diagonal kernel at r^lambda.
  const double rho = std::pow(r, lambda);
  CHECK(j.J0 == doctest::Approx(szego_kernel(r, rho, rho, tr).real()).epsilon(1e-13));
  CHECK_THROWS_AS(j_functions_on_A_r(r, 0.0, tr), DomainError);
  CHECK_THROWS_AS(j_functions_on_A_r(1e-250, 0.5, tr), RangeError);
  const double rq = 1e-4, q = std::pow(rq, 0.25);
  CHECK(j_functions_on_A_r(rq, 0.25, tr).J0 == doctest::Approx(reference::kernel_direct(rq, q, 200)).epsilon(1e-14));
  CHECK_THROWS_AS(j_functions_on_A_r(1.5, 0.5, tr), DomainError);
}

TEST_CASE("truncation limits") {
  Truncation tiny{4, 1e-16, 8};
  CHECK_THROWS_AS(szego_kernel(0.99, 0.995, 0.995, tiny), ConvergenceError);
  Truncation bad{0, 1e-16, 8};
  CHECK_THROWS_AS(moment_sums(GeneralAnnulus::from_radii(0.5, 2.0), 2, bad), DomainError);
  // A looser tolerance stops earlier but stays close.
  Truncation loose = tr;
  loose.tail_tol = 1e-8;
  const auto a = moment_sums(GeneralAnnulus::from_radii(0.8, 1.25), 2, tr);
  const auto b = moment_sums(GeneralAnnulus::from_radii(0.8, 1.25), 2, loose);
  CHECK(b.tail.pairs_used <= a.tail.pairs_used);
  CHECK(b.s[0] == doctest::Approx(a.s[0]).epsilon(1e-7));
}

}  // TEST_SUITE
