#include <doctest.h>

#include <random>

#include "annulus/errors.hpp"
#include "annulus/jets.hpp"
#include "oracles.hpp"

using namespace annulus;

namespace {

WirtingerJet abs_sq(int order, cplx z0) {
  return jet_mul(WirtingerJet::coordinate(order, z0), WirtingerJet::conj_coordinate(order, z0));
}

double max_entry_error(const WirtingerJet& a, const WirtingerJet& b) {
  double e = 0.0;
  for (int j = 0; j <= a.order(); ++j) {
    for (int k = 0; k <= a.order(); ++k) e = std::max(e, std::abs(a(j, k) - b(j, k)));
  }
  return e;
}

// A random rational function of (z, w) with w standing in for conj(z), as a
// pair of closures: one built from jets, one pointwise.
struct RandomRational {
  std::array<cplx, 4> p, q;
};

cplx rational_value(const RandomRational& f, cplx z, cplx w) {
  const cplx num = f.p[0] + f.p[1] * z + f.p[2] * w + f.p[3] * z * w;
  const cplx den = f.q[0] + f.q[1] * z + f.q[2] * w + f.q[3] * z * w;
  return num / den;
}

WirtingerJet rational_jet(const RandomRational& f, cplx z0) {
  const int N = WirtingerJet::kMaxOrder;
  const auto z = WirtingerJet::coordinate(N, z0), w = WirtingerJet::conj_coordinate(N, z0);
  const auto zw = jet_mul(z, w);
  const auto lin = [&](const std::array<cplx, 4>& c) {
    return jet_add(jet_add(WirtingerJet::constant(N, c[0]), jet_scale(z, c[1])),
                   jet_add(jet_scale(w, c[2]), jet_scale(zw, c[3])));
  };
  return jet_mul(lin(f.p), jet_recip(lin(f.q)));
}

}  // namespace

TEST_SUITE("jets") {

TEST_CASE("order limits") {
  CHECK_THROWS_AS(WirtingerJet(-1), ShapeError);
  CHECK_THROWS_AS(WirtingerJet(4), ShapeError);
  CHECK_NOTHROW(WirtingerJet(3));
  CHECK_THROWS_AS(jet_add(WirtingerJet(1), WirtingerJet(2)), ShapeError);
  CHECK_THROWS_AS(jet_mul(WirtingerJet(3), WirtingerJet(2)), ShapeError);
  CHECK_THROWS_AS(jet_ddbar(WirtingerJet(0)), ShapeError);
  CHECK_THROWS_AS(laplacian_from_jet(WirtingerJet(0)), ShapeError);
  CHECK(WirtingerJet::constant(3, 1.0).truncated(1).order() == 1);
}

TEST_CASE("sum with a constant") {
  const auto a = abs_sq(2, 1.0);
  const auto s = jet_add(a, WirtingerJet::constant(2, 1.0));
  CHECK(s(1, 1) == cplx(1.0));
  CHECK(s(0, 0) == cplx(2.0));
  CHECK(max_entry_error(jet_add(a, WirtingerJet(2)), a) == 0.0);
}

TEST_CASE("product of z and conj(z)") {
  const auto p = abs_sq(3, 2.0);
  CHECK(p(1, 1) == cplx(1.0));
  CHECK(p(0, 0) == cplx(4.0));
  CHECK(p(1, 0) == cplx(2.0));
  CHECK(p(0, 1) == cplx(2.0));
  CHECK(p(2, 0) == cplx(0.0));
  CHECK(p(2, 2) == cplx(0.0));
  CHECK(max_entry_error(jet_mul(p, WirtingerJet::constant(3, 1.0)), p) == 0.0);
}

TEST_CASE("log, sqrt and reciprocal of simple jets") {
  CHECK(max_entry_error(jet_log(WirtingerJet::constant(3, 1.0)), WirtingerJet(3)) == 0.0);
  CHECK(max_entry_error(jet_sqrt(WirtingerJet::constant(3, 4.0)), WirtingerJet::constant(3, 2.0)) <= 1e-15);
  const auto l = jet_log(abs_sq(3, 1.0));
  CHECK(std::abs(l(1, 1)) <= 1e-15);
  CHECK(std::abs(l(2, 2)) <= 1e-14);
  CHECK(l(1, 0).real() == doctest::Approx(1.0));
  const auto inv = jet_recip(WirtingerJet::coordinate(3, 2.0));
  CHECK(inv(0, 0).real() == doctest::Approx(0.5));
  CHECK(inv(1, 0).real() == doctest::Approx(-0.25));
  CHECK(inv(3, 0).real() == doctest::Approx(-6.0 / 16.0));
  CHECK(std::abs(inv(1, 1)) == 0.0);
}

TEST_CASE("singular and branch errors") {
  CHECK_THROWS_AS(jet_recip(WirtingerJet(2)), SingularJetError);
  CHECK_THROWS_AS(jet_log(WirtingerJet(2)), SingularJetError);
  CHECK_THROWS_AS(jet_sqrt(WirtingerJet(2)), SingularJetError);
  CHECK_THROWS_AS(jet_log(WirtingerJet::constant(2, -1.0)), DomainError);
}

TEST_CASE("laplacian") {
  CHECK(laplacian_from_jet(abs_sq(1, cplx(0.3, 0.4))) == doctest::Approx(4.0));
  // log 1/(1 - |z|^2) at the origin.
  const auto g = jet_scale(jet_log(jet_add(WirtingerJet::constant(2, 1.0), jet_scale(abs_sq(2, 0.0), -1.0))), -1.0);
  CHECK(laplacian_from_jet(g) == doctest::Approx(4.0));
  // Re z^3 is harmonic.
  const auto z = WirtingerJet::coordinate(3, cplx(0.2, -0.7));
  const auto w = WirtingerJet::conj_coordinate(3, cplx(0.2, -0.7));
  const auto h = jet_add(jet_mul(z, jet_mul(z, z)), jet_mul(w, jet_mul(w, w)));
  CHECK(std::abs(laplacian_from_jet(h)) <= 1e-14);
  const auto dd = jet_ddbar(abs_sq(3, 0.5));
  CHECK(dd.order() == 2);
  CHECK(dd(0, 0) == cplx(1.0));
}

TEST_CASE("random rational functions against the Cauchy oracle") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-0.3, 0.3);
  for (int trial = 0; trial < 20; ++trial) {
    RandomRational f;
    for (int i = 0; i < 4; ++i) {
      f.p[i] = {u(rng) * 3.0, u(rng) * 3.0};
      f.q[i] = {u(rng), u(rng)};
    }
    f.q[0] += 1.5;
    const cplx z0(u(rng), u(rng));
    const auto jet = rational_jet(f, z0);
    const auto F = [&](cplx z, cplx w) { return rational_value(f, z, w); };
    for (int j = 0; j <= 3; ++j) {
      for (int k = 0; k <= 3; ++k) {
        const cplx ref = oracles::cauchy_mixed(F, z0, std::conj(z0), j, k, 0.2, 64);
        CAPTURE(trial);
        CAPTURE(j);
        CAPTURE(k);
        CHECK(std::abs(jet(j, k) - ref) <= 1e-9 * std::max(1.0, std::abs(ref)));
      }
    }
    // log and sqrt agree with the oracle too, on a function kept away from the branch cut.
    const auto shifted = jet_add(jet, WirtingerJet::constant(3, 3.0));
    const auto lg = jet_log(shifted), sq = jet_sqrt(shifted);
    for (int j = 0; j <= 3; ++j) {
      for (int k = 0; k <= 3; ++k) {
        const cplx rl = oracles::cauchy_mixed([&](cplx z, cplx w) { return std::log(F(z, w) + 3.0); }, z0,
                                              std::conj(z0), j, k, 0.2, 64);
        const cplx rs = oracles::cauchy_mixed([&](cplx z, cplx w) { return std::sqrt(F(z, w) + 3.0); }, z0,
                                              std::conj(z0), j, k, 0.2, 64);
        CHECK(std::abs(lg(j, k) - rl) <= 1e-9 * std::max(1.0, std::abs(rl)));
        CHECK(std::abs(sq(j, k) - rs) <= 1e-9 * std::max(1.0, std::abs(rs)));
      }
    }
  }
}

TEST_CASE("real functions keep the conjugate symmetry") {
  const cplx z0(0.31, -0.22);
  const int N = 3;
  const auto r2 = abs_sq(N, z0);
  const auto z = WirtingerJet::coordinate(N, z0), w = WirtingerJet::conj_coordinate(N, z0);
  const auto re = jet_scale(jet_add(z, w), 0.5);
  const auto f = jet_add(WirtingerJet::constant(N, 2.0), jet_mul(r2, re));
  for (const auto& g : {f, jet_mul(f, f), jet_log(f), jet_sqrt(f), jet_recip(f)}) {
    for (int j = 0; j <= N; ++j) {
      for (int k = 0; k <= N; ++k) CHECK(std::abs(g(j, k) - std::conj(g(k, j))) <= 1e-13 * (1.0 + std::abs(g(j, k))));
    }
  }
}

}  // TEST_SUITE
