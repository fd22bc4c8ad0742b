#include "annulus/jets.hpp"

#include <cmath>

#include "annulus/errors.hpp"

namespace annulus {

namespace {

constexpr double kBinom[4][4] = {{1, 0, 0, 0}, {1, 1, 0, 0}, {1, 2, 1, 0}, {1, 3, 3, 1}};

void require_same_order(const WirtingerJet& a, const WirtingerJet& b) {
  if (a.order() != b.order()) throw ShapeError("jet order mismatch");
}

// Leibniz sum for entry (j, k), skipping the pairs flagged by `skip`.
template <typename Skip>
cplx leibniz(const WirtingerJet& a, const WirtingerJet& b, int j, int k, Skip skip) {
  cplx sum = 0.0;
  for (int p = 0; p <= j; ++p) {
    for (int q = 0; q <= k; ++q) {
      if (skip(p, q)) continue;
      sum += kBinom[j][p] * kBinom[k][q] * a(p, q) * b(j - p, k - q);
    }
  }
  return sum;
}

// Entries in an order compatible with the recursions: (j, k) after every
// (p, q) with p <= j, q <= k.
template <typename F>
void for_each_entry(int order, F f) {
  for (int s = 0; s <= 2 * order; ++s) {
    for (int j = 0; j <= order; ++j) {
      const int k = s - j;
      if (k >= 0 && k <= order) f(j, k);
    }
  }
}

}  // namespace

WirtingerJet::WirtingerJet(int order) : order_(order) {
  if (order < 0 || order > kMaxOrder) {
    throw ShapeError("jet order must lie in [0, " + std::to_string(kMaxOrder) + "]");
  }
}

WirtingerJet WirtingerJet::constant(int order, cplx value) {
  WirtingerJet j(order);
  j(0, 0) = value;
  return j;
}

WirtingerJet WirtingerJet::coordinate(int order, cplx z0) {
  WirtingerJet j = constant(order, z0);
  if (order >= 1) j(1, 0) = 1.0;
  return j;
}

WirtingerJet WirtingerJet::conj_coordinate(int order, cplx z0) {
  WirtingerJet j = constant(order, std::conj(z0));
  if (order >= 1) j(0, 1) = 1.0;
  return j;
}

WirtingerJet WirtingerJet::truncated(int order) const {
  if (order > order_) throw ShapeError("cannot raise jet order by truncation");
  WirtingerJet out(order);
  for (int j = 0; j <= order; ++j) {
    for (int k = 0; k <= order; ++k) out(j, k) = (*this)(j, k);
  }
  return out;
}

WirtingerJet jet_add(const WirtingerJet& a, const WirtingerJet& b) {
  require_same_order(a, b);
  WirtingerJet out(a.order());
  for_each_entry(a.order(), [&](int j, int k) { out(j, k) = a(j, k) + b(j, k); });
  return out;
}

WirtingerJet jet_scale(const WirtingerJet& a, cplx factor) {
  WirtingerJet out(a.order());
  for_each_entry(a.order(), [&](int j, int k) { out(j, k) = factor * a(j, k); });
  return out;
}

WirtingerJet jet_mul(const WirtingerJet& a, const WirtingerJet& b) {
  require_same_order(a, b);
  WirtingerJet out(a.order());
  for_each_entry(a.order(), [&](int j, int k) {
    out(j, k) = leibniz(a, b, j, k, [](int, int) { return false; });
  });
  return out;
}

WirtingerJet jet_recip(const WirtingerJet& a) {
  const cplx f0 = a(0, 0);
  if (f0 == cplx(0.0, 0.0)) throw SingularJetError("reciprocal of a jet with zero value");
  WirtingerJet g(a.order());
  g(0, 0) = 1.0 / f0;
  for_each_entry(a.order(), [&](int j, int k) {
    if (j == 0 && k == 0) return;
    const cplx rest = leibniz(a, g, j, k, [](int p, int q) { return p == 0 && q == 0; });
    g(j, k) = -rest / f0;
  });
  return g;
}

WirtingerJet jet_log(const WirtingerJet& a) {
  const cplx f0 = a(0, 0);
  if (f0 == cplx(0.0, 0.0)) throw SingularJetError("logarithm of a jet with zero value");
  if (f0.imag() == 0.0 && f0.real() < 0.0) {
    throw DomainError("jet value on the logarithm branch cut");
  }
  const int n = a.order();
  const WirtingerJet h = jet_recip(a);
  // d f and dbar f as jets; entries beyond the available order are never read.
  WirtingerJet df(n), dbf(n);
  for (int j = 0; j <= n; ++j) {
    for (int k = 0; k <= n; ++k) {
      if (j + 1 <= n) df(j, k) = a(j + 1, k);
      if (k + 1 <= n) dbf(j, k) = a(j, k + 1);
    }
  }
  const WirtingerJet gz = jet_mul(df, h);   // d log f
  const WirtingerJet gzb = jet_mul(dbf, h); // dbar log f
  WirtingerJet g(n);
  g(0, 0) = std::log(f0);
  for (int j = 0; j <= n; ++j) {
    for (int k = 0; k <= n; ++k) {
      if (j >= 1) {
        g(j, k) = gz(j - 1, k);
      } else if (k >= 1) {
        g(j, k) = gzb(0, k - 1);
      }
    }
  }
  return g;
}

WirtingerJet jet_sqrt(const WirtingerJet& a) {
  const cplx f0 = a(0, 0);
  if (f0 == cplx(0.0, 0.0)) throw SingularJetError("square root of a jet with zero value");
  if (f0.imag() == 0.0 && f0.real() < 0.0) {
    throw DomainError("jet value on the square-root branch cut");
  }
  WirtingerJet g(a.order());
  g(0, 0) = std::sqrt(f0);
  for_each_entry(a.order(), [&](int j, int k) {
    if (j == 0 && k == 0) return;
    const cplx rest = leibniz(g, g, j, k, [&](int p, int q) {
      return (p == 0 && q == 0) || (p == j && q == k);
    });
    g(j, k) = (a(j, k) - rest) / (2.0 * g(0, 0));
  });
  return g;
}

WirtingerJet jet_ddbar(const WirtingerJet& a) {
  if (a.order() == 0) throw ShapeError("d dbar needs a jet of order at least 1");
  WirtingerJet out(a.order() - 1);
  for_each_entry(out.order(), [&](int j, int k) { out(j, k) = a(j + 1, k + 1); });
  return out;
}

double laplacian_from_jet(const WirtingerJet& a) {
  if (a.order() == 0) throw ShapeError("Laplacian needs a jet of order at least 1");
  return 4.0 * a(1, 1).real();
}

}  // namespace annulus
