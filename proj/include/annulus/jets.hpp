#pragma once

#include <array>
#include <complex>

namespace annulus {

using cplx = std::complex<double>;

/// Table of mixed Wirtinger derivatives d^j dbar^k f at a base point,
/// 0 <= j, k <= order. Entry (0, 0) is the function value.
///
/// Laplacian convention: Delta = 4 d dbar.
class WirtingerJet {
 public:
  static constexpr int kMaxOrder = 3;

  /// Zero jet; throws ShapeError for order outside [0, kMaxOrder].
  explicit WirtingerJet(int order = 0);

  static WirtingerJet constant(int order, cplx value);
  /// Jet of the coordinate z (or of conj(z)) at base point z0.
  static WirtingerJet coordinate(int order, cplx z0);
  static WirtingerJet conj_coordinate(int order, cplx z0);

  int order() const { return order_; }
  cplx& operator()(int j, int k) { return c_[index(j, k)]; }
  const cplx& operator()(int j, int k) const { return c_[index(j, k)]; }

  /// Drops derivatives above the given order.
  WirtingerJet truncated(int order) const;

 private:
  static constexpr int index(int j, int k) { return j * (kMaxOrder + 1) + k; }

  int order_;
  std::array<cplx, (kMaxOrder + 1) * (kMaxOrder + 1)> c_{};
};

WirtingerJet jet_add(const WirtingerJet& a, const WirtingerJet& b);
WirtingerJet jet_scale(const WirtingerJet& a, cplx factor);
/// Leibniz rule.
WirtingerJet jet_mul(const WirtingerJet& a, const WirtingerJet& b);
/// Throws SingularJetError when a(0,0) = 0.
WirtingerJet jet_recip(const WirtingerJet& a);
/// Principal branch; throws SingularJetError when a(0,0) = 0 and DomainError
/// when a(0,0) lies on the negative real axis.
WirtingerJet jet_log(const WirtingerJet& a);
WirtingerJet jet_sqrt(const WirtingerJet& a);
/// Jet of d dbar f, one order lower. Throws ShapeError for order 0.
WirtingerJet jet_ddbar(const WirtingerJet& a);

/// 4 Re d dbar f. Throws ShapeError for order 0.
double laplacian_from_jet(const WirtingerJet& a);

}  // namespace annulus
