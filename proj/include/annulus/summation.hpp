#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <complex>
#include <limits>
#include <string>
#include <type_traits>

#include "annulus/errors.hpp"

namespace annulus {

/// Neumaier's variant of Kahan summation; works for real and complex values.
template <typename T>
class CompensatedSum {
 public:
  void add(T x) {
    if constexpr (std::is_floating_point_v<T>) {
      add_real(sum_, comp_, x);
    } else {
      double re = sum_.real(), ce = comp_.real();
      double im = sum_.imag(), ci = comp_.imag();
      add_real(re, ce, x.real());
      add_real(im, ci, x.imag());
      sum_ = T(re, im);
      comp_ = T(ce, ci);
    }
  }

  CompensatedSum& operator+=(T x) {
    add(x);
    return *this;
  }

  T value() const { return sum_ + comp_; }

 private:
  static void add_real(double& sum, double& comp, double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      comp += (sum - t) + x;
    } else {
      comp += (x - t) + sum;
    }
    sum = t;
  }

  T sum_{};
  T comp_{};
};

/// Series-summation policy shared by every two-sided series over n in Z.
///
/// Summation runs over pairs (n, -n-1), n = 0, 1, 2, ... and stops once the
/// a-posteriori geometric tail bound, relative to the accumulated magnitude
/// of the terms, falls below `tail_tol`. The pair budget starts at `n_max`
/// and doubles on demand up to `hard_cap`.
struct Truncation {
  int n_max = 512;
  double tail_tol = 1e-16;
  int hard_cap = 1 << 20;
};

/// Default policy; `ANNULUS_METRICS_TAIL_TOL` overrides the tail tolerance.
Truncation default_truncation();

/// Diagnostics of one series evaluation.
struct TailReport {
  int pairs_used = 0;
  double tail_bound = 0.0;  // relative to the accumulated term magnitude
};

/// Result of a paired two-sided series with P simultaneous sums.
template <typename T, std::size_t P>
struct SeriesSums {
  std::array<T, P> sum{};
  TailReport tail;
};

/// Sums sum_{n in Z} p_i(n) exp(log_w(n)), i < P, in the paired order
/// (n, -n-1), n = 0, 1, ..., with compensated accumulation.
///
/// `terms(n)` returns the values p_i(n) (possibly complex, unit-modulus
/// phases included); `degree[i]` bounds their growth by (|n| + d)^d. The
/// weights exp(log_w(n)) must have nonincreasing successive ratios on each
/// side, which makes the ratio just past the current index a bound for the
/// whole remaining tail. Stops once every sum's tail bound is below
/// `tail_tol` times that sum's accumulated absolute magnitude.
template <typename T, std::size_t P, typename LogW, typename Terms>
SeriesSums<T, P> paired_series(const Truncation& tr, const std::array<int, P>& degree,
                               LogW&& log_w, Terms&& terms) {
  if (tr.n_max <= 0 || !(tr.tail_tol > 0.0)) {
    throw DomainError("truncation requires n_max > 0 and tail_tol > 0");
  }
  std::array<CompensatedSum<T>, P> acc{};
  std::array<double, P> mag{};
  auto envelope = [&](long n, double lw, int d) {
    if (d == 0) return std::exp(lw);
    return std::exp(lw + d * std::log(static_cast<double>(std::labs(n) + d)));
  };
  auto tail = [](double e1, double e2) {
    if (e1 == 0.0) return 0.0;
    const double ratio = e2 / e1;
    if (!(ratio < 1.0)) return std::numeric_limits<double>::infinity();
    return e1 / (1.0 - ratio);
  };
  long limit = tr.n_max;
  for (long n = 0;; ++n) {
    for (long idx : {n, -n - 1}) {
      const double lw = log_w(idx);
      const double w = std::exp(lw);
      if (w == 0.0) continue;
      const std::array<T, P> t = terms(idx);
      for (std::size_t i = 0; i < P; ++i) {
        acc[i].add(t[i] * w);
        mag[i] += std::abs(t[i]) * w;
      }
    }
    if (n >= 1) {
      const double lp1 = log_w(n + 1), lp2 = log_w(n + 2);
      const double lm1 = log_w(-n - 2), lm2 = log_w(-n - 3);
      bool done = true;
      double worst = 0.0;
      for (std::size_t i = 0; i < P; ++i) {
        const int d = degree[i];
        const double bound = tail(envelope(n + 1, lp1, d), envelope(n + 2, lp2, d)) +
                             tail(envelope(n + 2, lm1, d), envelope(n + 3, lm2, d));
        if (!(bound <= tr.tail_tol * mag[i])) done = false;
        if (mag[i] > 0.0) worst = std::max(worst, bound / mag[i]);
      }
      if (done) {
        SeriesSums<T, P> out;
        for (std::size_t i = 0; i < P; ++i) out.sum[i] = acc[i].value();
        out.tail = {static_cast<int>(n + 1), worst};
        return out;
      }
    }
    if (n + 1 >= limit) {
      limit *= 2;
      if (limit > tr.hard_cap) {
        throw ConvergenceError("series tail above tolerance after " + std::to_string(n + 1) +
                               " pairs (hard cap " + std::to_string(tr.hard_cap) + ")");
      }
    }
  }
}

}  // namespace annulus
