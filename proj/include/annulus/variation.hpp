#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "annulus/hardy.hpp"

namespace annulus {

enum class Quantity { c, s, kappa_c, kappa_s, N0, N1, N2, ratio_s_over_c };

std::string_view quantity_name(Quantity q);
/// Throws DomainError for unknown names.
Quantity parse_quantity(std::string_view name);

struct SweepSpec {
  std::vector<double> r_values;       // strictly decreasing, in (0, 1)
  std::vector<double> lambda_values;  // in (0, 1)
  std::vector<Quantity> quantities;

  /// Throws DomainError when a sequence is empty or out of range.
  void validate() const;
};

/// r in {1e-2, ..., 1e-6} (down to 1e-8 when extended) at the nine lambda
/// values separating the regimes of the Szegő curvature.
SweepSpec default_sweep_spec(bool extended = false);

struct SweepRow {
  double r = 0.0;
  double lambda = 0.0;
  std::vector<double> values;  // one per requested quantity; NaN when failed
  int pairs_used = 0;
  double tail_bound = 0.0;
  std::string status = "ok";   // otherwise "<error kind>: <message>"

  bool ok() const { return status == "ok"; }
};

/// Rows ordered by lambda (ascending, stable) and then by r as given. Rows are
/// evaluated on up to `threads` workers (0 = hardware concurrency); errors are
/// recorded per row.
std::vector<SweepRow> run_sweep(const SweepSpec& spec, const Truncation& tr, unsigned threads = 0);

/// Leading-order closed forms of N^(j)_lambda(r), j = 0, 1, 2.
double asymptotic_N(double r, double lambda, int j);

struct NValues {
  double N0 = 0.0;  // s0
  double N1 = 0.0;  // s0 s2 - s1^2
  double N2 = 0.0;  // N1 * J2(1)
};

/// Exact N-functions from the moment sums of A(r^(1-lambda), r^(-lambda)).
NValues exact_N(const JFunctions& at_one);

enum class LimitKind { finite, plus_infinity, minus_infinity, undetermined };

std::string_view limit_kind_name(LimitKind k);

struct LimitClass {
  LimitKind kind = LimitKind::undetermined;
  double value = 0.0;  // extrapolated limit when finite, else the last value
  std::string reason;
};

/// Growth threshold and per-decade factor for divergent classification.
inline constexpr double kDivergenceThreshold = 1e3;
inline constexpr double kDivergenceGrowthPerDecade = 2.0;

/// Classifies the r -> 0 trend of values sampled at decreasing r.
/// Requires at least 4 points spanning at least 3 decades (DomainError).
LimitClass limit_classifier(std::span<const double> r_values, std::span<const double> values);

}  // namespace annulus
