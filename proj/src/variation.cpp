#include "annulus/variation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <thread>

#include "annulus/errors.hpp"
#include "annulus/metrics.hpp"

namespace annulus {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

constexpr std::pair<Quantity, std::string_view> kNames[] = {
    {Quantity::c, "c"},         {Quantity::s, "s"},   {Quantity::kappa_c, "kappa_c"},
    {Quantity::kappa_s, "kappa_s"}, {Quantity::N0, "N0"}, {Quantity::N1, "N1"},
    {Quantity::N2, "N2"},       {Quantity::ratio_s_over_c, "ratio_s_over_c"}};

std::string error_kind(const Error& e) {
  if (dynamic_cast<const RangeError*>(&e)) return "range";
  if (dynamic_cast<const ConvergenceError*>(&e)) return "convergence";
  if (dynamic_cast<const DomainError*>(&e)) return "domain";
  return "internal";
}

SweepRow evaluate_row(double r, double lambda, const std::vector<Quantity>& qs,
                      const Truncation& tr) {
  SweepRow row;
  row.r = r;
  row.lambda = lambda;
  try {
    const JOnAr j = j_functions_on_A_r(r, lambda, tr);
    const MetricSample m = sample_from_j(cplx(std::pow(r, lambda), 0.0), lambda, j);
    const NValues n = exact_N(j.at_one);
    for (Quantity q : qs) {
      double v = kNaN;
      switch (q) {
        case Quantity::c: v = m.c; break;
        case Quantity::s: v = m.s; break;
        case Quantity::kappa_c: v = m.kappa_c; break;
        case Quantity::kappa_s: v = m.kappa_s; break;
        case Quantity::N0: v = n.N0; break;
        case Quantity::N1: v = n.N1; break;
        case Quantity::N2: v = n.N2; break;
        case Quantity::ratio_s_over_c: v = m.s / m.c; break;
      }
      row.values.push_back(v);
    }
    row.pairs_used = j.at_one.tail.pairs_used;
    row.tail_bound = j.at_one.tail.tail_bound;
  } catch (const Error& e) {
    row.values.assign(qs.size(), kNaN);
    row.status = error_kind(e) + ": " + e.what();
  }
  return row;
}

// Divergence or shrinking differences over the whole of the given samples.
bool classify_tail(std::span<const double> r_values, std::span<const double> values, LimitClass& out) {
  const std::size_t n = values.size();
  bool growing = true;
  for (std::size_t i = 1; i < n; ++i) {
    const double decades = std::log10(r_values[i - 1] / r_values[i]);
    const double need = std::pow(kDivergenceGrowthPerDecade, decades);
    const bool same_sign = values[i] * values[i - 1] > 0.0;
    if (!same_sign || !(std::abs(values[i]) >= need * std::abs(values[i - 1]))) growing = false;
  }
  if (growing && std::abs(values.back()) > kDivergenceThreshold) {
    out.kind = values.back() > 0.0 ? LimitKind::plus_infinity : LimitKind::minus_infinity;
    out.reason = "magnitude grows monotonically past the divergence threshold";
    return true;
  }

  std::vector<double> d(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) d[i] = values[i + 1] - values[i];
  const double scale = std::max(1.0, std::abs(values.back()));
  const bool flat = std::all_of(d.begin(), d.end(), [&](double x) { return std::abs(x) <= 1e-9 * scale; });
  bool shrinking = true;
  for (std::size_t i = 1; i < d.size(); ++i) {
    if (!(std::abs(d[i]) < std::abs(d[i - 1]))) shrinking = false;
  }
  if (!(flat || shrinking)) return false;
  out.kind = LimitKind::finite;
  out.reason = flat ? "constant to round-off" : "successive differences shrink";
  const double d1 = d[d.size() - 2], d2 = d.back();
  const double denom = d2 - d1;
  if (!flat && denom != 0.0 && d1 * d2 > 0.0) {
    const double aitken = values.back() - d2 * d2 / denom;
    if (std::isfinite(aitken)) out.value = aitken;
  }
  return true;
}

}  // namespace

std::string_view quantity_name(Quantity q) {
  for (const auto& [k, name] : kNames) {
    if (k == q) return name;
  }
  return "?";
}

Quantity parse_quantity(std::string_view name) {
  for (const auto& [k, n] : kNames) {
    if (n == name) return k;
  }
  throw DomainError("unknown quantity '" + std::string(name) + "'");
}

void SweepSpec::validate() const {
  if (r_values.empty() || lambda_values.empty() || quantities.empty()) {
    throw DomainError("sweep needs at least one r, one lambda and one quantity");
  }
  for (std::size_t i = 0; i < r_values.size(); ++i) {
    if (!(r_values[i] > 0.0 && r_values[i] < 1.0)) throw DomainError("sweep r values must lie in (0, 1)");
    if (i > 0 && !(r_values[i] < r_values[i - 1])) {
      throw DomainError("sweep r values must be strictly decreasing");
    }
  }
  for (double l : lambda_values) {
    if (!(l > 0.0 && l < 1.0)) throw DomainError("sweep lambda values must lie in (0, 1)");
  }
}

SweepSpec default_sweep_spec(bool extended) {
  SweepSpec spec;
  spec.r_values = {1e-2, 1e-3, 1e-4, 1e-5, 1e-6};
  if (extended) {
    spec.r_values.push_back(1e-7);
    spec.r_values.push_back(1e-8);
  }
  spec.lambda_values = {0.10, 1.0 / 6.0, 0.25, 1.0 / 3.0, 0.5, 2.0 / 3.0, 0.75, 5.0 / 6.0, 0.90};
  spec.quantities = {Quantity::c, Quantity::s, Quantity::kappa_c, Quantity::kappa_s};
  return spec;
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec, const Truncation& tr, unsigned threads) {
  spec.validate();
  std::vector<double> lambdas = spec.lambda_values;
  std::stable_sort(lambdas.begin(), lambdas.end());
  std::vector<std::pair<double, double>> jobs;
  for (double l : lambdas) {
    for (double r : spec.r_values) jobs.emplace_back(l, r);
  }
  std::vector<SweepRow> rows(jobs.size());
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(jobs.size()));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      rows[i] = evaluate_row(jobs[i].second, jobs[i].first, spec.quantities, tr);
    }
  };
  std::vector<std::jthread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  pool.clear();
  return rows;
}

double asymptotic_N(double r, double lambda, int j) {
  if (!(r > 0.0 && r < 1.0)) throw DomainError("inner radius r must lie in (0, 1)");
  if (!(lambda > 0.0 && lambda < 1.0)) throw DomainError("lambda must lie in (0, 1)");
  const double mu = 1.0 - lambda;
  auto p = [r](double e) { return std::pow(r, e); };
  switch (j) {
    case 0:
      return (p(lambda) + p(mu)) / (2.0 * kPi * (1.0 + r));
    case 1:
      return r / (4.0 * kPi * kPi * (1.0 + r) * (1.0 + r)) +
             ((p(4 * lambda) + p(4 * mu)) + 4.0 * r * (p(2 * lambda) + p(2 * mu))) /
                 (4.0 * kPi * kPi * (1.0 + r) * (1.0 + r * r * r));
    case 2: {
      const double pi3 = kPi * kPi * kPi;
      const double r3 = r * r * r, r5 = r3 * r * r;
      return (p(9 * lambda) + p(9 * mu)) / (2.0 * pi3 * (1.0 + r) * (1.0 + r3) * (1.0 + r5)) +
             r * (p(3 * lambda) + p(3 * mu)) / (2.0 * pi3 * (1.0 + r) * (1.0 + r) * (1.0 + r3));
    }
    default:
      throw DomainError("N-function index must be 0, 1 or 2");
  }
}

NValues exact_N(const JFunctions& at_one) {
  NValues n;
  n.N0 = at_one.J0;
  n.N1 = at_one.J1 * at_one.J0;
  n.N2 = at_one.J2 * n.N1;
  return n;
}

std::string_view limit_kind_name(LimitKind k) {
  switch (k) {
    case LimitKind::finite: return "finite";
    case LimitKind::plus_infinity: return "+inf";
    case LimitKind::minus_infinity: return "-inf";
    case LimitKind::undetermined: return "undetermined";
  }
  return "?";
}

LimitClass limit_classifier(std::span<const double> r_values, std::span<const double> values) {
  const std::size_t n = values.size();
  if (r_values.size() != n) throw DomainError("classifier needs one value per r");
  if (n < 4) throw DomainError("classifier needs at least 4 points");
  for (std::size_t i = 1; i < n; ++i) {
    if (!(r_values[i] < r_values[i - 1] && r_values[i] > 0.0)) {
      throw DomainError("classifier r values must be positive and strictly decreasing");
    }
  }
  if (std::log10(r_values.front() / r_values.back()) < 3.0 - 1e-9) {
    throw DomainError("classifier r values must span at least 3 decades");
  }
  LimitClass out;
  out.value = values.back();
  for (double v : values) {
    if (!std::isfinite(v)) {
      out.reason = "non-finite sample";
      return out;
    }
  }
  // Early points may be pre-asymptotic, so try the longest qualifying tail first.
  for (std::size_t first = 0; first + 4 <= n; ++first) {
    if (std::log10(r_values[first] / r_values.back()) < 3.0 - 1e-9) break;
    if (classify_tail(r_values.subspan(first), values.subspan(first), out)) {
      if (first > 0) out.reason += " from r = " + std::to_string(r_values[first]);
      return out;
    }
  }
  out.reason = "non-monotone trend";
  return out;
}

}  // namespace annulus
