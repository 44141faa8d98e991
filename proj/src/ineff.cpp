#include "estcomb/ineff.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "estcomb/stats.hpp"

namespace estcomb {

namespace {

// Beyond this the compensated power sums can no longer promise 1e-13
// relative accuracy, so the operations refuse instead of degrading quietly.
constexpr std::int64_t kMaxPowerSumLength = 10'000'000;

void check_length(std::int64_t K) {
  if (K < 1) throw std::invalid_argument("power sums need K >= 1");
  if (K > kMaxPowerSumLength) {
    throw std::invalid_argument("power sums refuse K > 1e7; precision would degrade");
  }
}

// log of sum_{i=1}^{K} exp(a i) for a != 0, without overflow in either tail.
double log_geometric_sum(double a, std::int64_t K) {
  const double Ka = a * static_cast<double>(K);
  if (a > 0.0) {
    return Ka + std::log1p(-std::exp(-Ka)) - std::log1p(-std::exp(-a));
  }
  return a + std::log1p(-std::exp(Ka)) - std::log1p(-std::exp(a));
}

}  // namespace

RateBounds::RateBounds(double lower, double upper) : lower_(lower), upper_(upper) {
  if (!std::isfinite(lower) || !std::isfinite(upper) || lower < 0.0 || upper < lower) {
    throw std::invalid_argument("RateBounds: need 0 <= lower <= upper < inf");
  }
}

double PowerLawModel::variance_at(std::int64_t k) const {
  if (k < 1) throw std::invalid_argument("PowerLawModel: stage index must be positive");
  return tau2 * std::pow(static_cast<double>(k), -decay_rate);
}

double power_sum(double x, std::int64_t K) {
  check_length(K);
  if (!std::isfinite(x)) throw std::invalid_argument("power_sum: exponent must be finite");
  CompensatedSum s;
  for (std::int64_t i = 1; i <= K; ++i) {
    s.add(std::pow(static_cast<double>(i), x));
  }
  return s.value();
}

double inefficiency(double x, double y, std::int64_t K) {
  check_length(K);
  const double a = power_sum(2.0 * x - y, K);
  const double b = power_sum(y, K);
  const double c = power_sum(x, K);
  // (a/c)(b/c) rather than ab/c^2: keeps huge sums inside double range and
  // returns exactly 1 when x == y (a == b == c bitwise).
  return (a / c) * (b / c);
}

IneffReport evaluate_rule_inefficiency(double x, double y, std::int64_t K) {
  IneffReport report;
  report.value = inefficiency(x, y, K);
  report.stages = K;
  report.rule_exponent = x;
  report.model = "k^-" + std::to_string(y) + " power law";
  return report;
}

namespace detail {

double inefficiency_general_given_s(std::span<const double> variances, double sqrt_sum) {
  CompensatedSum weighted, inverse;
  for (std::size_t k = 0; k < variances.size(); ++k) {
    weighted.add(static_cast<double>(k + 1) * variances[k]);
    inverse.add(1.0 / variances[k]);
  }
  return (weighted.value() * inverse.value()) / (sqrt_sum * sqrt_sum);
}

}  // namespace detail

double inefficiency_general(std::span<const double> variances) {
  if (variances.empty()) {
    throw std::invalid_argument("inefficiency_general: empty variance profile");
  }
  for (double v : variances) {
    if (!std::isfinite(v) || v <= 0.0) {
      throw std::invalid_argument("inefficiency_general: variances must be positive finite");
    }
  }
  const double s = power_sum(0.5, static_cast<std::int64_t>(variances.size()));
  return detail::inefficiency_general_given_s(variances, s);
}

double inefficiency_custom(std::span<const double> variances,
                           std::span<const double> weights) {
  if (variances.size() != weights.size()) {
    throw std::invalid_argument("inefficiency_custom: length mismatch");
  }
  if (variances.empty()) {
    throw std::invalid_argument("inefficiency_custom: empty inputs");
  }
  CompensatedSum wsum;
  for (double w : weights) wsum.add(w);
  if (std::abs(wsum.value() - 1.0) > 1e-6) {
    throw std::invalid_argument("inefficiency_custom: weights must sum to 1");
  }
  CompensatedSum weighted, inverse;
  for (std::size_t k = 0; k < variances.size(); ++k) {
    const double v = variances[k];
    if (!std::isfinite(v) || v <= 0.0) {
      throw std::invalid_argument("inefficiency_custom: variances must be positive finite");
    }
    weighted.add(weights[k] * weights[k] * v);
    inverse.add(1.0 / v);
  }
  return weighted.value() * inverse.value();
}

SupOverRate sup_inefficiency_over_rate(double x, const RateBounds& bounds, std::int64_t K) {
  if (x < bounds.lower() || x > bounds.upper()) {
    throw std::invalid_argument("sup_inefficiency_over_rate: exponent outside rate bounds");
  }
  const double at_lower = inefficiency(x, bounds.lower(), K);
  const double at_upper = inefficiency(x, bounds.upper(), K);
  if (at_upper >= at_lower) return {at_upper, bounds.upper()};
  return {at_lower, bounds.lower()};
}

double asymptotic_inefficiency(const RateBounds& bounds) {
  const double m1 = bounds.midpoint() + 1.0;
  return (m1 * m1) / ((bounds.lower() + 1.0) * (bounds.upper() + 1.0));
}

double exp_inefficiency(double x, double y, std::int64_t K) {
  check_length(K);
  if (!(x > 0.0) || !(y > 0.0) || !std::isfinite(x) || !std::isfinite(y)) {
    throw std::invalid_argument("exp_inefficiency: rates must be positive finite");
  }
  const double a = 2.0 * x - y;
  const double log_k = std::log(static_cast<double>(K));
  const double first = std::abs(a) < 1e-9 ? log_k : log_geometric_sum(a, K);
  const double second = log_geometric_sum(y, K);
  const double third = log_geometric_sum(x, K);
  return std::exp(first + second - 2.0 * third);
}

LastIterateIneff last_iterate_inefficiency(double y, std::int64_t K) {
  check_length(K);
  if (!(y > 0.0) || !std::isfinite(y)) {
    throw std::invalid_argument("last_iterate_inefficiency: rate must be positive finite");
  }
  LastIterateIneff out;
  const double denom = std::expm1(y);
  out.value = -std::expm1(-y * static_cast<double>(K)) * std::exp(y) / denom;
  out.bound = std::exp(y) / denom;
  return out;
}

SumBounds integral_bounds(double x, std::int64_t K) {
  check_length(K);
  if (!(x >= 0.0) || x > 1.0) {
    throw std::invalid_argument("integral_bounds: exponent must lie in [0, 1]");
  }
  const double p = x + 1.0;
  const double kd = static_cast<double>(K);
  SumBounds out;
  out.lower = (std::pow(kd + 0.5, p) - std::pow(0.5, p)) / p;
  out.upper = (std::pow(kd + 1.0, p) - 1.0) / p;
  return out;
}

double halfrule_inefficiency_vs_linear(std::int64_t K) {
  check_length(K);
  const double s = power_sum(0.5, K);
  const double kd = static_cast<double>(K);
  return kd * kd * (kd + 1.0) / (2.0 * s * s);
}

bool halfrule_monotone_up_to(std::int64_t K_max) {
  if (K_max < 2) throw std::invalid_argument("halfrule_monotone_up_to: need K_max >= 2");
  check_length(K_max);
  CompensatedSum s;
  double prev = 0.0;
  for (std::int64_t K = 1; K <= K_max; ++K) {
    s.add(std::sqrt(static_cast<double>(K)));
    const double sv = s.value();
    const double kd = static_cast<double>(K);
    const double rho = kd * kd * (kd + 1.0) / (2.0 * sv * sv);
    if (K > 1 && !(rho > prev)) return false;
    prev = rho;
  }
  return true;
}

bool midpoint_rule_monotone_up_to(const RateBounds& bounds, std::int64_t K_max) {
  if (K_max < 2) throw std::invalid_argument("midpoint_rule_monotone_up_to: need K_max >= 2");
  check_length(K_max);
  CompensatedSum low, up, mid;
  const double m = bounds.midpoint();
  double prev = 0.0;
  for (std::int64_t K = 1; K <= K_max; ++K) {
    const double kd = static_cast<double>(K);
    low.add(std::pow(kd, bounds.lower()));
    up.add(std::pow(kd, bounds.upper()));
    mid.add(std::pow(kd, m));
    const double c = mid.value();
    const double rho = (low.value() / c) * (up.value() / c);
    if (K > 1 && rho < prev) return false;
    prev = rho;
  }
  return true;
}

MinimaxScanResult minimax_scan(std::int64_t K, std::span<const double> exponent_grid) {
  check_length(K);
  if (exponent_grid.empty()) throw std::invalid_argument("minimax_scan: empty grid");
  for (double x : exponent_grid) {
    if (!std::isfinite(x) || x < 0.0 || x > 1.0) {
      throw std::invalid_argument("minimax_scan: grid exponents must lie in [0, 1]");
    }
  }
  MinimaxScanResult out;
  out.sup_values.reserve(exponent_grid.size());
  if (K == 1) {
    // Every exponent gives the same (single-stage) estimate.
    out.degenerate = true;
    out.sup_values.assign(exponent_grid.size(), 1.0);
    out.best_exponent = exponent_grid[0];
    return out;
  }
  double best = std::numeric_limits<double>::infinity();
  for (double x : exponent_grid) {
    const double sup = std::max(inefficiency(x, 0.0, K), inefficiency(x, 1.0, K));
    out.sup_values.push_back(sup);
    if (sup < best) {
      best = sup;
      out.best_exponent = x;
    }
  }
  return out;
}

}  // namespace estcomb
