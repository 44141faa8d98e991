#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace estcomb {

// Assumed interval [lower, upper] for the unknown variance decay rate. The
// recommended weighting exponent is always the midpoint; it is derived, never
// stored independently.
class RateBounds {
 public:
  RateBounds(double lower, double upper);  // requires 0 <= lower <= upper < inf

  double lower() const noexcept { return lower_; }
  double upper() const noexcept { return upper_; }
  double midpoint() const noexcept { return 0.5 * (lower_ + upper_); }

 private:
  double lower_;
  double upper_;
};

// Working model Var(mu_hat_k) = tau2 * k^{-decay_rate}.
struct PowerLawModel {
  double decay_rate = 0.0;
  double tau2 = 1.0;

  double variance_at(std::int64_t k) const;
};

struct IneffReport {
  double value = 1.0;
  std::int64_t stages = 1;
  double rule_exponent = 0.5;
  std::string model;
};

// sum_{i=1}^{K} i^x with compensated accumulation. Refuses K > 1e7 rather
// than silently losing precision.
double power_sum(double x, std::int64_t K);

// Variance of the exponent-x weighting relative to the optimal weighting
// under Var(mu_hat_k) = k^{-y}:
//   (sum i^{2x-y})(sum i^y) / (sum i^x)^2,
// always >= 1 with equality exactly when x = y or K = 1.
double inefficiency(double x, double y, std::int64_t K);

IneffReport evaluate_rule_inefficiency(double x, double y, std::int64_t K);

// Square-root-rule variance over the inverse-variance-optimal variance for
// an arbitrary positive variance profile:
//   (sum k v_k)(sum 1/v_k) / (sum k^{1/2})^2.
double inefficiency_general(std::span<const double> variances);

// Same ratio for an explicit weight vector summing to 1:
//   (sum w_k^2 v_k)(sum 1/v_k).
double inefficiency_custom(std::span<const double> variances,
                           std::span<const double> weights);

namespace detail {
// inefficiency_general with the square-root power sum precomputed, so bulk
// sweeps can hoist it; bit-identical to the public entry point.
double inefficiency_general_given_s(std::span<const double> variances, double sqrt_sum);
}  // namespace detail

struct SupOverRate {
  double value = 1.0;
  double argmax_rate = 0.0;
};

// Exact sup over y in [lower, upper] of inefficiency(x, y, K): convexity in
// y puts the supremum at an endpoint. Ties report the upper endpoint.
SupOverRate sup_inefficiency_over_rate(double x, const RateBounds& bounds, std::int64_t K);

// K -> infinity limit of the midpoint rule's worst inefficiency:
// (M+1)^2 / ((L+1)(U+1)).
double asymptotic_inefficiency(const RateBounds& bounds);

// Inefficiency under exponential variance decay exp(-y k) when weighting
// proportionally to exp(x k). Evaluated in log space; the removable
// singularity of the first geometric factor at 2x = y is the value K.
double exp_inefficiency(double x, double y, std::int64_t K);

struct LastIterateIneff {
  double value = 1.0;  // finite-K inefficiency of keeping only the last stage
  double bound = 1.0;  // K-free cap e^y / (e^y - 1)
};

// x -> infinity limit of exp_inefficiency: e^y (1 - e^{-K y}) / (e^y - 1).
LastIterateIneff last_iterate_inefficiency(double y, std::int64_t K);

struct SumBounds {
  double lower = 0.0;
  double upper = 0.0;
};

// Integral sandwich enclosing power_sum(x, K) for 0 <= x <= 1. The lower
// bound is strict for 0 < x < 1, the upper for 0 < x <= 1.
SumBounds integral_bounds(double x, std::int64_t K);

// Closed form inefficiency(1/2, 1, K) = K^2 (K+1) / (2 S_K^2) with
// S_K = power_sum(1/2, K).
double halfrule_inefficiency_vs_linear(std::int64_t K);

// True iff inefficiency(1/2 | 1) is strictly increasing in K for K < K_max.
bool halfrule_monotone_up_to(std::int64_t K_max);

// Numeric check of the observed (unproven) monotonicity in K of the
// midpoint rule's worst-endpoint inefficiency for general rate bounds.
bool midpoint_rule_monotone_up_to(const RateBounds& bounds, std::int64_t K_max);

struct MinimaxScanResult {
  double best_exponent = 0.5;
  std::vector<double> sup_values;
  bool degenerate = false;  // K = 1: every exponent is equally good
};

// For each grid exponent x in [0, 1], the sup over y in {0, 1} of
// inefficiency(x, y, K); returns the grid minimizer.
MinimaxScanResult minimax_scan(std::int64_t K, std::span<const double> exponent_grid);

}  // namespace estcomb
