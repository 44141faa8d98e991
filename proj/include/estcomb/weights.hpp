#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace estcomb {

// Custom weights whose sum cannot be normalized (zero or non-finite).
class DegenerateWeightsError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// One adaptation round: an unbiased estimate of the target, an unbiased
// estimate of the variance of that stage mean (sample variance of the
// weighted draws divided by n), and the stage sample size.
struct StageEstimate {
  double mu_hat = 0.0;
  double var_hat = 0.0;
  std::int64_t n = 1;
};

struct CombinedEstimate {
  double mu_hat = 0.0;
  double var_hat = 0.0;
  std::vector<double> weights;
  std::int64_t stages = 0;
};

// Deterministic prescription of normalized combination weights.
class WeightRule {
 public:
  enum class Kind { power_law, exponential, last_only, custom };

  static WeightRule power_law(double exponent);    // w_k proportional to k^x, any finite x
  static WeightRule exponential(double rate);      // w_k proportional to exp(k x), x > 0
  static WeightRule last_only();                   // all mass on the final stage
  static WeightRule custom(std::vector<double> weights);  // normalized by their sum

  Kind kind() const noexcept { return kind_; }
  double exponent() const noexcept { return exponent_; }
  const std::vector<double>& custom_weights() const noexcept { return custom_; }

  // Custom rules admit negative entries (the theory only needs sum 1), but
  // variance-optimal weights are non-negative, so callers may want to warn.
  bool has_negative_entries() const noexcept { return negative_entries_; }

  std::string describe() const;

 private:
  WeightRule(Kind kind, double exponent) : kind_(kind), exponent_(exponent) {}

  Kind kind_;
  double exponent_ = 0.0;
  std::vector<double> custom_;
  bool negative_entries_ = false;
};

// Normalized weights for `stages` stages; sums to 1 within 1e-12. Pure:
// identical arguments always produce identical vectors.
std::vector<double> make_weights(const WeightRule& rule, std::int64_t stages);

// Pools stage estimates: mu = sum w_k mu_k, var = sum w_k^2 var_k. Unbiased
// for any deterministic rule, whatever the true per-stage variances are.
CombinedEstimate combine(std::span<const StageEstimate> stages, const WeightRule& rule);

}  // namespace estcomb
