#include "estcomb/weights.hpp"

#include <cmath>

#include "estcomb/stats.hpp"

namespace estcomb {

namespace {

void normalize_in_place(std::vector<double>& w) {
  CompensatedSum total;
  for (double x : w) total.add(x);
  const double t = total.value();
  for (double& x : w) x /= t;
}

}  // namespace

WeightRule WeightRule::power_law(double exponent) {
  if (!std::isfinite(exponent)) {
    throw std::invalid_argument("WeightRule::power_law: exponent must be finite");
  }
  return WeightRule(Kind::power_law, exponent);
}

WeightRule WeightRule::exponential(double rate) {
  if (!std::isfinite(rate) || rate <= 0.0) {
    throw std::invalid_argument("WeightRule::exponential: rate must be positive");
  }
  return WeightRule(Kind::exponential, rate);
}

WeightRule WeightRule::last_only() { return WeightRule(Kind::last_only, 0.0); }

WeightRule WeightRule::custom(std::vector<double> weights) {
  if (weights.empty()) {
    throw std::invalid_argument("WeightRule::custom: empty weight vector");
  }
  for (double w : weights) {
    if (!std::isfinite(w)) {
      throw std::invalid_argument("WeightRule::custom: weights must be finite");
    }
  }
  CompensatedSum total;
  for (double w : weights) total.add(w);
  const double t = total.value();
  if (t == 0.0) {
    throw DegenerateWeightsError("WeightRule::custom: weights sum to zero");
  }
  bool negative = false;
  for (double& w : weights) {
    w /= t;
    if (!std::isfinite(w)) {
      throw DegenerateWeightsError("WeightRule::custom: normalization overflowed");
    }
    if (w < 0.0) negative = true;
  }
  WeightRule rule(Kind::custom, 0.0);
  rule.custom_ = std::move(weights);
  rule.negative_entries_ = negative;
  return rule;
}

std::string WeightRule::describe() const {
  switch (kind_) {
    case Kind::power_law:
      return "k^" + std::to_string(exponent_);
    case Kind::exponential:
      return "exp(" + std::to_string(exponent_) + " k)";
    case Kind::last_only:
      return "last-only";
    case Kind::custom:
      return "custom";
  }
  return "unknown";
}

std::vector<double> make_weights(const WeightRule& rule, std::int64_t stages) {
  if (stages < 1) throw std::invalid_argument("make_weights: need at least one stage");
  const auto K = static_cast<std::size_t>(stages);
  std::vector<double> w(K, 0.0);

  switch (rule.kind()) {
    case WeightRule::Kind::power_law: {
      const double x = rule.exponent();
      // Evaluate k^x relative to the largest term so any finite exponent
      // stays inside double range before normalization.
      const double log_ref = x >= 0.0 ? std::log(static_cast<double>(stages)) : 0.0;
      for (std::size_t k = 1; k <= K; ++k) {
        w[k - 1] = std::exp(x * (std::log(static_cast<double>(k)) - log_ref));
      }
      break;
    }
    case WeightRule::Kind::exponential: {
      const double x = rule.exponent();
      // Shift so the final stage has unit weight before normalization; early
      // terms may underflow to 0, which is the last-only limit.
      for (std::size_t k = 1; k <= K; ++k) {
        w[k - 1] = std::exp((static_cast<double>(k) - static_cast<double>(stages)) * x);
      }
      break;
    }
    case WeightRule::Kind::last_only:
      w[K - 1] = 1.0;
      return w;
    case WeightRule::Kind::custom: {
      const auto& c = rule.custom_weights();
      if (c.size() != K) {
        throw std::invalid_argument("make_weights: custom rule has wrong length");
      }
      return c;  // normalized at construction
    }
  }

  normalize_in_place(w);
  return w;
}

CombinedEstimate combine(std::span<const StageEstimate> stages, const WeightRule& rule) {
  if (stages.empty()) throw std::invalid_argument("combine: no stages");
  for (const StageEstimate& s : stages) {
    if (!std::isfinite(s.mu_hat) || !std::isfinite(s.var_hat) || s.var_hat < 0.0 || s.n < 1) {
      throw std::invalid_argument("combine: stage fields must be finite, var_hat >= 0, n >= 1");
    }
  }
  std::vector<double> w = make_weights(rule, static_cast<std::int64_t>(stages.size()));
  CompensatedSum mu, var;
  for (std::size_t k = 0; k < stages.size(); ++k) {
    mu.add(w[k] * stages[k].mu_hat);
    var.add(w[k] * w[k] * stages[k].var_hat);
  }
  CombinedEstimate out;
  out.mu_hat = mu.value();
  out.var_hat = var.value();
  out.weights = std::move(w);
  out.stages = static_cast<std::int64_t>(stages.size());
  return out;
}

}  // namespace estcomb
