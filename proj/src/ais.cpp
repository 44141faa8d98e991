#include "estcomb/ais.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "estcomb/parallel.hpp"
#include "estcomb/stats.hpp"

namespace estcomb {

namespace {

constexpr double kLogSqrt2Pi = 0.9189385332046727417803297;

double standard_normal_log_pdf(double x) { return -0.5 * x * x - kLogSqrt2Pi; }

}  // namespace

Problem square_problem() {
  Problem p;
  p.name = "x2";
  p.log_density = standard_normal_log_pdf;
  p.integrand = [](double x) { return x * x; };
  p.true_mean = 1.0;
  return p;
}

Problem rare_event_problem(double threshold) {
  if (!std::isfinite(threshold)) {
    throw std::invalid_argument("rare_event_problem: threshold must be finite");
  }
  Problem p;
  p.name = "rare";
  p.log_density = standard_normal_log_pdf;
  p.integrand = [threshold](double x) { return x > threshold ? 1.0 : 0.0; };
  p.true_mean = 0.5 * std::erfc(threshold / std::sqrt(2.0));
  return p;
}

ProposalFamily gaussian_location_family(double initial_theta) {
  ProposalFamily fam;
  fam.initial_parameter = initial_theta;
  fam.log_density = [](double x, double theta) {
    const double d = x - theta;
    return -0.5 * d * d - kLogSqrt2Pi;
  };
  fam.sample = [](double theta, SplitMix64& rng) { return theta + rng.normal(); };
  return fam;
}

StageEstimate stage_estimate(const Problem& problem, const ProposalFamily& family,
                             double theta, std::int64_t n, SplitMix64& rng,
                             std::vector<WeightedPoint>* points) {
  if (n < 2) throw std::invalid_argument("stage_estimate: need n >= 2 for the variance estimate");
  std::vector<double> values(static_cast<std::size_t>(n));
  CompensatedSum total;
  for (std::int64_t i = 0; i < n; ++i) {
    const double x = family.sample(theta, rng);
    const double f = problem.integrand(x);
    const double log_p = problem.log_density(x);
    const double log_q = family.log_density(x, theta);
    double v = 0.0;
    if (f != 0.0 && log_p > -std::numeric_limits<double>::infinity()) {
      if (log_q == -std::numeric_limits<double>::infinity()) {
        throw SupportViolationError("stage_estimate: proposal density vanished where f p != 0");
      }
      v = f * std::exp(log_p - log_q);
    }
    values[static_cast<std::size_t>(i)] = v;
    total.add(v);
    if (points != nullptr) points->push_back({x, v});
  }
  StageEstimate st;
  st.n = n;
  st.mu_hat = total.value() / static_cast<double>(n);
  CompensatedSum ss;
  for (double v : values) {
    const double d = v - st.mu_hat;
    ss.add(d * d);
  }
  st.var_hat = ss.value() / (static_cast<double>(n) * static_cast<double>(n - 1));
  return st;
}

StageEstimate stage_estimate_self_normalized(const Problem& problem,
                                             const ProposalFamily& family, double theta,
                                             std::int64_t n, SplitMix64& rng) {
  if (n < 2) throw std::invalid_argument("stage_estimate_self_normalized: need n >= 2");
  std::vector<double> w(static_cast<std::size_t>(n));
  std::vector<double> f(static_cast<std::size_t>(n));
  CompensatedSum wsum, wfsum;
  for (std::int64_t i = 0; i < n; ++i) {
    const double x = family.sample(theta, rng);
    const std::size_t j = static_cast<std::size_t>(i);
    w[j] = std::exp(problem.log_density(x) - family.log_density(x, theta));
    f[j] = problem.integrand(x);
    wsum.add(w[j]);
    wfsum.add(w[j] * f[j]);
  }
  const double total_w = wsum.value();
  if (total_w == 0.0) {
    throw DegenerateSampleError("stage_estimate_self_normalized: all weights are zero");
  }
  StageEstimate st;
  st.n = n;
  st.mu_hat = wfsum.value() / total_w;
  CompensatedSum var;
  for (std::size_t j = 0; j < w.size(); ++j) {
    const double wbar = w[j] / total_w;
    const double d = f[j] - st.mu_hat;
    var.add(wbar * wbar * d * d);
  }
  st.var_hat = var.value();
  return st;
}

double adapt_step(std::span<const WeightedPoint> history, double current_theta) {
  if (history.empty()) throw std::invalid_argument("adapt_step: empty history");
  CompensatedSum u, ux;
  for (const WeightedPoint& p : history) {
    u.add(p.value);
    ux.add(p.value * p.x);
  }
  const double total = u.value();
  if (total == 0.0) return current_theta;  // e.g. rare event never hit yet
  return ux.value() / total;
}

AdaptiveRun run_adaptive(const Problem& problem, const ProposalFamily& family,
                         std::int64_t K, std::int64_t n, std::uint64_t seed,
                         const AdaptConfig& config) {
  if (K < 1) throw std::invalid_argument("run_adaptive: need K >= 1");
  AdaptiveRun run;
  run.stage_size = n;
  run.seed = seed;
  run.stages.reserve(static_cast<std::size_t>(K));
  run.thetas.reserve(static_cast<std::size_t>(K));
  std::vector<WeightedPoint> history;
  history.reserve(static_cast<std::size_t>(K * n));
  double theta = family.initial_parameter;
  for (std::int64_t k = 1; k <= K; ++k) {
    SplitMix64 rng = substream(seed, static_cast<std::uint64_t>(k));
    const std::size_t stage_begin = history.size();
    run.thetas.push_back(theta);
    run.stages.push_back(stage_estimate(problem, family, theta, n, rng, &history));
    if (k == K) break;
    const std::span<const WeightedPoint> window =
        config.adapt_on_full_history
            ? std::span<const WeightedPoint>(history)
            : std::span<const WeightedPoint>(history).subspan(stage_begin);
    theta = adapt_step(window, theta);
  }
  return run;
}

std::vector<double> inverse_variance_weights(std::span<const StageEstimate> stages) {
  if (stages.empty()) throw std::invalid_argument("inverse_variance_weights: no stages");
  std::vector<double> w(stages.size(), 0.0);
  double max_finite = 0.0;
  for (std::size_t k = 0; k < stages.size(); ++k) {
    if (!std::isfinite(stages[k].var_hat) || stages[k].var_hat < 0.0) {
      throw std::invalid_argument("inverse_variance_weights: var_hat must be finite, >= 0");
    }
    const double r = 1.0 / stages[k].var_hat;
    // a reciprocal that overflows is a zero-variance stage in all but name
    if (stages[k].var_hat > 0.0 && std::isfinite(r)) {
      w[k] = r;
      max_finite = std::max(max_finite, r);
    }
  }
  if (max_finite == 0.0) {
    std::fill(w.begin(), w.end(), 1.0 / static_cast<double>(stages.size()));
    return w;
  }
  // zero-variance stages get the largest finite weight; scale by it so the
  // normalizing sum cannot overflow either
  CompensatedSum total;
  for (double& x : w) {
    x = x == 0.0 ? 1.0 : x / max_finite;
    total.add(x);
  }
  for (double& x : w) x /= total.value();
  return w;
}

CombinedEstimate combine_inverse_variance(std::span<const StageEstimate> stages) {
  std::vector<double> w = inverse_variance_weights(stages);
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

Combiner combiner_for_rule(const WeightRule& rule) {
  return [rule](std::span<const StageEstimate> stages) { return combine(stages, rule); };
}

ReplicatedRuns replicate_adaptive(const Problem& problem, const ProposalFamily& family,
                                  std::int64_t K, std::int64_t n, std::int64_t replications,
                                  std::uint64_t seed, const Combiner& combiner,
                                  const AdaptConfig& config) {
  if (replications < 1) throw std::invalid_argument("replicate_adaptive: need replications >= 1");
  ReplicatedRuns out;
  out.combined_mu.resize(static_cast<std::size_t>(replications));
  out.combined_var_hat.resize(static_cast<std::size_t>(replications));
  out.stage_mu.assign(static_cast<std::size_t>(K),
                      std::vector<double>(static_cast<std::size_t>(replications)));
  parallel_blocks(replications, [&](std::int64_t begin, std::int64_t end, int) {
    for (std::int64_t r = begin; r < end; ++r) {
      const AdaptiveRun run = run_adaptive(problem, family, K, n,
                                           derive_stream_seed(seed, static_cast<std::uint64_t>(r)),
                                           config);
      const CombinedEstimate c = combiner(run.stages);
      const std::size_t j = static_cast<std::size_t>(r);
      out.combined_mu[j] = c.mu_hat;
      out.combined_var_hat[j] = c.var_hat;
      for (std::int64_t k = 0; k < K; ++k) {
        out.stage_mu[static_cast<std::size_t>(k)][j] = run.stages[static_cast<std::size_t>(k)].mu_hat;
      }
    }
  });
  return out;
}

BiasDemoResult estimated_weight_bias_demo(const Problem& problem,
                                          const ProposalFamily& family, std::int64_t K,
                                          std::int64_t n, std::int64_t replications,
                                          std::uint64_t seed) {
  if (replications < 100) {
    throw std::invalid_argument("estimated_weight_bias_demo: need at least 100 replications");
  }
  std::vector<double> err_estimated(static_cast<std::size_t>(replications));
  std::vector<double> err_sqrt(static_cast<std::size_t>(replications));
  const WeightRule sqrt_rule = WeightRule::power_law(0.5);
  parallel_blocks(replications, [&](std::int64_t begin, std::int64_t end, int) {
    for (std::int64_t r = begin; r < end; ++r) {
      const AdaptiveRun run = run_adaptive(problem, family, K, n,
                                           derive_stream_seed(seed, static_cast<std::uint64_t>(r)));
      const std::size_t j = static_cast<std::size_t>(r);
      err_estimated[j] = combine_inverse_variance(run.stages).mu_hat - problem.true_mean;
      err_sqrt[j] = combine(run.stages, sqrt_rule).mu_hat - problem.true_mean;
    }
  });
  const MeanVar a = mean_and_variance(err_estimated);
  const MeanVar b = mean_and_variance(err_sqrt);
  BiasDemoResult out;
  out.replications = replications;
  out.bias_estimated_weights = a.mean;
  out.se_estimated_weights = std::sqrt(a.variance / static_cast<double>(replications));
  out.bias_sqrt_rule = b.mean;
  out.se_sqrt_rule = std::sqrt(b.variance / static_cast<double>(replications));
  return out;
}

}  // namespace estcomb
