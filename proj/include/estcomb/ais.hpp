#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "estcomb/rng.hpp"
#include "estcomb/weights.hpp"

namespace estcomb {

// A sampled point fell where the proposal has zero density but the target
// integrand does not vanish. Unreachable for the packaged families.
class SupportViolationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Every self-normalization weight in a sample came out zero.
class DegenerateSampleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Synthetic one-dimensional integration problem with a known answer, used to
// validate the combination theory empirically.
struct Problem {
  std::string name;
  std::function<double(double)> log_density;  // log p(x)
  std::function<double(double)> integrand;    // f(x)
  double true_mean = 0.0;
  int dimension = 1;
};

// f(x) = x^2 under N(0,1); mean 1. Light tails, benign skewness.
Problem square_problem();

// f(x) = 1{x > threshold} under N(0,1); mean Phi(-threshold). Heavily skewed
// for large thresholds, the regime where estimated weights misbehave.
Problem rare_event_problem(double threshold);

// Proposal family q(.; theta). The packaged family is the normal location
// shift N(theta, 1), whose support is the whole line, so the unbiasedness
// support condition holds for every theta.
struct ProposalFamily {
  double initial_parameter = 0.0;
  std::function<double(double x, double theta)> log_density;
  std::function<double(double theta, SplitMix64&)> sample;
};

ProposalFamily gaussian_location_family(double initial_theta = 0.0);

// One sampled point with its integrand-weighted density ratio f p / q.
struct WeightedPoint {
  double x = 0.0;
  double value = 0.0;
};

// Ordinary importance-sampling stage: n iid draws from q(.; theta),
// mu_hat = mean of f p / q, var_hat = sample variance of those values / n.
// Density ratios are formed as exp(log p - log q); the logs may individually
// be far outside exp() range as long as their difference is not.
StageEstimate stage_estimate(const Problem& problem, const ProposalFamily& family,
                             double theta, std::int64_t n, SplitMix64& rng,
                             std::vector<WeightedPoint>* points = nullptr);

// Self-normalized stage: ratio estimator sum(w f)/sum(w) with w = p/q and a
// delta-method variance estimate. Biased O(1/n); excluded from unbiasedness
// checks and kept for the variance-floor diagnostic.
StageEstimate stage_estimate_self_normalized(const Problem& problem,
                                             const ProposalFamily& family, double theta,
                                             std::int64_t n, SplitMix64& rng);

// Cross-entropy location update from the weighted sample history. Keeps the
// current parameter when the history carries no weight (e.g. a rare event
// that never occurred).
double adapt_step(std::span<const WeightedPoint> history, double current_theta);

struct AdaptConfig {
  bool adapt_on_full_history = true;  // false: adapt on the latest stage only
};

struct AdaptiveRun {
  std::vector<StageEstimate> stages;
  std::vector<double> thetas;  // parameter used at each stage
  std::int64_t stage_size = 0;
  std::uint64_t seed = 0;
};

// K sequential stages of stage_estimate / adapt_step starting from the
// family's initial parameter. Fully deterministic given the seed.
AdaptiveRun run_adaptive(const Problem& problem, const ProposalFamily& family,
                         std::int64_t K, std::int64_t n, std::uint64_t seed,
                         const AdaptConfig& config = {});

// Estimated-variance weighting, w_k proportional to 1/var_hat_k. Not a
// recommended combination; kept as the diagnostic foil for the bias
// demonstration. Zero-variance stages receive the largest finite weight
// present; if every stage has zero variance the weights are uniform.
std::vector<double> inverse_variance_weights(std::span<const StageEstimate> stages);

CombinedEstimate combine_inverse_variance(std::span<const StageEstimate> stages);

using Combiner = std::function<CombinedEstimate(std::span<const StageEstimate>)>;

Combiner combiner_for_rule(const WeightRule& rule);

struct ReplicatedRuns {
  std::vector<double> combined_mu;       // [replications]
  std::vector<double> combined_var_hat;  // [replications]
  std::vector<std::vector<double>> stage_mu;  // [stage][replication]
};

// Independent replications of run_adaptive + combine. Replication r draws
// from substream(seed, r); results are identical for any worker count.
ReplicatedRuns replicate_adaptive(const Problem& problem, const ProposalFamily& family,
                                  std::int64_t K, std::int64_t n, std::int64_t replications,
                                  std::uint64_t seed, const Combiner& combiner,
                                  const AdaptConfig& config = {});

struct BiasDemoResult {
  double bias_estimated_weights = 0.0;
  double se_estimated_weights = 0.0;
  double bias_sqrt_rule = 0.0;
  double se_sqrt_rule = 0.0;
  std::int64_t replications = 0;
};

// Mean error of inverse-estimated-variance weighting versus the square-root
// rule over replications, with standard errors. Direction is the claim under
// test; no magnitude is predicted.
BiasDemoResult estimated_weight_bias_demo(const Problem& problem,
                                          const ProposalFamily& family, std::int64_t K,
                                          std::int64_t n, std::int64_t replications,
                                          std::uint64_t seed);

}  // namespace estcomb
