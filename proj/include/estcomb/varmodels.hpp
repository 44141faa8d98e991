#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "estcomb/ineff.hpp"

namespace estcomb {

// Length-K vector of true stage variances Var(mu_hat_k), all positive.
// This is the object every inefficiency functional consumes.
struct VarianceProfile {
  std::vector<double> v;
  std::string label;

  std::int64_t stages() const noexcept { return static_cast<std::int64_t>(v.size()); }
};

VarianceProfile profile_from_model(const PowerLawModel& model, std::int64_t K);

// v_k = k^{-decay_rate} (tau2 = 1 normalization).
VarianceProfile profile_power_law(double decay_rate, std::int64_t K);

// v_k = 1/k for the first decay_steps entries, then 1/(decay_steps+1) for
// plateau_steps more.
VarianceProfile profile_plateau(std::int64_t decay_steps, std::int64_t plateau_steps);

// flat_len copies of flat_var followed by tail_len copies of tail_var.
VarianceProfile profile_transient(std::int64_t flat_len, double flat_var,
                                  std::int64_t tail_len, double tail_var);

// Random profile from the convex-decreasing family: v_1 = 1, floor 1/k,
// monotone non-increasing, and non-increasing decrements. v_2 ~ U[1/2, 1];
// from k = 3 on, v_k ~ U[max(1/k, 2 v_{k-1} - v_{k-2}), v_{k-1}], which is
// the unique lower endpoint keeping all four constraints by construction.
struct ConvexDecreasingSampler {
  std::int64_t stages = 3;
  std::uint64_t seed = 0;
};

VarianceProfile sample_convex_decreasing(const ConvexDecreasingSampler& sampler);

// All four family constraints, written exactly as generation evaluates them.
bool satisfies_convex_decreasing(std::span<const double> v);

struct PlateauSweepResult {
  double max_inefficiency = 1.0;
  std::int64_t argmax_decay_steps = 1;
  std::int64_t argmax_plateau_steps = 1;
};

// Exhaustive square-root-rule inefficiency scan over plateau profiles with
// decay_steps in 1..max_decay_steps and plateau_steps in 1..max_plateau_steps.
PlateauSweepResult sweep_plateau(std::int64_t max_decay_steps, std::int64_t max_plateau_steps);

struct SweepResult {
  std::int64_t stages = 0;
  std::int64_t count_total = 0;
  std::int64_t count_exceeding = 0;  // profiles with inefficiency > threshold
  double threshold = 9.0 / 8.0;
  double worst_inefficiency = 1.0;
  VarianceProfile worst_profile;
  std::uint64_t seed = 0;
};

// Monte Carlo sweep over convex-decreasing profiles. Sample i draws from
// substream(seed, i), so the result is bit-identical for any worker count.
SweepResult sweep_convex(std::int64_t K, std::int64_t n_samples, std::uint64_t seed,
                         double threshold = 9.0 / 8.0);

}  // namespace estcomb
