#include "estcomb/varmodels.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "estcomb/parallel.hpp"
#include "estcomb/rng.hpp"

namespace estcomb {

namespace {

void generate_convex_decreasing(std::vector<double>& v, std::int64_t K, SplitMix64& rng) {
  v.resize(static_cast<std::size_t>(K));
  v[0] = 1.0;
  if (K >= 2) v[1] = rng.uniform(0.5, 1.0);
  for (std::int64_t k = 3; k <= K; ++k) {
    const std::size_t i = static_cast<std::size_t>(k) - 1;
    // Lower endpoint keeping both the 1/k floor and non-increasing
    // decrements; it never exceeds v[i-1], so the interval is non-empty.
    const double lo = std::max(1.0 / static_cast<double>(k), 2.0 * v[i - 1] - v[i - 2]);
    v[i] = rng.uniform(lo, v[i - 1]);
  }
}

}  // namespace

VarianceProfile profile_from_model(const PowerLawModel& model, std::int64_t K) {
  if (K < 1) throw std::invalid_argument("profile_from_model: need K >= 1");
  if (!std::isfinite(model.tau2) || model.tau2 <= 0.0) {
    throw std::invalid_argument("profile_from_model: tau2 must be positive finite");
  }
  VarianceProfile p;
  p.v.reserve(static_cast<std::size_t>(K));
  for (std::int64_t k = 1; k <= K; ++k) p.v.push_back(model.variance_at(k));
  p.label = "power-law y=" + std::to_string(model.decay_rate);
  return p;
}

VarianceProfile profile_power_law(double decay_rate, std::int64_t K) {
  return profile_from_model(PowerLawModel{decay_rate, 1.0}, K);
}

VarianceProfile profile_plateau(std::int64_t decay_steps, std::int64_t plateau_steps) {
  if (decay_steps < 1 || plateau_steps < 0) {
    throw std::invalid_argument("profile_plateau: need decay_steps >= 1, plateau_steps >= 0");
  }
  VarianceProfile p;
  p.v.reserve(static_cast<std::size_t>(decay_steps + plateau_steps));
  for (std::int64_t k = 1; k <= decay_steps; ++k) p.v.push_back(1.0 / static_cast<double>(k));
  const double plateau = 1.0 / static_cast<double>(decay_steps + 1);
  for (std::int64_t k = 0; k < plateau_steps; ++k) p.v.push_back(plateau);
  p.label = "plateau k1=" + std::to_string(decay_steps) + " k2=" + std::to_string(plateau_steps);
  return p;
}

VarianceProfile profile_transient(std::int64_t flat_len, double flat_var,
                                  std::int64_t tail_len, double tail_var) {
  if (flat_len < 1 || tail_len < 1) {
    throw std::invalid_argument("profile_transient: lengths must be >= 1");
  }
  if (!(flat_var > 0.0) || !(tail_var > 0.0) || !std::isfinite(flat_var) ||
      !std::isfinite(tail_var)) {
    throw std::invalid_argument("profile_transient: variances must be positive finite");
  }
  VarianceProfile p;
  p.v.assign(static_cast<std::size_t>(flat_len), flat_var);
  p.v.insert(p.v.end(), static_cast<std::size_t>(tail_len), tail_var);
  p.label = "transient " + std::to_string(flat_len) + "x" + std::to_string(flat_var) + " then " +
            std::to_string(tail_len) + "x" + std::to_string(tail_var);
  return p;
}

VarianceProfile sample_convex_decreasing(const ConvexDecreasingSampler& sampler) {
  if (sampler.stages < 1) {
    throw std::invalid_argument("sample_convex_decreasing: need at least one stage");
  }
  SplitMix64 rng(sampler.seed);
  VarianceProfile p;
  generate_convex_decreasing(p.v, sampler.stages, rng);
  if (!satisfies_convex_decreasing(p.v)) {
    throw std::logic_error("sample_convex_decreasing: generated profile broke its constraints");
  }
  p.label = "convex-decreasing seed=" + std::to_string(sampler.seed);
  return p;
}

bool satisfies_convex_decreasing(std::span<const double> v) {
  if (v.empty() || v[0] != 1.0) return false;
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (!(v[i] >= 1.0 / static_cast<double>(i + 1))) return false;
    if (!(v[i] <= v[i - 1])) return false;
    if (i >= 2 && !(v[i] >= 2.0 * v[i - 1] - v[i - 2])) return false;
  }
  return true;
}

PlateauSweepResult sweep_plateau(std::int64_t max_decay_steps, std::int64_t max_plateau_steps) {
  if (max_decay_steps < 1 || max_plateau_steps < 1) {
    throw std::invalid_argument("sweep_plateau: bounds must be >= 1");
  }
  PlateauSweepResult best;
  best.max_inefficiency = 0.0;
  for (std::int64_t k1 = 1; k1 <= max_decay_steps; ++k1) {
    for (std::int64_t k2 = 1; k2 <= max_plateau_steps; ++k2) {
      const VarianceProfile p = profile_plateau(k1, k2);
      const double rho = inefficiency_general(p.v);
      if (rho > best.max_inefficiency) {
        best.max_inefficiency = rho;
        best.argmax_decay_steps = k1;
        best.argmax_plateau_steps = k2;
      }
    }
  }
  return best;
}

SweepResult sweep_convex(std::int64_t K, std::int64_t n_samples, std::uint64_t seed,
                         double threshold) {
  if (K < 1) throw std::invalid_argument("sweep_convex: need K >= 1");
  if (n_samples < 1) throw std::invalid_argument("sweep_convex: need n_samples >= 1");
  if (!std::isfinite(threshold)) throw std::invalid_argument("sweep_convex: bad threshold");

  const double sqrt_sum = power_sum(0.5, K);
  const int workers = parallel_workers();

  struct Block {
    std::int64_t count = 0;
    double worst = 0.0;
    std::int64_t worst_index = -1;
  };
  std::vector<Block> blocks(static_cast<std::size_t>(std::max(1, workers)));

  parallel_blocks(n_samples, workers, [&](std::int64_t begin, std::int64_t end, int b) {
    Block local;
    std::vector<double> v;
    for (std::int64_t i = begin; i < end; ++i) {
      SplitMix64 rng = substream(seed, static_cast<std::uint64_t>(i));
      generate_convex_decreasing(v, K, rng);
      const double rho = detail::inefficiency_general_given_s(v, sqrt_sum);
      if (rho > threshold) ++local.count;
      if (rho > local.worst || (rho == local.worst && i < local.worst_index)) {
        local.worst = rho;
        local.worst_index = i;
      }
    }
    blocks[static_cast<std::size_t>(b)] = local;
  });

  SweepResult out;
  out.stages = K;
  out.count_total = n_samples;
  out.threshold = threshold;
  out.seed = seed;
  out.worst_inefficiency = 0.0;
  std::int64_t worst_index = -1;
  for (const Block& b : blocks) {
    out.count_exceeding += b.count;
    if (b.worst_index < 0) continue;
    if (b.worst > out.worst_inefficiency ||
        (b.worst == out.worst_inefficiency && b.worst_index < worst_index)) {
      out.worst_inefficiency = b.worst;
      worst_index = b.worst_index;
    }
  }
  if (worst_index >= 0) {
    out.worst_profile = sample_convex_decreasing(
        ConvexDecreasingSampler{K, derive_stream_seed(seed, static_cast<std::uint64_t>(worst_index))});
    out.worst_profile.label = "convex-decreasing sample #" + std::to_string(worst_index);
  }
  return out;
}

}  // namespace estcomb
