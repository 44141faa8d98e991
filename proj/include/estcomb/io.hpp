#pragma once

#include <string>

#include <json.hpp>

#include "estcomb/ais.hpp"
#include "estcomb/varmodels.hpp"
#include "estcomb/weights.hpp"

namespace estcomb {

// Shortest round-trip decimal representation of a double.
std::string format_double(double x);

// CSV with header "k,variance", LF line endings, full-precision values.
std::string profile_csv(const VarianceProfile& profile);

nlohmann::json sweep_json(const SweepResult& result);

nlohmann::json plateau_sweep_json(const PlateauSweepResult& result,
                                  std::int64_t max_decay_steps,
                                  std::int64_t max_plateau_steps);

nlohmann::json run_json(const AdaptiveRun& run, const Problem& problem,
                        const std::string& rule_name, const CombinedEstimate& combined);

}  // namespace estcomb
