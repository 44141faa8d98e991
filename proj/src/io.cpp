#include "estcomb/io.hpp"

#include <charconv>
#include <system_error>

namespace estcomb {

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

std::string profile_csv(const VarianceProfile& profile) {
  std::string out = "k,variance\n";
  for (std::size_t k = 0; k < profile.v.size(); ++k) {
    out += std::to_string(k + 1);
    out += ',';
    out += format_double(profile.v[k]);
    out += '\n';
  }
  return out;
}

nlohmann::json sweep_json(const SweepResult& result) {
  return nlohmann::json{
      {"K", result.stages},
      {"n_samples", result.count_total},
      {"seed", result.seed},
      {"threshold", result.threshold},
      {"count_exceeding", result.count_exceeding},
      {"worst_rho", result.worst_inefficiency},
      {"worst_profile", result.worst_profile.v},
  };
}

nlohmann::json plateau_sweep_json(const PlateauSweepResult& result,
                                  std::int64_t max_decay_steps,
                                  std::int64_t max_plateau_steps) {
  return nlohmann::json{
      {"kind", "plateau"},
      {"k1max", max_decay_steps},
      {"k2max", max_plateau_steps},
      {"max_rho", result.max_inefficiency},
      {"argmax", {{"k1", result.argmax_decay_steps}, {"k2", result.argmax_plateau_steps}}},
  };
}

nlohmann::json run_json(const AdaptiveRun& run, const Problem& problem,
                        const std::string& rule_name, const CombinedEstimate& combined) {
  nlohmann::json stages = nlohmann::json::array();
  for (std::size_t k = 0; k < run.stages.size(); ++k) {
    stages.push_back({
        {"k", k + 1},
        {"theta", run.thetas[k]},
        {"mu_hat", run.stages[k].mu_hat},
        {"var_hat", run.stages[k].var_hat},
    });
  }
  return nlohmann::json{
      {"problem", problem.name},
      {"K", run.stages.size()},
      {"n", run.stage_size},
      {"seed", run.seed},
      {"stages", stages},
      {"combined",
       {{"rule", rule_name}, {"mu_hat", combined.mu_hat}, {"var_hat", combined.var_hat}}},
  };
}

}  // namespace estcomb
