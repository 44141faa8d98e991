// Command-line front end: inefficiency analytics, robustness sweeps, the
// adaptive importance-sampling engine, and a claim-by-claim reproduction
// report. All file output goes to --out (default stdout); identical flags
// and seed give byte-identical output.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "estcomb/ais.hpp"
#include "estcomb/ineff.hpp"
#include "estcomb/io.hpp"
#include "estcomb/report.hpp"
#include "estcomb/stats.hpp"
#include "estcomb/varmodels.hpp"
#include "estcomb/weights.hpp"

namespace {

// 0 = success, 1 = runtime/I/O failure or failed checks, 2 = usage error.
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

int write_output(const std::string& out_path, const std::string& payload) {
  if (out_path.empty()) {
    std::cout << payload;
    return 0;
  }
  std::ofstream file(out_path, std::ios::binary);
  if (!file) {
    std::cerr << "error: cannot open " << out_path << " for writing\n";
    return kExitFailure;
  }
  file << payload;
  if (!file.good()) {
    std::cerr << "error: write to " << out_path << " failed\n";
    return kExitFailure;
  }
  return 0;
}

struct RhoArgs {
  double x = 0.5;
  double y = 0.5;
  std::int64_t K = 1;
};

void add_rho_options(CLI::App* cmd, RhoArgs& args) {
  cmd->add_option("--x", args.x, "weighting exponent")->required();
  cmd->add_option("--y", args.y, "true decay rate")->required();
  cmd->add_option("--K", args.K, "number of stages")->required();
}

int run_rho(const RhoArgs& args) {
  const estcomb::IneffReport report = estcomb::evaluate_rule_inefficiency(args.x, args.y, args.K);
  std::cout << estcomb::format_double(report.value) << "\n";
  return 0;
}

struct ReproduceArgs {
  std::vector<std::string> ids;
  bool all = false;
  std::uint64_t seed = 1;
  std::int64_t samples = 1'000'000;
  std::string out;
  std::string format = "csv";
};

int run_reproduce(const ReproduceArgs& args) {
  std::vector<std::string> ids = args.ids;
  if (args.all) ids = estcomb::claim_ids();
  if (ids.empty()) {
    std::cerr << "error: pass claim ids or --all\n";
    return kExitUsage;
  }
  for (const std::string& id : ids) {
    if (!estcomb::is_claim_id(id)) {
      std::cerr << "error: unknown claim id: " << id << "\n";
      return kExitUsage;
    }
  }
  estcomb::ReproduceOptions options;
  options.seed = args.seed;
  options.sweep_samples = args.samples;
  const std::vector<estcomb::ReportRow> rows = estcomb::run_claims(ids, options);
  const std::string payload = args.format == "json"
                                  ? estcomb::report_json(rows).dump(2) + "\n"
                                  : estcomb::report_csv(rows);
  const int io_status = write_output(args.out, payload);
  if (io_status != 0) return io_status;
  std::size_t passed = 0;
  for (const auto& row : rows) passed += row.pass ? 1 : 0;
  std::cerr << passed << "/" << rows.size() << " checks passed\n";
  return estcomb::all_pass(rows) ? 0 : kExitFailure;
}

struct SweepArgs {
  std::string kind;
  std::int64_t k1max = 100;
  std::int64_t k2max = 100;
  std::int64_t K = 5;
  std::int64_t samples = 1'000'000;
  std::uint64_t seed = 1;
  double threshold = 9.0 / 8.0;
  std::string out;
};

int run_sweep(const SweepArgs& args) {
  nlohmann::json payload;
  if (args.kind == "plateau") {
    payload = estcomb::plateau_sweep_json(estcomb::sweep_plateau(args.k1max, args.k2max),
                                          args.k1max, args.k2max);
  } else {
    payload = estcomb::sweep_json(
        estcomb::sweep_convex(args.K, args.samples, args.seed, args.threshold));
  }
  return write_output(args.out, payload.dump(2) + "\n");
}

struct AisArgs {
  std::string problem;
  double t = 3.0;
  std::int64_t K = 5;
  std::int64_t n = 1000;
  std::string rule = "sqrt";
  std::uint64_t seed = 1;
  std::int64_t replications = 1;
  std::string out;
};

estcomb::Combiner combiner_for_name(const std::string& name) {
  if (name == "sqrt") return estcomb::combiner_for_rule(estcomb::WeightRule::power_law(0.5));
  if (name == "uniform") return estcomb::combiner_for_rule(estcomb::WeightRule::power_law(0.0));
  if (name == "last") return estcomb::combiner_for_rule(estcomb::WeightRule::last_only());
  return [](std::span<const estcomb::StageEstimate> stages) {
    return estcomb::combine_inverse_variance(stages);
  };
}

int run_ais(const AisArgs& args) {
  const estcomb::Problem problem =
      args.problem == "x2" ? estcomb::square_problem() : estcomb::rare_event_problem(args.t);
  const estcomb::ProposalFamily family = estcomb::gaussian_location_family();
  const estcomb::Combiner combiner = combiner_for_name(args.rule);

  nlohmann::json payload;
  if (args.replications <= 1) {
    const estcomb::AdaptiveRun run =
        estcomb::run_adaptive(problem, family, args.K, args.n, args.seed);
    payload = estcomb::run_json(run, problem, args.rule, combiner(run.stages));
    if (args.problem == "rare") payload["t"] = args.t;
  } else {
    const estcomb::ReplicatedRuns runs = estcomb::replicate_adaptive(
        problem, family, args.K, args.n, args.replications, args.seed, combiner);
    const estcomb::MeanVar mv = estcomb::mean_and_variance(runs.combined_mu);
    const double mean_var_hat = estcomb::compensated_total(runs.combined_var_hat) /
                                static_cast<double>(args.replications);
    payload = nlohmann::json{
        {"problem", problem.name},
        {"K", args.K},
        {"n", args.n},
        {"seed", args.seed},
        {"rule", args.rule},
        {"replications", args.replications},
        {"true_mean", problem.true_mean},
        {"mean_mu_hat", mv.mean},
        {"se_mu_hat", std::sqrt(mv.variance / static_cast<double>(args.replications))},
        {"empirical_var_mu_hat", mv.variance},
        {"mean_var_hat", mean_var_hat},
    };
    if (args.problem == "rare") payload["t"] = args.t;
  }
  return write_output(args.out, payload.dump(2) + "\n");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"estimator combination toolkit: square-root rule analytics, "
               "robustness sweeps, and an adaptive importance-sampling testbed"};
  app.require_subcommand(1);

  RhoArgs rho_args;
  CLI::App* rho_cmd =
      app.add_subcommand("rho", "power-law inefficiency of exponent-x weights under k^-y decay");
  add_rho_options(rho_cmd, rho_args);
  // alias path: `ineff rho ...`
  CLI::App* ineff_group = app.add_subcommand("ineff", "inefficiency analytics");
  ineff_group->require_subcommand(1);
  RhoArgs rho_args_alias;
  CLI::App* rho_alias = ineff_group->add_subcommand("rho", "same as top-level rho");
  add_rho_options(rho_alias, rho_args_alias);

  ReproduceArgs rep_args;
  CLI::App* rep_cmd = app.add_subcommand("reproduce", "re-run the reported claims as checks");
  rep_cmd->add_option("ids", rep_args.ids, "claim ids to run");
  rep_cmd->add_flag("--all", rep_args.all, "run every claim");
  rep_cmd->add_option("--seed", rep_args.seed, "master seed for stochastic claims");
  rep_cmd->add_option("--samples", rep_args.samples, "sample budget for the convex sweeps");
  rep_cmd->add_option("--out", rep_args.out, "output path (default stdout)");
  rep_cmd->add_option("--format", rep_args.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));

  SweepArgs sweep_args;
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "robustness sweeps over variance profiles");
  sweep_cmd->add_option("--kind", sweep_args.kind, "plateau or convex")
      ->required()
      ->check(CLI::IsMember({"plateau", "convex"}));
  sweep_cmd->add_option("--k1max", sweep_args.k1max, "max decaying steps (plateau)");
  sweep_cmd->add_option("--k2max", sweep_args.k2max, "max plateau steps (plateau)");
  sweep_cmd->add_option("--K", sweep_args.K, "profile length (convex)");
  sweep_cmd->add_option("--samples", sweep_args.samples, "number of sampled profiles (convex)");
  sweep_cmd->add_option("--seed", sweep_args.seed, "master seed (convex)");
  sweep_cmd->add_option("--threshold", sweep_args.threshold, "exceedance threshold (convex)");
  sweep_cmd->add_option("--out", sweep_args.out, "output path (default stdout)");

  AisArgs ais_args;
  CLI::App* ais_cmd = app.add_subcommand("ais", "adaptive importance-sampling runs");
  ais_cmd->add_option("--problem", ais_args.problem, "x2 or rare")
      ->required()
      ->check(CLI::IsMember({"x2", "rare"}));
  ais_cmd->add_option("--t", ais_args.t, "rare-event threshold");
  ais_cmd->add_option("--K", ais_args.K, "number of stages");
  ais_cmd->add_option("--n", ais_args.n, "observations per stage");
  ais_cmd->add_option("--rule", ais_args.rule, "sqrt, uniform, last, or invvar")
      ->check(CLI::IsMember({"sqrt", "uniform", "last", "invvar"}));
  ais_cmd->add_option("--seed", ais_args.seed, "run seed");
  ais_cmd->add_option("--replications", ais_args.replications, "independent replications");
  ais_cmd->add_option("--out", ais_args.out, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (rho_cmd->parsed()) return run_rho(rho_args);
    if (ineff_group->parsed()) return run_rho(rho_args_alias);
    if (rep_cmd->parsed()) return run_reproduce(rep_args);
    if (sweep_cmd->parsed()) return run_sweep(sweep_args);
    if (ais_cmd->parsed()) return run_ais(ais_args);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}
