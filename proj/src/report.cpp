#include "estcomb/report.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <stdexcept>

#include "estcomb/ais.hpp"
#include "estcomb/ineff.hpp"
#include "estcomb/io.hpp"
#include "estcomb/stats.hpp"
#include "estcomb/varmodels.hpp"

namespace estcomb {

namespace {

ReportRow make_row(std::string id, std::optional<double> lo, std::optional<double> hi,
                   double computed, double tolerance) {
  ReportRow row;
  row.claim_id = std::move(id);
  row.target_lo = lo;
  row.target_hi = hi;
  row.computed = computed;
  row.tolerance = tolerance;
  const bool above = !lo || computed >= *lo - tolerance;
  const bool below = !hi || computed <= *hi + tolerance;
  row.pass = above && below && std::isfinite(computed);
  return row;
}

void claim_ninebyeight(const ReproduceOptions&, std::vector<ReportRow>& rows) {
  CompensatedSum s;
  double cap = 0.0;
  for (std::int64_t K = 1; K <= 10'000; ++K) {
    s.add(std::sqrt(static_cast<double>(K)));
    const double sv = s.value();
    const double kd = static_cast<double>(K);
    cap = std::max(cap, kd * kd * (kd + 1.0) / (2.0 * sv * sv));
  }
  rows.push_back(make_row("ninebyeight.cap", 1.0, 9.0 / 8.0, cap, 1e-12));
  rows.push_back(
      make_row("ninebyeight.limit", 1.1240, 1.1250, inefficiency(0.5, 1.0, 1'000'000), 0.0));
}

void claim_minimax(const ReproduceOptions&, std::vector<ReportRow>& rows) {
  std::vector<double> grid;
  for (int i = 0; i <= 20; ++i) grid.push_back(static_cast<double>(i) / 20.0);
  for (std::int64_t K : {2, 5, 10, 100}) {
    const MinimaxScanResult scan = minimax_scan(K, grid);
    rows.push_back(make_row("minimax.K" + std::to_string(K), 0.5, 0.5, scan.best_exponent, 0.0));
  }
}

void claim_plateau104(const ReproduceOptions&, std::vector<ReportRow>& rows) {
  const VarianceProfile p = profile_plateau(5, 5);
  rows.push_back(make_row("plateau104", 1.035, 1.040, inefficiency_general(p.v), 0.0));
}

void claim_plateau1121(const ReproduceOptions&, std::vector<ReportRow>& rows) {
  const PlateauSweepResult sweep = sweep_plateau(100, 100);
  rows.push_back(make_row("plateau1121", 1.0, 1.1215, sweep.max_inefficiency, 0.0));
}

void claim_transient637(const ReproduceOptions&, std::vector<ReportRow>& rows) {
  const VarianceProfile p = profile_transient(3, 1.0, 10, 0.01);
  rows.push_back(make_row("transient637", 6.33, 6.40, inefficiency_general(p.v), 0.0));
}

void claim_scramblednet43(const ReproduceOptions&, std::vector<ReportRow>& rows) {
  rows.push_back(make_row("scramblednet43", 4.0 / 3.0, 4.0 / 3.0,
                          asymptotic_inefficiency(RateBounds(0.0, 2.0)), 1e-12));
}

void claim_gammalog2(const ReproduceOptions&, std::vector<ReportRow>& rows) {
  rows.push_back(
      make_row("gammalog2", 2.0, 2.0, last_iterate_inefficiency(std::log(2.0), 1).bound, 1e-12));
}

void claim_gammalog10(const ReproduceOptions&, std::vector<ReportRow>& rows) {
  rows.push_back(make_row("gammalog10", 10.0 / 9.0, 10.0 / 9.0,
                          last_iterate_inefficiency(std::log(10.0), 1).bound, 1e-12));
}

void claim_convex(std::int64_t K, double count_lo, double count_hi, double worst_lo,
                  double worst_hi, const ReproduceOptions& options,
                  std::vector<ReportRow>& rows) {
  const SweepResult sweep = sweep_convex(K, options.sweep_samples,
                                         derive_stream_seed(options.seed, static_cast<std::uint64_t>(K)));
  const std::string base = "convexK" + std::to_string(K);
  rows.push_back(make_row(base + ".count", count_lo, count_hi,
                          static_cast<double>(sweep.count_exceeding), 0.0));
  rows.push_back(make_row(base + ".worst", worst_lo, worst_hi, sweep.worst_inefficiency, 0.0));
}

struct AisStudy {
  ReplicatedRuns runs;
  std::int64_t replications;
};

AisStudy run_ais_study(std::int64_t replications, std::uint64_t seed) {
  const Problem problem = square_problem();
  const ProposalFamily family = gaussian_location_family();
  AisStudy study;
  study.replications = replications;
  study.runs = replicate_adaptive(problem, family, 5, 200, replications, seed,
                                  combiner_for_rule(WeightRule::power_law(0.5)));
  return study;
}

void claim_aisunbiased(const ReproduceOptions& options, std::vector<ReportRow>& rows) {
  const AisStudy study = run_ais_study(10'000, options.seed);
  const MeanVar mv = mean_and_variance(study.runs.combined_mu);
  const double se = std::sqrt(mv.variance / static_cast<double>(study.replications));
  rows.push_back(make_row("aisunbiased", -4.0, 4.0, (mv.mean - 1.0) / se, 0.0));
}

void claim_aiscorr(const ReproduceOptions& options, std::vector<ReportRow>& rows) {
  const AisStudy study = run_ais_study(10'000, options.seed);
  double worst = 0.0;
  const auto& sm = study.runs.stage_mu;
  for (std::size_t k = 0; k < sm.size(); ++k) {
    for (std::size_t l = k + 1; l < sm.size(); ++l) {
      worst = std::max(worst, std::abs(pearson_correlation(sm[k], sm[l])));
    }
  }
  const double normalized = worst * std::sqrt(static_cast<double>(study.replications));
  rows.push_back(make_row("aiscorr", 0.0, 4.0, normalized, 0.0));
}

void claim_aisvarhat(const ReproduceOptions& options, std::vector<ReportRow>& rows) {
  const AisStudy study = run_ais_study(100'000, options.seed);
  const MeanVar mu_stats = mean_and_variance(study.runs.combined_mu);
  const double mean_var_hat =
      compensated_total(study.runs.combined_var_hat) / static_cast<double>(study.replications);
  rows.push_back(make_row("aisvarhat", 0.95, 1.05, mean_var_hat / mu_stats.variance, 0.0));
}

void claim_biasdemo(const ReproduceOptions& options, std::vector<ReportRow>& rows) {
  const Problem problem = rare_event_problem(3.0);
  const ProposalFamily family = gaussian_location_family();
  const BiasDemoResult demo =
      estimated_weight_bias_demo(problem, family, 10, 50, 10'000, options.seed);
  rows.push_back(make_row("biasdemo.invvar", std::nullopt, -4.0,
                          demo.bias_estimated_weights / demo.se_estimated_weights, 0.0));
  rows.push_back(
      make_row("biasdemo.sqrt", -4.0, 4.0, demo.bias_sqrt_rule / demo.se_sqrt_rule, 0.0));
}

using ClaimFn = std::function<void(const ReproduceOptions&, std::vector<ReportRow>&)>;

const std::vector<std::pair<std::string, ClaimFn>>& claim_registry() {
  static const std::vector<std::pair<std::string, ClaimFn>> registry = {
      {"ninebyeight", claim_ninebyeight},
      {"minimax", claim_minimax},
      {"plateau104", claim_plateau104},
      {"plateau1121", claim_plateau1121},
      {"transient637", claim_transient637},
      {"scramblednet43", claim_scramblednet43},
      {"gammalog2", claim_gammalog2},
      {"gammalog10", claim_gammalog10},
      {"convexK5",
       [](const ReproduceOptions& o, std::vector<ReportRow>& r) {
         claim_convex(5, 2, 100, 1.10, 1.20, o, r);
       }},
      {"convexK10",
       [](const ReproduceOptions& o, std::vector<ReportRow>& r) {
         claim_convex(10, 1000, 3500, 1.22, 1.37, o, r);
       }},
      {"convexK20",
       [](const ReproduceOptions& o, std::vector<ReportRow>& r) {
         claim_convex(20, 20, 400, 1.19, 1.33, o, r);
       }},
      {"aisunbiased", claim_aisunbiased},
      {"aiscorr", claim_aiscorr},
      {"aisvarhat", claim_aisvarhat},
      {"biasdemo", claim_biasdemo},
  };
  return registry;
}

}  // namespace

const std::vector<std::string>& claim_ids() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> v;
    for (const auto& [id, fn] : claim_registry()) v.push_back(id);
    return v;
  }();
  return ids;
}

bool is_claim_id(const std::string& id) {
  for (const auto& [known, fn] : claim_registry()) {
    if (known == id) return true;
  }
  return false;
}

std::vector<ReportRow> run_claims(std::span<const std::string> ids,
                                  const ReproduceOptions& options) {
  for (const std::string& id : ids) {
    if (!is_claim_id(id)) throw std::invalid_argument("unknown claim id: " + id);
  }
  std::vector<ReportRow> rows;
  for (const std::string& id : ids) {
    for (const auto& [known, fn] : claim_registry()) {
      if (known == id) fn(options, rows);
    }
  }
  return rows;
}

bool all_pass(std::span<const ReportRow> rows) {
  for (const ReportRow& row : rows) {
    if (!row.pass) return false;
  }
  return true;
}

std::string report_csv(std::span<const ReportRow> rows) {
  std::string out = "claim_id,target_lo,target_hi,computed,tolerance,pass\n";
  for (const ReportRow& row : rows) {
    out += row.claim_id;
    out += ',';
    if (row.target_lo) out += format_double(*row.target_lo);
    out += ',';
    if (row.target_hi) out += format_double(*row.target_hi);
    out += ',';
    out += format_double(row.computed);
    out += ',';
    out += format_double(row.tolerance);
    out += ',';
    out += row.pass ? "true" : "false";
    out += '\n';
  }
  return out;
}

nlohmann::json report_json(std::span<const ReportRow> rows) {
  nlohmann::json out = nlohmann::json::array();
  for (const ReportRow& row : rows) {
    nlohmann::json j{
        {"claim_id", row.claim_id},
        {"computed", row.computed},
        {"tolerance", row.tolerance},
        {"pass", row.pass},
    };
    j["target_lo"] = row.target_lo ? nlohmann::json(*row.target_lo) : nlohmann::json(nullptr);
    j["target_hi"] = row.target_hi ? nlohmann::json(*row.target_hi) : nlohmann::json(nullptr);
    out.push_back(std::move(j));
  }
  return out;
}

}  // namespace estcomb
