#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

namespace estcomb {

// One reproduced claim. Targets are an interval [target_lo, target_hi]
// (equal endpoints for a scalar target, absent endpoint for a one-sided
// criterion); pass means computed lies inside it, widened by tolerance.
struct ReportRow {
  std::string claim_id;
  std::optional<double> target_lo;
  std::optional<double> target_hi;
  double computed = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct ReproduceOptions {
  std::uint64_t seed = 1;
  std::int64_t sweep_samples = 1'000'000;
};

// Stable claim identifiers, in report order.
const std::vector<std::string>& claim_ids();

bool is_claim_id(const std::string& id);

// Runs the listed claims (multi-part claims emit one row per part, with a
// dotted suffix on the claim id).
std::vector<ReportRow> run_claims(std::span<const std::string> ids,
                                  const ReproduceOptions& options);

bool all_pass(std::span<const ReportRow> rows);

// CSV: header claim_id,target_lo,target_hi,computed,tolerance,pass with
// full-precision values, LF endings; one-sided bounds are empty fields.
std::string report_csv(std::span<const ReportRow> rows);

nlohmann::json report_json(std::span<const ReportRow> rows);

}  // namespace estcomb
