#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "estcomb/ineff.hpp"
#include "estcomb/rng.hpp"
#include "estcomb/stats.hpp"
#include "estcomb/weights.hpp"

using namespace estcomb;

namespace {

// plain-summation oracle, small K only
double naive_power_sum(double x, std::int64_t K) {
  double s = 0.0;
  for (std::int64_t i = 1; i <= K; ++i) s += std::pow(static_cast<double>(i), x);
  return s;
}

// direct triple-summation oracle for the exponential-decay inefficiency
double brute_exp_inefficiency(double x, double y, std::int64_t K) {
  CompensatedSum a, b, c;
  for (std::int64_t i = 1; i <= K; ++i) {
    a.add(std::exp((2.0 * x - y) * static_cast<double>(i)));
    b.add(std::exp(y * static_cast<double>(i)));
    c.add(std::exp(x * static_cast<double>(i)));
  }
  return (a.value() / c.value()) * (b.value() / c.value());
}

}  // namespace

TEST_CASE("power_sum basics") {
  CHECK(power_sum(1.0, 10) == 55.0);
  CHECK(power_sum(0.0, 7) == 7.0);
  CHECK(power_sum(0.5, 10) == doctest::Approx(22.468278186204103).epsilon(1e-14));

  SplitMix64 rng(3);
  for (int rep = 0; rep < 30; ++rep) {
    const double x = rng.uniform(-4.0, 4.0);
    const std::int64_t K = 1 + static_cast<std::int64_t>(rng.next() % 500);
    const double expect = naive_power_sum(x, K);
    CHECK(power_sum(x, K) == doctest::Approx(expect).epsilon(1e-13));
  }
}

TEST_CASE("power_sum refuses out-of-contract inputs") {
  CHECK_THROWS_AS(power_sum(1.0, 0), std::invalid_argument);
  CHECK_THROWS_AS(power_sum(1.0, 10'000'001), std::invalid_argument);
  CHECK_THROWS_AS(power_sum(std::numeric_limits<double>::infinity(), 5), std::invalid_argument);
}

TEST_CASE("inefficiency identities") {
  CHECK(inefficiency(0.7, 0.7, 50) == 1.0);  // matched rate, exact
  CHECK(inefficiency(0.2, 0.9, 1) == 1.0);   // single stage
  const double root2 = std::sqrt(2.0);
  CHECK(inefficiency(0.5, 1.0, 2) ==
        doctest::Approx(6.0 / ((1.0 + root2) * (1.0 + root2))).epsilon(1e-14));
}

TEST_CASE("inefficiency symmetry in the reflected rate") {
  for (std::int64_t K : {2, 5, 17}) {
    for (double x : {0.0, 0.25, 0.5, 0.75, 1.0}) {
      for (double y : {0.0, 0.3, 0.8, 1.0}) {
        const double direct = inefficiency(x, y, K);
        const double reflected = inefficiency(x, 2.0 * x - y, K);
        CHECK(std::abs(direct - reflected) <= 1e-12 * direct);
      }
    }
  }
}

TEST_CASE("inefficiency is strictly convex in the decay rate") {
  for (std::int64_t K : {2, 10}) {
    for (double x : {0.2, 0.5, 0.9}) {
      std::vector<double> values;
      for (int i = 0; i <= 100; ++i) values.push_back(inefficiency(x, i / 100.0, K));
      for (std::size_t i = 1; i + 1 < values.size(); ++i) {
        CHECK(values[i - 1] - 2.0 * values[i] + values[i + 1] > 0.0);
      }
    }
  }
}

TEST_CASE("inefficiency is at least one, equal only at x=y or K=1") {
  for (std::int64_t K : {1, 2, 7, 40}) {
    for (double x : {0.0, 0.3, 0.5, 1.0}) {
      for (double y : {0.0, 0.4, 1.0}) {
        const double rho = inefficiency(x, y, K);
        CHECK(rho >= 1.0 - 1e-12);
        if (K > 1 && x != y) CHECK(rho > 1.0);
      }
    }
  }
}

TEST_CASE("integral bounds sandwich the power sum") {
  // equalities at the ends of the exponent range
  const SumBounds at0 = integral_bounds(0.0, 5);
  CHECK(at0.lower == 5.0);
  CHECK(at0.upper == 5.0);
  const SumBounds at1 = integral_bounds(1.0, 10);
  CHECK(at1.lower == 55.0);
  CHECK(at1.upper == 60.0);

  for (int xi = 0; xi <= 10; ++xi) {
    const double x = xi / 10.0;
    CompensatedSum running;
    for (std::int64_t K = 1; K <= 1000; ++K) {
      running.add(std::pow(static_cast<double>(K), x));
      const double sum = running.value();
      const SumBounds b = integral_bounds(x, K);
      CHECK(b.lower <= sum);
      CHECK(sum <= b.upper);
      if (x > 0.0 && x < 1.0) CHECK(b.lower < sum);
      if (x > 0.0) CHECK(sum < b.upper);
    }
  }

  CHECK_THROWS_AS(integral_bounds(-0.1, 5), std::invalid_argument);
  CHECK_THROWS_AS(integral_bounds(1.1, 5), std::invalid_argument);
}

TEST_CASE("sup over the rate interval sits at an endpoint") {
  const RateBounds unit(0.0, 1.0);

  // midpoint rule: both endpoints tie exactly; convention reports the upper
  const SupOverRate mid = sup_inefficiency_over_rate(0.5, unit, 10);
  CHECK(mid.argmax_rate == 1.0);
  CHECK(mid.value == inefficiency(0.5, 0.0, 10));
  CHECK(mid.value == inefficiency(0.5, 1.0, 10));

  const SupOverRate low = sup_inefficiency_over_rate(0.3, unit, 10);
  CHECK(low.argmax_rate == 1.0);
  CHECK(low.value == inefficiency(0.3, 1.0, 10));

  const SupOverRate high = sup_inefficiency_over_rate(0.8, unit, 10);
  CHECK(high.argmax_rate == 0.0);

  CHECK_THROWS_AS(sup_inefficiency_over_rate(1.2, unit, 10), std::invalid_argument);
  CHECK_THROWS_AS(sup_inefficiency_over_rate(-0.2, unit, 10), std::invalid_argument);
}

TEST_CASE("asymptotic inefficiency closed form") {
  CHECK(asymptotic_inefficiency(RateBounds(0.0, 1.0)) == 9.0 / 8.0);
  CHECK(asymptotic_inefficiency(RateBounds(0.0, 2.0)) == 4.0 / 3.0);
  CHECK(asymptotic_inefficiency(RateBounds(0.7, 0.7)) == 1.0);
  // large-K midpoint-rule sup approaches it
  const double sup = sup_inefficiency_over_rate(0.5, RateBounds(0.0, 1.0), 1'000'000).value;
  CHECK(std::abs(sup - 9.0 / 8.0) <= 1e-3);
}

TEST_CASE("rate bounds validate") {
  CHECK_THROWS_AS(RateBounds(-0.1, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(RateBounds(2.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(RateBounds(0.0, std::numeric_limits<double>::infinity()),
                  std::invalid_argument);
  CHECK(RateBounds(0.0, 2.0).midpoint() == 1.0);
}

TEST_CASE("exponential-decay inefficiency matches brute force") {
  CHECK(exp_inefficiency(1.3, 1.3, 12) == 1.0);  // matched rate

  // removable singularity at 2x = y: first geometric factor equals K
  CHECK(exp_inefficiency(0.5, 1.0, 6) ==
        doctest::Approx(brute_exp_inefficiency(0.5, 1.0, 6)).epsilon(1e-12));

  CHECK(exp_inefficiency(3.0, 1.0, 5) ==
        doctest::Approx(1.4283749440188203).epsilon(1e-12));

  SplitMix64 rng(17);
  for (int rep = 0; rep < 30; ++rep) {
    const double x = rng.uniform(0.05, 3.0);
    const double y = rng.uniform(0.05, 3.0);
    const std::int64_t K = 2 + static_cast<std::int64_t>(rng.next() % 49);
    const double expect = brute_exp_inefficiency(x, y, K);
    CHECK(exp_inefficiency(x, y, K) == doctest::Approx(expect).epsilon(1e-10));
  }

  CHECK_THROWS_AS(exp_inefficiency(0.0, 1.0, 5), std::invalid_argument);
  CHECK_THROWS_AS(exp_inefficiency(1.0, -1.0, 5), std::invalid_argument);
}

TEST_CASE("last-iterate inefficiency limits") {
  CHECK(last_iterate_inefficiency(std::log(2.0), 100).bound ==
        doctest::Approx(2.0).epsilon(1e-13));
  CHECK(last_iterate_inefficiency(std::log(10.0), 100).bound ==
        doctest::Approx(10.0 / 9.0).epsilon(1e-13));

  // y -> 0: keeping only the last of K estimates loses a factor K
  CHECK(last_iterate_inefficiency(1e-12, 7).value == doctest::Approx(7.0).epsilon(1e-9));

  const LastIterateIneff li = last_iterate_inefficiency(0.8, 5);
  CHECK(li.value <= li.bound);
  CHECK(li.value >= 1.0);
  CHECK_THROWS_AS(last_iterate_inefficiency(0.0, 5), std::invalid_argument);
}

TEST_CASE("half-rule closed form and monotonicity") {
  for (std::int64_t K : {1, 2, 10, 100}) {
    CHECK(halfrule_inefficiency_vs_linear(K) ==
          doctest::Approx(inefficiency(0.5, 1.0, K)).epsilon(1e-13));
  }
  CHECK(halfrule_monotone_up_to(2));
  CHECK(halfrule_monotone_up_to(8));
  CHECK(halfrule_monotone_up_to(10'000));

  // consecutive ratios exceed 1.0038 through K = 7
  double prev = halfrule_inefficiency_vs_linear(1);
  for (std::int64_t K = 2; K <= 8; ++K) {
    const double cur = halfrule_inefficiency_vs_linear(K);
    CHECK(cur / prev > 1.0038);
    prev = cur;
  }

  CHECK(midpoint_rule_monotone_up_to(RateBounds(0.0, 1.0), 1000));
  // observed numerically, no proof claimed
  CHECK(midpoint_rule_monotone_up_to(RateBounds(0.0, 2.0), 1000));
}

TEST_CASE("minimax scan finds the square-root rule") {
  std::vector<double> grid;
  for (int i = 0; i <= 10; ++i) grid.push_back(i / 10.0);
  const MinimaxScanResult five = minimax_scan(5, grid);
  CHECK(five.best_exponent == 0.5);
  CHECK_FALSE(five.degenerate);
  CHECK(five.sup_values.size() == grid.size());

  const std::vector<double> coarse = {0.0, 0.5, 1.0};
  CHECK(minimax_scan(2, coarse).best_exponent == 0.5);

  const MinimaxScanResult one = minimax_scan(1, coarse);
  CHECK(one.degenerate);
  for (double v : one.sup_values) CHECK(v == 1.0);

  CHECK_THROWS_AS(minimax_scan(5, std::vector<double>{}), std::invalid_argument);
  CHECK_THROWS_AS(minimax_scan(5, std::vector<double>{0.5, 1.5}), std::invalid_argument);
}

TEST_CASE("analytic inefficiency agrees with explicit power-law weights") {
  for (double x : {0.0, 0.3, 0.5, 1.0}) {
    for (double y : {0.0, 0.7}) {
      for (std::int64_t K : {2, 20}) {
        std::vector<double> v;
        for (std::int64_t k = 1; k <= K; ++k) v.push_back(std::pow(static_cast<double>(k), -y));
        const std::vector<double> w = make_weights(WeightRule::power_law(x), K);
        const double analytic = inefficiency(x, y, K);
        const double explicit_route = inefficiency_custom(v, w);
        CHECK(std::abs(analytic - explicit_route) <= 1e-12 * analytic);
      }
    }
  }
}

TEST_CASE("rule inefficiency report") {
  const IneffReport report = evaluate_rule_inefficiency(0.5, 1.0, 100);
  CHECK(report.value == inefficiency(0.5, 1.0, 100));
  CHECK(report.value >= 1.0 - 1e-12);
  CHECK(report.stages == 100);
  CHECK(report.rule_exponent == 0.5);
}

TEST_CASE("power-law model evaluates stage variances") {
  const PowerLawModel model{1.0, 2.0};
  CHECK(model.variance_at(1) == 2.0);
  CHECK(model.variance_at(4) == 0.5);
  CHECK_THROWS_AS(model.variance_at(0), std::invalid_argument);
}
