#pragma once

#include <cmath>
#include <span>

namespace estcomb {

// Neumaier-compensated accumulator. Long sums (power sums over up to 1e7
// terms, replication averages) stay accurate to a few ulp regardless of
// term ordering or magnitude spread.
class CompensatedSum {
 public:
  CompensatedSum() = default;
  explicit CompensatedSum(double init) : sum_(init) {}

  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }

  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

double compensated_total(std::span<const double> xs);

struct MeanVar {
  double mean = 0.0;
  double variance = 0.0;  // sample variance, n-1 denominator
};

MeanVar mean_and_variance(std::span<const double> xs);

double pearson_correlation(std::span<const double> a, std::span<const double> b);

}  // namespace estcomb
