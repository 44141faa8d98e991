#include "estcomb/stats.hpp"

#include <stdexcept>

namespace estcomb {

double compensated_total(std::span<const double> xs) {
  CompensatedSum s;
  for (double x : xs) s.add(x);
  return s.value();
}

MeanVar mean_and_variance(std::span<const double> xs) {
  const std::size_t n = xs.size();
  if (n == 0) throw std::invalid_argument("mean_and_variance: empty sample");
  const double mean = compensated_total(xs) / static_cast<double>(n);
  if (n == 1) return {mean, 0.0};
  CompensatedSum ss;
  for (double x : xs) {
    const double d = x - mean;
    ss.add(d * d);
  }
  return {mean, ss.value() / static_cast<double>(n - 1)};
}

double pearson_correlation(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size() || a.size() < 2) {
    throw std::invalid_argument("pearson_correlation: need two equal-length samples");
  }
  const double ma = compensated_total(a) / static_cast<double>(a.size());
  const double mb = compensated_total(b) / static_cast<double>(b.size());
  CompensatedSum sab, saa, sbb;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double da = a[i] - ma;
    const double db = b[i] - mb;
    sab.add(da * db);
    saa.add(da * da);
    sbb.add(db * db);
  }
  const double denom = std::sqrt(saa.value() * sbb.value());
  if (denom == 0.0) return 0.0;
  return sab.value() / denom;
}

}  // namespace estcomb
