#pragma once

// Descriptive statistics for a qualification round: five-number summaries,
// rank correlation, conditional qualification rates, and intervals for a
// difference of two proportions.

#include <cstddef>
#include <span>
#include <vector>

#include "asn/dominance.hpp"
#include "asn/thresholds.hpp"

namespace asn {

struct FiveNumberSummary {
  double min = 0.0;
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
  double max = 0.0;
};

// Sample quantile with linear interpolation between order statistics at
// position 1 + (n - 1) p (1-based). `sorted` must be ascending and nonempty.
double interpolated_quantile(std::span<const double> sorted, double p);

// Throws Errc::no_population when empty.
FiveNumberSummary five_number_summary(std::span<const double> values);

struct CorrelationResult {
  double rho = 0.0;
  // Fisher-z 95% interval; NaN when n < 4 or rho is undefined.
  double ci_low = 0.0;
  double ci_high = 0.0;
  std::size_t n = 0;
  // Two-sided p-value for rho = 0 from the t approximation with n - 2 df.
  double p_value_zero_corr = 1.0;
};

// Average ranks (1-based); ties share the mean of the ranks they span.
std::vector<double> average_ranks(std::span<const double> values);

// Spearman's rho: product-moment correlation of the average ranks. A
// constant sample has no defined rho; every field but n is then NaN.
// Throws Errc::length_mismatch or Errc::insufficient_data (n < 3).
CorrelationResult spearman_rho(std::span<const double> x,
                               std::span<const double> y);

struct ConditionalRates {
  double pq = 0.0;
  double pqo = 0.0;  // NaN when there are no over-median applicants
  double pqu = 0.0;  // NaN when there are no under-median applicants
  std::size_t n_total = 0;
  std::size_t n_over = 0;
  std::size_t n_under = 0;
  std::size_t qualified = 0;
  std::size_t qualified_over = 0;
  std::size_t qualified_under = 0;
};

// Fractions qualified overall, among over-median, and among under-median
// applicants of one (discipline, role) thresholded by m.
ConditionalRates conditional_rates(std::span<const ApplicationRecord> apps,
                                   const MedianSet& m);

// Same, each applicant resolved against its most specific median set.
// Throws Errc::unresolved_reference when a set is missing.
ConditionalRates conditional_rates(std::span<const ApplicationRecord> apps,
                                   const MedianTable& medians);

struct Interval {
  double estimate = 0.0;
  double low = 0.0;
  double high = 0.0;
};

// Unpooled Wald 95% interval for k1/n1 - k2/n2, clamped to [-1, 1].
Interval proportion_diff_ci(std::size_t k1, std::size_t n1, std::size_t k2,
                            std::size_t n2);

inline constexpr double kZ975 = 1.959963984540054;

}  // namespace asn
