#include "asn/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <boost/math/distributions/students_t.hpp>

namespace asn {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

ConditionalRates finish(ConditionalRates r) {
  r.pq = r.n_total == 0 ? kNaN
                        : static_cast<double>(r.qualified) /
                              static_cast<double>(r.n_total);
  r.pqo = r.n_over == 0 ? kNaN
                        : static_cast<double>(r.qualified_over) /
                              static_cast<double>(r.n_over);
  r.pqu = r.n_under == 0 ? kNaN
                         : static_cast<double>(r.qualified_under) /
                               static_cast<double>(r.n_under);
  return r;
}

void tally(ConditionalRates& r, const ApplicationRecord& a,
           const MedianSet& m) {
  ++r.n_total;
  if (a.qualified) ++r.qualified;
  if (classify(a.indicators, m) == MedianClass::over_median) {
    ++r.n_over;
    if (a.qualified) ++r.qualified_over;
  } else {
    ++r.n_under;
    if (a.qualified) ++r.qualified_under;
  }
}

}  // namespace

double interpolated_quantile(std::span<const double> sorted, double p) {
  if (sorted.empty()) throw Error(Errc::no_population, "no population");
  const double h = static_cast<double>(sorted.size() - 1) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = h - static_cast<double>(lo);
  if (frac == 0.0) return sorted[lo];
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

FiveNumberSummary five_number_summary(std::span<const double> values) {
  if (values.empty()) throw Error(Errc::no_population, "no population");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  return FiveNumberSummary{
      sorted.front(),
      interpolated_quantile(sorted, 0.25),
      compute_median(sorted),
      interpolated_quantile(sorted, 0.75),
      sorted.back(),
  };
}

std::vector<double> average_ranks(std::span<const double> values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return values[a] < values[b];
  });
  std::vector<double> ranks(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
    // positions i..j (0-based) share ranks i+1..j+1
    const double rank = (static_cast<double>(i + j) + 2.0) / 2.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
    i = j + 1;
  }
  return ranks;
}

CorrelationResult spearman_rho(std::span<const double> x,
                               std::span<const double> y) {
  if (x.size() != y.size()) {
    throw Error(Errc::length_mismatch, "paired samples differ in length");
  }
  if (x.size() < 3) {
    throw Error(Errc::insufficient_data,
                "rank correlation needs at least 3 pairs");
  }
  const std::size_t n = x.size();
  const auto rx = average_ranks(x);
  const auto ry = average_ranks(y);
  const double mean = (static_cast<double>(n) + 1.0) / 2.0;

  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = rx[i] - mean;
    const double dy = ry[i] - mean;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }

  CorrelationResult r;
  r.n = n;
  if (sxx == 0.0 || syy == 0.0) {
    r.rho = r.ci_low = r.ci_high = r.p_value_zero_corr = kNaN;
    return r;
  }
  r.rho = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);

  if (n >= 4) {
    const double z = std::atanh(r.rho);
    const double half = kZ975 / std::sqrt(static_cast<double>(n) - 3.0);
    r.ci_low = std::tanh(z - half);
    r.ci_high = std::tanh(z + half);
  } else {
    r.ci_low = r.ci_high = kNaN;
  }

  const double df = static_cast<double>(n) - 2.0;
  if (std::abs(r.rho) == 1.0) {
    r.p_value_zero_corr = 0.0;
  } else {
    const double t = r.rho * std::sqrt(df / (1.0 - r.rho * r.rho));
    const boost::math::students_t dist(df);
    r.p_value_zero_corr =
        std::min(1.0, 2.0 * boost::math::cdf(boost::math::complement(
                                 dist, std::abs(t))));
  }
  return r;
}

ConditionalRates conditional_rates(std::span<const ApplicationRecord> apps,
                                   const MedianSet& m) {
  ConditionalRates r;
  for (const auto& a : apps) {
    if (!a.discipline.same_base(m.discipline) ||
        (m.discipline.sub_discipline &&
         a.discipline.sub_discipline != m.discipline.sub_discipline)) {
      throw Error(Errc::discipline_mismatch,
                  "application for " + a.discipline.label() +
                      " thresholded by " + m.discipline.label());
    }
    if (a.role != m.role) {
      throw Error(Errc::role_mismatch, "application role differs from median set");
    }
    tally(r, a, m);
  }
  return finish(r);
}

ConditionalRates conditional_rates(std::span<const ApplicationRecord> apps,
                                   const MedianTable& medians) {
  ConditionalRates r;
  for (const auto& a : apps) {
    const auto* m = medians.find(a.discipline, a.role);
    if (m == nullptr) {
      throw Error(Errc::unresolved_reference,
                  "no median set for " + a.discipline.label() + " role " +
                      std::to_string(role_code(a.role)));
    }
    tally(r, a, *m);
  }
  return finish(r);
}

Interval proportion_diff_ci(std::size_t k1, std::size_t n1, std::size_t k2,
                            std::size_t n2) {
  if (n1 == 0 || n2 == 0 || k1 > n1 || k2 > n2) {
    throw Error(Errc::invalid_counts,
                "proportion counts require 0 <= k <= n and n >= 1");
  }
  const double p1 = static_cast<double>(k1) / static_cast<double>(n1);
  const double p2 = static_cast<double>(k2) / static_cast<double>(n2);
  const double se = std::sqrt(p1 * (1.0 - p1) / static_cast<double>(n1) +
                              p2 * (1.0 - p2) / static_cast<double>(n2));
  const double d = p1 - p2;
  return Interval{d, std::clamp(d - kZ975 * se, -1.0, 1.0),
                  std::clamp(d + kZ975 * se, -1.0, 1.0)};
}

}  // namespace asn
