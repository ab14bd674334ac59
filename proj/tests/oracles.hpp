#pragma once

// Reference computations used to cross-check the library. They follow the
// definitions literally and favour obviousness over speed.

#include <cstddef>
#include <random>
#include <string>
#include <vector>

#include "asn/dominance.hpp"
#include "asn/indicators.hpp"

namespace oracle {

// Largest h in [0, n] such that at least h scores are >= h.
inline int brute_h(const std::vector<double>& scores) {
  int best = 0;
  for (int h = 0; h <= static_cast<int>(scores.size()); ++h) {
    int at_least = 0;
    for (double s : scores) {
      if (s >= h) ++at_least;
    }
    if (at_least >= h) best = h;
  }
  return best;
}

inline int brute_hc(const std::vector<asn::Publication>& pubs, int t) {
  std::vector<double> scores;
  for (const auto& p : pubs) {
    const double c = p.citations_source_a > p.citations_source_b ? p.citations_source_a
                                                                 : p.citations_source_b;
    scores.push_back(4.0 * c / (t - p.year + 1));
  }
  return brute_h(scores);
}

inline bool dominates(const asn::IndicatorVector& a, const asn::IndicatorVector& b) {
  bool strict = false;
  for (std::size_t i = 0; i < 3; ++i) {
    if (a[i] < b[i]) return false;
    if (a[i] > b[i]) strict = true;
  }
  return strict;
}

struct PvrCount {
  std::size_t violations = 0;
  std::size_t dominating = 0;
};

inline PvrCount enumerate_pvr(const std::vector<asn::ApplicationRecord>& apps) {
  PvrCount c;
  for (const auto& p : apps) {
    for (const auto& q : apps) {
      if (&p == &q || !dominates(p.indicators, q.indicators)) continue;
      ++c.dominating;
      if (!p.qualified && q.qualified) ++c.violations;
    }
  }
  return c;
}

inline std::vector<asn::Publication> random_publications(std::mt19937_64& rng,
                                                         std::size_t max_count = 50) {
  std::uniform_int_distribution<std::size_t> count(0, max_count);
  std::uniform_int_distribution<int> year(1990, 2012);
  std::uniform_int_distribution<std::uint32_t> cites(0, 500);
  std::uniform_int_distribution<int> kind(0, 4);
  std::vector<asn::Publication> pubs(count(rng));
  for (std::size_t i = 0; i < pubs.size(); ++i) {
    pubs[i].id = "p" + std::to_string(i);
    pubs[i].year = year(rng);
    pubs[i].kind = static_cast<asn::PublicationKind>(kind(rng));
    pubs[i].citations_source_a = cites(rng);
    pubs[i].citations_source_b = cites(rng);
  }
  return pubs;
}

// Small integer-valued indicators so that dominance and ties are common.
inline std::vector<asn::ApplicationRecord> random_population(std::mt19937_64& rng,
                                                             std::size_t n, int max_value,
                                                             double p_qualified) {
  std::uniform_int_distribution<int> v(0, max_value);
  std::bernoulli_distribution q(p_qualified);
  std::vector<asn::ApplicationRecord> apps(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto& a = apps[i];
    a.applicant_id = "a" + std::to_string(i);
    a.discipline = asn::DisciplineId::parse("01/A1");
    a.role = asn::Role::full;
    a.indicators = {static_cast<double>(v(rng)), static_cast<double>(v(rng)),
                    static_cast<double>(v(rng)), asn::IndicatorKind::bibliometric};
    a.qualified = q(rng);
  }
  return apps;
}

}  // namespace oracle
