#include <gtest/gtest.h>

#include <random>

#include "asn/dominance.hpp"
#include "asn/pareto.hpp"
#include "oracles.hpp"

using namespace asn;

namespace {

IndicatorVector bv(double a, double b, double c) {
  return make_indicators(a, b, c, IndicatorKind::bibliometric);
}

ApplicationRecord app(std::string id, IndicatorVector v, bool qualified,
                      std::string_view code = "01/A1", Role role = Role::full) {
  ApplicationRecord a;
  a.applicant_id = id;
  a.last_name = id;
  a.first_name = id;
  a.discipline = DisciplineId::parse(code);
  a.role = role;
  a.indicators = v;
  a.qualified = qualified;
  return a;
}

}  // namespace

TEST(ParetoDominates, Examples) {
  EXPECT_TRUE(pareto_dominates(bv(11, 8, 15), bv(10, 8, 13)));
  EXPECT_FALSE(pareto_dominates(bv(10, 8, 13), bv(11, 8, 15)));
  EXPECT_FALSE(pareto_dominates(bv(4, 4, 4), bv(4, 4, 4)));
  EXPECT_FALSE(pareto_dominates(bv(2, 1, 1), bv(1, 2, 1)));
  EXPECT_FALSE(pareto_dominates(bv(1, 2, 1), bv(2, 1, 1)));
  EXPECT_THROW((void)pareto_dominates(bv(1, 1, 1), make_indicators(0, 0, 0,
                                                                   IndicatorKind::non_bibliometric)),
               Error);
}

TEST(ParetoDominates, OrderProperties) {
  std::mt19937_64 rng(31);
  const auto pop = oracle::random_population(rng, 40, 3, 0.5);
  for (const auto& a : pop) {
    EXPECT_FALSE(pareto_dominates(a.indicators, a.indicators));
    for (const auto& b : pop) {
      const bool ab = pareto_dominates(a.indicators, b.indicators);
      EXPECT_EQ(ab, oracle::dominates(a.indicators, b.indicators));
      if (ab) EXPECT_FALSE(pareto_dominates(b.indicators, a.indicators));
      for (const auto& c : pop) {
        if (ab && pareto_dominates(b.indicators, c.indicators)) {
          EXPECT_TRUE(pareto_dominates(a.indicators, c.indicators));
        }
      }
    }
  }
}

TEST(ParetoDominates, SpanOverloadAgrees) {
  const std::array<double, 3> x{11, 8, 15}, y{10, 8, 13};
  EXPECT_TRUE(dominates(x, y));
  EXPECT_FALSE(dominates(y, x));
  EXPECT_FALSE(dominates(x, x));
}

TEST(Pvr, OutcomeCombinations) {
  // Alice dominates Bob; only "Alice denied, Bob qualified" is a violation.
  for (bool alice_q : {false, true}) {
    for (bool bob_q : {false, true}) {
      const std::vector apps{app("alice", bv(11, 8, 15), alice_q),
                             app("bob", bv(10, 8, 13), bob_q)};
      const auto r = pvr(apps);
      EXPECT_EQ(r.dominating_pairs, 1u);
      EXPECT_FALSE(r.no_comparable_pairs);
      const bool violation = !alice_q && bob_q;
      EXPECT_EQ(r.violations, violation ? 1u : 0u);
      EXPECT_EQ(r.ratio, violation ? 1.0 : 0.0);
      if (violation) {
        ASSERT_EQ(r.violating_pairs.size(), 1u);
        EXPECT_EQ(r.violating_pairs[0], (std::pair<std::size_t, std::size_t>{0, 1}));
      }
    }
  }
}

TEST(Pvr, ThreeApplicants) {
  const std::vector apps{app("A", bv(3, 3, 3), true), app("B", bv(2, 2, 2), false),
                         app("C", bv(1, 1, 1), true)};
  const auto r = pvr(apps);
  EXPECT_EQ(r.dominating_pairs, 3u);
  EXPECT_EQ(r.violations, 1u);
  EXPECT_NEAR(r.ratio, 1.0 / 3.0, 1e-12);
}

TEST(Pvr, NoComparablePairs) {
  const auto empty = pvr(std::vector<ApplicationRecord>{});
  EXPECT_EQ(empty.ratio, 0.0);
  EXPECT_TRUE(empty.no_comparable_pairs);
  const std::vector one{app("A", bv(1, 1, 1), true)};
  EXPECT_TRUE(pvr(one).no_comparable_pairs);
  const std::vector clones{app("A", bv(1, 1, 1), false), app("B", bv(1, 1, 1), true)};
  const auto r = pvr(clones);
  EXPECT_TRUE(r.no_comparable_pairs);
  EXPECT_EQ(r.violations, 0u);
  const std::vector incomparable{app("A", bv(2, 1, 1), false), app("B", bv(1, 2, 1), true)};
  EXPECT_TRUE(pvr(incomparable).no_comparable_pairs);
}

TEST(Pvr, RejectsMixedGroups) {
  const std::vector roles{app("A", bv(1, 1, 1), true),
                          app("B", bv(1, 1, 1), true, "01/A1", Role::associate)};
  EXPECT_THROW((void)pvr(roles), Error);
  const std::vector disciplines{app("A", bv(1, 1, 1), true), app("B", bv(1, 1, 1), true, "01/A2")};
  EXPECT_THROW((void)pvr(disciplines), Error);
}

TEST(Pvr, MatchesEnumerationOracle) {
  std::mt19937_64 rng(41);
  std::uniform_int_distribution<std::size_t> n(0, 120);
  for (int i = 0; i < 150; ++i) {
    const auto pop = oracle::random_population(rng, n(rng), 4, 0.4);
    const auto r = pvr(pop);
    const auto o = oracle::enumerate_pvr(pop);
    ASSERT_EQ(r.violations, o.violations);
    ASSERT_EQ(r.dominating_pairs, o.dominating);
    ASSERT_EQ(r.violating_pairs.size(), o.violations);
    EXPECT_GE(r.ratio, 0.0);
    EXPECT_LE(r.ratio, 1.0);
    for (const auto& [p, q] : r.violating_pairs) {
      EXPECT_TRUE(oracle::dominates(pop[p].indicators, pop[q].indicators));
      EXPECT_FALSE(pop[p].qualified);
      EXPECT_TRUE(pop[q].qualified);
    }
    if (o.dominating > 0) {
      EXPECT_EQ(r.ratio, static_cast<double>(o.violations) / static_cast<double>(o.dominating));
    }
  }
}

TEST(Pvr, MonotoneRulesNeverViolate) {
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> w(0, 1);
  for (int rule = 0; rule < 40; ++rule) {
    const double w1 = w(rng), w2 = w(rng), w3 = w(rng), cut = 6 * w(rng);
    auto pop = oracle::random_population(rng, 80, 4, 0.5);
    for (auto& a : pop) {
      a.qualified = w1 * a.indicators.ind1 + w2 * a.indicators.ind2 + w3 * a.indicators.ind3 > cut;
    }
    EXPECT_EQ(pvr(pop).violations, 0u);
  }
}

TEST(Pvr, DenyingADominatedQualifiedApplicantRemovesItsViolations) {
  std::mt19937_64 rng(47);
  for (int i = 0; i < 50; ++i) {
    auto pop = oracle::random_population(rng, 60, 3, 0.5);
    const auto before = pvr(pop);
    if (before.violations == 0) continue;
    const auto q = before.violating_pairs.front().second;
    pop[q].qualified = false;
    const auto after = pvr(pop);
    EXPECT_EQ(after.violations, oracle::enumerate_pvr(pop).violations);
    EXPECT_LT(after.violations, before.violations + pop.size());
  }
}
