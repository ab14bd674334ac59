#include "asn/report.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <set>

namespace asn {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::size_t role_index(Role r) { return r == Role::full ? 0 : 1; }

std::vector<double> finite_only(std::vector<double> v) {
  v.erase(std::remove_if(v.begin(), v.end(),
                         [](double x) { return std::isnan(x); }),
          v.end());
  return v;
}

SummaryRow summarize(std::string variable, std::vector<double> values) {
  values = finite_only(std::move(values));
  SummaryRow row{std::move(variable), values.size(), std::nullopt};
  if (!values.empty()) row.summary = five_number_summary(values);
  return row;
}

// Pairs with a NaN on either side are dropped.
CorrelationRow correlate(std::string x, std::string y, std::string subset,
                         const std::vector<double>& xs,
                         const std::vector<double>& ys) {
  std::vector<double> a, b;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (std::isnan(xs[i]) || std::isnan(ys[i])) continue;
    a.push_back(xs[i]);
    b.push_back(ys[i]);
  }
  CorrelationRow row{std::move(x), std::move(y), std::move(subset), std::nullopt};
  if (a.size() >= 3) row.result = spearman_rho(a, b);
  return row;
}

double pvr_value(const RoleResult& r) {
  return r.pvr.no_comparable_pairs ? kNaN : r.pvr.ratio;
}

}  // namespace

double Tally::pq() const {
  return applications == 0 ? kNaN
                           : static_cast<double>(qualified) /
                                 static_cast<double>(applications);
}

RoundReport analyze_round(const RoundDataset& data) {
  const auto diagnostics = validate_round(data);
  for (const auto& d : diagnostics) {
    if (d.severity == Severity::error) {
      throw Error(Errc::invalid_argument, "invalid round: " + d.to_string());
    }
  }
  const DisciplineRegistry registry(data.registry);
  const MedianTable medians(data.medians);
  const auto& apps = data.applications;

  RoundReport report;

  // Resolved thresholds per application.
  std::vector<const MedianSet*> resolved(apps.size());
  for (std::size_t i = 0; i < apps.size(); ++i) {
    resolved[i] = medians.find(apps[i].discipline, apps[i].role);
  }

  std::map<DisciplineId, std::array<std::vector<std::size_t>, 2>> groups;
  for (std::size_t i = 0; i < apps.size(); ++i) {
    groups[apps[i].discipline.base()][role_index(apps[i].role)].push_back(i);
  }

  // Per discipline.
  for (const auto& [discipline, by_role] : groups) {
    const auto* entry = registry.find(discipline);
    DisciplineRow row;
    row.discipline = discipline;
    row.name = entry->name;
    row.area_acronym = entry->area_acronym;
    row.kind = entry->kind;
    std::vector<ApplicationRecord> pooled;
    for (Role role : kRoles) {
      const auto& idx = by_role[role_index(role)];
      std::vector<ApplicationRecord> subset;
      subset.reserve(idx.size());
      for (auto i : idx) subset.push_back(apps[i]);

      RoleResult& rr = role == Role::full ? row.full : row.associate;
      rr.tally.applications = subset.size();
      rr.tally.qualified = static_cast<std::size_t>(
          std::count_if(subset.begin(), subset.end(),
                        [](const auto& a) { return a.qualified; }));
      rr.rates = conditional_rates(subset, medians);
      rr.pvr = pvr(subset);
      for (const auto& [p, q] : rr.pvr.violating_pairs) {
        report.violations.push_back(PvrViolationRow{
            discipline, role, subset[p].applicant_id, subset[q].applicant_id});
      }
      rr.pvr.violating_pairs.clear();
      rr.pvr.violating_pairs.shrink_to_fit();
      row.total += rr.tally;
      pooled.insert(pooled.end(), subset.begin(), subset.end());
    }
    row.pooled = conditional_rates(pooled, medians);
    report.disciplines.push_back(std::move(row));
  }

  // Per area and overall.
  std::map<int, AreaRow> areas;
  report.grand_total.acronym = "Total";
  for (const auto& d : report.disciplines) {
    auto& a = areas[d.discipline.area];
    a.area = d.discipline.area;
    a.acronym = d.area_acronym;
    for (AreaRow* target : {&a, &report.grand_total}) {
      target->full += d.full.tally;
      target->associate += d.associate.tally;
      target->total += d.total;
    }
  }
  for (auto& [_, a] : areas) report.areas.push_back(a);

  Overview& ov = report.overview;
  ov.total = report.grand_total.total;
  ov.full = report.grand_total.full;
  ov.associate = report.grand_total.associate;
  ov.disciplines = report.disciplines.size();
  for (const auto& d : report.disciplines) {
    (d.kind == IndicatorKind::bibliometric ? ov.bibliometric : ov.non_bibliometric) +=
        d.total;
    if (d.pooled.n_under > 0 && d.pooled.qualified_under == 0) {
      ++ov.no_underqualified_disciplines;
    }
  }
  {
    std::set<std::pair<std::string, std::string>> names;
    std::array<std::vector<ApplicationRecord>, 2> by_role;
    for (const auto& a : apps) {
      names.emplace(a.last_name, a.first_name);
      by_role[role_index(a.role)].push_back(a);
    }
    ov.distinct_names = names.size();
    for (Role r : kRoles) {
      ov.rates_by_role[role_index(r)] = conditional_rates(by_role[role_index(r)], medians);
    }
    ov.rates_all = conditional_rates(apps, medians);
  }

  // Distributions over disciplines.
  {
    std::vector<double> na, naf, naa, pq, pqf, pqa, pqo, pqu, pqof, pqoa, pquf,
        pqua, pvrf, pvra;
    for (const auto& d : report.disciplines) {
      na.push_back(static_cast<double>(d.total.applications));
      naf.push_back(static_cast<double>(d.full.tally.applications));
      naa.push_back(static_cast<double>(d.associate.tally.applications));
      pq.push_back(d.total.pq());
      pqf.push_back(d.full.tally.pq());
      pqa.push_back(d.associate.tally.pq());
      pqo.push_back(d.pooled.pqo);
      pqu.push_back(d.pooled.pqu);
      pqof.push_back(d.full.rates.pqo);
      pqoa.push_back(d.associate.rates.pqo);
      pquf.push_back(d.full.rates.pqu);
      pqua.push_back(d.associate.rates.pqu);
      pvrf.push_back(pvr_value(d.full));
      pvra.push_back(pvr_value(d.associate));
    }
    auto& s = report.summaries;
    s.push_back(summarize("NA", na));
    s.push_back(summarize("NA.F", naf));
    s.push_back(summarize("NA.A", naa));
    s.push_back(summarize("PQ", pq));
    s.push_back(summarize("PQ.F", pqf));
    s.push_back(summarize("PQ.A", pqa));
    s.push_back(summarize("PQO", pqo));
    s.push_back(summarize("PQU", pqu));
    s.push_back(summarize("PQO.F", pqof));
    s.push_back(summarize("PQO.A", pqoa));
    s.push_back(summarize("PQU.F", pquf));
    s.push_back(summarize("PQU.A", pqua));
    s.push_back(summarize("PVR.F", pvrf));
    s.push_back(summarize("PVR.A", pvra));

    auto& c = report.correlations;
    c.push_back(correlate("NA.F", "NA.A", "all", naf, naa));
    c.push_back(correlate("PQ.F", "PQ.A", "all", pqf, pqa));
  }

  // Median sets.
  {
    auto& ma = report.median_anomalies;
    ma.census = zero_median_census(data.medians);
    std::set<DisciplineId> keys;
    for (const auto& m : medians.sets()) keys.insert(m.discipline);
    for (const auto& key : keys) {
      const auto* f = medians.find(key, Role::full);
      const auto* a = medians.find(key, Role::associate);
      if (f == nullptr || a == nullptr) continue;
      MedianPairRow row{key, f->kind, *f, *a, tag_median_pair(*f, *a)};
      for (std::size_t i = 0; i < 3; ++i) {
        if (f->values()[i] < a->values()[i]) ++ma.component_violations[i];
      }
      if (row.tag == MedianTag::star) {
        ++(row.kind == IndicatorKind::bibliometric ? ma.star_bibliometric
                                                   : ma.star_non_bibliometric);
      }
      ma.pairs.push_back(std::move(row));
    }
  }

  // Cross-role correlations split by indicator kind.
  for (IndicatorKind kind : {IndicatorKind::bibliometric, IndicatorKind::non_bibliometric}) {
    const std::string subset(kind_code(kind));
    std::array<std::vector<double>, 3> mf, mass;
    for (const auto& p : report.median_anomalies.pairs) {
      if (p.kind != kind) continue;
      for (std::size_t i = 0; i < 3; ++i) {
        mf[i].push_back(p.full.values()[i]);
        mass[i].push_back(p.associate.values()[i]);
      }
    }
    for (std::size_t i = 0; i < 3; ++i) {
      const std::string n = std::to_string(i + 1);
      report.correlations.push_back(
          correlate("M" + n + ".F", "M" + n + ".A", subset, mf[i], mass[i]));
    }
    std::vector<double> pqof, pqoa, pquf, pqua, pvrf, pvra;
    for (const auto& d : report.disciplines) {
      if (d.kind != kind) continue;
      pqof.push_back(d.full.rates.pqo);
      pqoa.push_back(d.associate.rates.pqo);
      pquf.push_back(d.full.rates.pqu);
      pqua.push_back(d.associate.rates.pqu);
      pvrf.push_back(pvr_value(d.full));
      pvra.push_back(pvr_value(d.associate));
    }
    report.correlations.push_back(correlate("PQO.F", "PQO.A", subset, pqof, pqoa));
    report.correlations.push_back(correlate("PQU.F", "PQU.A", subset, pquf, pqua));
    report.correlations.push_back(correlate("PVR.F", "PVR.A", subset, pvrf, pvra));
  }

  // Pairwise indicator correlations among applicants.
  for (Role role : kRoles) {
    for (IndicatorKind kind :
         {IndicatorKind::bibliometric, IndicatorKind::non_bibliometric}) {
      std::array<std::vector<double>, 3> cols;
      for (const auto& a : apps) {
        if (a.role != role || a.indicators.kind != kind) continue;
        for (std::size_t i = 0; i < 3; ++i) cols[i].push_back(a.indicators[i]);
      }
      const std::string subset =
          std::string(role_suffix(role)) + "/" + std::string(kind_code(kind));
      for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = i + 1; j < 3; ++j) {
          report.indicator_correlations.push_back(
              correlate("ind" + std::to_string(i + 1), "ind" + std::to_string(j + 1),
                        subset, cols[i], cols[j]));
        }
      }
    }
  }

  // Minimum indicator among qualified applicants, per median set.
  {
    std::map<const MedianSet*, std::vector<std::size_t>> by_set;
    for (std::size_t i = 0; i < apps.size(); ++i) by_set[resolved[i]].push_back(i);
    std::vector<const MedianSet*> order;
    for (const auto& [set, _] : by_set) order.push_back(set);
    std::sort(order.begin(), order.end(), [](const MedianSet* a, const MedianSet* b) {
      return std::tie(a->discipline, a->role) < std::tie(b->discipline, b->role);
    });
    for (const auto* set : order) {
      MinQualifiedRow row;
      row.discipline = set->discipline;
      row.role = set->role;
      row.kind = set->kind;
      row.median = set->values();
      row.min_indicator.fill(std::numeric_limits<double>::infinity());
      for (auto i : by_set[set]) {
        if (!apps[i].qualified) continue;
        ++row.qualified;
        for (std::size_t k = 0; k < 3; ++k) {
          row.min_indicator[k] = std::min(row.min_indicator[k], apps[i].indicators[k]);
        }
      }
      for (std::size_t k = 0; k < 3; ++k) {
        if (row.qualified == 0) {
          row.min_indicator[k] = kNaN;
        } else if (row.min_indicator[k] > row.median[k]) {
          row.above_median[k] = true;
          ++report.min_above_median_counts[role_index(row.role)][k];
        }
      }
      report.min_qualified.push_back(row);
    }
  }

  // Over/under-median qualification by role and kind.
  {
    // [role][class][kind]
    std::array<std::array<std::array<Tally, 2>, 2>, 2> t{};
    for (std::size_t i = 0; i < apps.size(); ++i) {
      const auto& a = apps[i];
      const auto cls = classify(a.indicators, *resolved[i]);
      auto& cell = t[role_index(a.role)][cls == MedianClass::over_median ? 0 : 1]
                    [a.indicators.kind == IndicatorKind::bibliometric ? 0 : 1];
      ++cell.applications;
      if (a.qualified) ++cell.qualified;
    }
    for (Role role : kRoles) {
      for (MedianClass cls : {MedianClass::over_median, MedianClass::under_median}) {
        const auto& cells = t[role_index(role)][cls == MedianClass::over_median ? 0 : 1];
        ClassRateRow row{role, cls, cells[0], cells[1], std::nullopt};
        if (cells[0].applications > 0 && cells[1].applications > 0) {
          row.difference = proportion_diff_ci(cells[0].qualified, cells[0].applications,
                                              cells[1].qualified, cells[1].applications);
        }
        report.class_rates.push_back(row);
      }
    }
  }

  // Extremes by PQ.
  {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < report.disciplines.size(); ++i) {
      if (!std::isnan(report.disciplines[i].total.pq())) idx.push_back(i);
    }
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
      const auto& da = report.disciplines[a];
      const auto& db = report.disciplines[b];
      if (da.total.pq() != db.total.pq()) return da.total.pq() < db.total.pq();
      return da.discipline < db.discipline;
    });
    const std::size_t k = std::min<std::size_t>(5, idx.size());
    report.lowest_pq.assign(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(k));
    report.highest_pq.assign(idx.end() - static_cast<std::ptrdiff_t>(k), idx.end());
  }

  // Per-application classification.
  {
    std::vector<std::size_t> order(apps.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return std::tie(apps[a].discipline, apps[a].role) <
             std::tie(apps[b].discipline, apps[b].role);
    });
    report.applications.reserve(apps.size());
    for (auto i : order) {
      const auto& a = apps[i];
      const auto& m = *resolved[i];
      report.applications.push_back(ApplicationRow{
          a.applicant_id, a.discipline, a.role, a.indicators, m,
          exceeds_count(a.indicators, m), classify(a.indicators, m), a.qualified});
    }
  }
  return report;
}

}  // namespace asn
