#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "asn/csv.hpp"
#include "asn/report.hpp"

namespace asn {

namespace {

using Row = std::vector<Cell>;

Cell num(double v) { return v; }
Cell cnt(std::size_t v) { return static_cast<long long>(v); }
Cell str(std::string_view s) { return std::string(s); }

std::string area_code(int area) {
  std::string s = std::to_string(area);
  return area < 10 ? "0" + s : s;
}

std::string sub_of(const DisciplineId& d) {
  return d.sub_discipline.value_or("");
}

std::string class_name(MedianClass c) {
  return c == MedianClass::over_median ? "over" : "under";
}

void append_tally(Row& row, const Tally& t) {
  row.push_back(cnt(t.applications));
  row.push_back(cnt(t.qualified));
  row.push_back(num(t.pq()));
}

void append_rates(Row& row, const ConditionalRates& r) {
  row.push_back(cnt(r.n_over));
  row.push_back(cnt(r.qualified_over));
  row.push_back(num(r.pqo));
  row.push_back(cnt(r.n_under));
  row.push_back(cnt(r.qualified_under));
  row.push_back(num(r.pqu));
}

Table overview_table(const RoundReport& r) {
  Table t{"overview", {"metric", "value"}, {}};
  const auto& o = r.overview;
  auto add = [&](std::string_view k, Cell v) { t.rows.push_back({str(k), std::move(v)}); };
  add("applications", cnt(o.total.applications));
  add("qualified", cnt(o.total.qualified));
  add("pq", num(o.total.pq()));
  add("applications_full", cnt(o.full.applications));
  add("qualified_full", cnt(o.full.qualified));
  add("applications_associate", cnt(o.associate.applications));
  add("qualified_associate", cnt(o.associate.qualified));
  add("applications_bibliometric", cnt(o.bibliometric.applications));
  add("qualified_bibliometric", cnt(o.bibliometric.qualified));
  add("applications_non_bibliometric", cnt(o.non_bibliometric.applications));
  add("qualified_non_bibliometric", cnt(o.non_bibliometric.qualified));
  add("distinct_names", cnt(o.distinct_names));
  add("disciplines", cnt(o.disciplines));
  add("pqo", num(o.rates_all.pqo));
  add("pqu", num(o.rates_all.pqu));
  for (Role role : kRoles) {
    const auto& rr = o.rates_by_role[role == Role::full ? 0 : 1];
    const std::string s(role_suffix(role));
    add("over_median." + s, cnt(rr.n_over));
    add("under_median." + s, cnt(rr.n_under));
    add("pqo." + s, num(rr.pqo));
    add("pqu." + s, num(rr.pqu));
  }
  add("disciplines_without_underqualified", cnt(o.no_underqualified_disciplines));
  return t;
}

Table areas_table(const RoundReport& r) {
  Table t{"areas",
          {"area", "acronym", "applications.F", "qualified.F", "pq.F", "applications.A",
           "qualified.A", "pq.A", "applications", "qualified", "pq"},
          {}};
  auto add = [&](const AreaRow& a, std::string code) {
    Row row{str(code), str(a.acronym)};
    append_tally(row, a.full);
    append_tally(row, a.associate);
    append_tally(row, a.total);
    t.rows.push_back(std::move(row));
  };
  for (const auto& a : r.areas) add(a, area_code(a.area));
  add(r.grand_total, "");
  return t;
}

Table disciplines_table(const RoundReport& r) {
  Table t{"disciplines", {"discipline", "name", "area", "area_acronym", "kind"}, {}};
  for (std::string s : {"F", "A"}) {
    for (std::string c : {"applications", "qualified", "pq", "over", "qualified_over",
                          "pqo", "under", "qualified_under", "pqu", "pvr", "dominating_pairs",
                          "violations", "no_comparable_pairs"}) {
      t.columns.push_back(c + "." + s);
    }
  }
  for (std::string c : {"applications", "qualified", "pq", "over", "qualified_over", "pqo",
                        "under", "qualified_under", "pqu"}) {
    t.columns.push_back(c);
  }
  for (const auto& d : r.disciplines) {
    Row row{str(d.discipline.code()), str(d.name), str(area_code(d.discipline.area)),
            str(d.area_acronym), str(kind_code(d.kind))};
    for (Role role : kRoles) {
      const auto& rr = d.role(role);
      append_tally(row, rr.tally);
      append_rates(row, rr.rates);
      row.push_back(num(rr.pvr.ratio));
      row.push_back(cnt(rr.pvr.dominating_pairs));
      row.push_back(cnt(rr.pvr.violations));
      row.push_back(rr.pvr.no_comparable_pairs);
    }
    append_tally(row, d.total);
    append_rates(row, d.pooled);
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table summaries_table(const RoundReport& r) {
  Table t{"summaries", {"variable", "n", "min", "q1", "median", "q3", "max"}, {}};
  for (const auto& s : r.summaries) {
    Row row{str(s.variable), cnt(s.n)};
    if (s.summary) {
      for (double v : {s.summary->min, s.summary->q1, s.summary->median, s.summary->q3,
                       s.summary->max}) {
        row.push_back(num(v));
      }
    } else {
      for (int i = 0; i < 5; ++i) row.push_back(num(std::nan("")));
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table correlation_table(std::string name, const std::vector<CorrelationRow>& rows) {
  Table t{std::move(name),
          {"x", "y", "subset", "n", "rho", "ci_low", "ci_high", "p_value"},
          {}};
  const double nan = std::nan("");
  for (const auto& c : rows) {
    Row row{str(c.x), str(c.y), str(c.subset)};
    if (c.result) {
      row.push_back(cnt(c.result->n));
      row.push_back(num(c.result->rho));
      row.push_back(num(c.result->ci_low));
      row.push_back(num(c.result->ci_high));
      row.push_back(num(c.result->p_value_zero_corr));
    } else {
      row.push_back(cnt(0));
      for (int i = 0; i < 4; ++i) row.push_back(num(nan));
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table median_pairs_table(const RoundReport& r) {
  Table t{"median_pairs",
          {"discipline", "sub_discipline", "kind", "m1.F", "m2.F", "m3.F", "m1.A", "m2.A",
           "m3.A", "tag"},
          {}};
  for (const auto& p : r.median_anomalies.pairs) {
    Row row{str(p.discipline.code()), str(sub_of(p.discipline)), str(kind_code(p.kind))};
    for (double v : p.full.values()) row.push_back(num(v));
    for (double v : p.associate.values()) row.push_back(num(v));
    row.push_back(str(to_string(p.tag)));
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table median_anomalies_table(const RoundReport& r) {
  const auto& m = r.median_anomalies;
  Table t{"median_anomalies", {"metric", "value"}, {}};
  auto add = [&](std::string_view k, long long v) { t.rows.push_back({str(k), v}); };
  add("full_one_zero", m.census.full_one_zero);
  add("full_two_zero", m.census.full_two_zero);
  add("associate_one_zero", m.census.associate_one_zero);
  add("associate_two_zero", m.census.associate_two_zero);
  for (std::size_t i = 0; i < 3; ++i) {
    add("m" + std::to_string(i + 1) + ".F<m" + std::to_string(i + 1) + ".A",
        m.component_violations[i]);
  }
  add("star_bibliometric", m.star_bibliometric);
  add("star_non_bibliometric", m.star_non_bibliometric);
  return t;
}

Table min_qualified_table(const RoundReport& r) {
  Table t{"min_qualified",
          {"discipline", "sub_discipline", "role", "kind", "qualified", "min1", "m1",
           "above1", "min2", "m2", "above2", "min3", "m3", "above3"},
          {}};
  for (const auto& q : r.min_qualified) {
    Row row{str(q.discipline.code()), str(sub_of(q.discipline)), str(role_suffix(q.role)),
            str(kind_code(q.kind)), cnt(q.qualified)};
    for (std::size_t i = 0; i < 3; ++i) {
      row.push_back(num(q.min_indicator[i]));
      row.push_back(num(q.median[i]));
      row.push_back(q.above_median[i]);
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table min_qualified_counts_table(const RoundReport& r) {
  Table t{"min_qualified_counts", {"role", "ind1", "ind2", "ind3"}, {}};
  for (Role role : kRoles) {
    const auto& c = r.min_above_median_counts[role == Role::full ? 0 : 1];
    t.rows.push_back({str(role_suffix(role)), static_cast<long long>(c[0]),
                      static_cast<long long>(c[1]), static_cast<long long>(c[2])});
  }
  return t;
}

Table class_rates_table(const RoundReport& r) {
  Table t{"class_rates",
          {"role", "class", "applications.B", "qualified.B", "pq.B", "applications.NB",
           "qualified.NB", "pq.NB", "difference", "ci_low", "ci_high"},
          {}};
  const double nan = std::nan("");
  for (const auto& c : r.class_rates) {
    Row row{str(role_suffix(c.role)), str(class_name(c.median_class))};
    append_tally(row, c.bibliometric);
    append_tally(row, c.non_bibliometric);
    if (c.difference) {
      row.push_back(num(c.difference->estimate));
      row.push_back(num(c.difference->low));
      row.push_back(num(c.difference->high));
    } else {
      for (int i = 0; i < 3; ++i) row.push_back(num(nan));
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table pq_extremes_table(const RoundReport& r) {
  Table t{"pq_extremes",
          {"group", "rank", "discipline", "name", "applications", "qualified", "pq"},
          {}};
  auto add = [&](std::string_view group, std::size_t rank, std::size_t idx) {
    const auto& d = r.disciplines[idx];
    Row row{str(group), cnt(rank), str(d.discipline.code()), str(d.name)};
    append_tally(row, d.total);
    t.rows.push_back(std::move(row));
  };
  for (std::size_t i = 0; i < r.lowest_pq.size(); ++i) add("lowest", i + 1, r.lowest_pq[i]);
  for (std::size_t i = 0; i < r.highest_pq.size(); ++i) {
    add("highest", i + 1, r.highest_pq[r.highest_pq.size() - 1 - i]);
  }
  return t;
}

Table applications_table(const RoundReport& r) {
  Table t{"application_classes",
          {"applicant_id", "discipline", "sub_discipline", "role", "kind", "ind1", "ind2",
           "ind3", "m1", "m2", "m3", "exceeds", "class", "qualified"},
          {}};
  for (const auto& a : r.applications) {
    Row row{str(a.applicant_id), str(a.discipline.code()), str(sub_of(a.discipline)),
            str(role_suffix(a.role)), str(kind_code(a.indicators.kind))};
    for (double v : a.indicators.values()) row.push_back(num(v));
    for (double v : a.medians.values()) row.push_back(num(v));
    row.push_back(static_cast<long long>(a.exceeds));
    row.push_back(str(class_name(a.median_class)));
    row.push_back(a.qualified);
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table violations_table(const RoundReport& r) {
  Table t{"pvr_violations", {"discipline", "role", "dominator", "dominated"}, {}};
  for (const auto& v : r.violations) {
    t.rows.push_back({str(v.discipline.code()), str(role_suffix(v.role)), str(v.dominator),
                      str(v.dominated)});
  }
  return t;
}

// Plot data.

Table na_histogram(const RoundReport& r, double width) {
  Table t{"plots/na_histogram", {"bin_low", "bin_high", "disciplines"}, {}};
  if (r.disciplines.empty()) return t;
  std::size_t max_na = 0;
  for (const auto& d : r.disciplines) max_na = std::max(max_na, d.total.applications);
  const auto bins = static_cast<std::size_t>(std::floor(static_cast<double>(max_na) / width)) + 1;
  std::vector<long long> counts(bins, 0);
  for (const auto& d : r.disciplines) {
    auto b = static_cast<std::size_t>(
        std::floor(static_cast<double>(d.total.applications) / width));
    ++counts[std::min(b, bins - 1)];
  }
  for (std::size_t b = 0; b < bins; ++b) {
    t.rows.push_back({num(static_cast<double>(b) * width),
                      num(static_cast<double>(b + 1) * width), counts[b]});
  }
  return t;
}

Table na_by_discipline(const RoundReport& r) {
  Table t{"plots/na_by_discipline",
          {"discipline", "kind", "applications.F", "applications.A", "applications"},
          {}};
  for (const auto& d : r.disciplines) {
    t.rows.push_back({str(d.discipline.code()), str(kind_code(d.kind)),
                      cnt(d.full.tally.applications), cnt(d.associate.tally.applications),
                      cnt(d.total.applications)});
  }
  return t;
}

Table pq_full_vs_assoc(const RoundReport& r) {
  Table t{"plots/pq_full_vs_assoc", {"discipline", "kind", "pq.F", "pq.A"}, {}};
  for (const auto& d : r.disciplines) {
    t.rows.push_back({str(d.discipline.code()), str(kind_code(d.kind)),
                      num(d.full.tally.pq()), num(d.associate.tally.pq())});
  }
  return t;
}

Table medians_full_vs_assoc(const RoundReport& r) {
  Table t{"plots/medians_full_vs_assoc",
          {"discipline", "sub_discipline", "kind", "component", "m.F", "m.A"},
          {}};
  for (long long c = 0; c < 3; ++c) {
    for (const auto& p : r.median_anomalies.pairs) {
      t.rows.push_back({str(p.discipline.code()), str(sub_of(p.discipline)),
                        str(kind_code(p.kind)), c + 1,
                        num(p.full.values()[static_cast<std::size_t>(c)]),
                        num(p.associate.values()[static_cast<std::size_t>(c)])});
    }
  }
  return t;
}

// Descending by key, NaN last, ties by discipline code.
std::vector<std::size_t> sorted_desc(const RoundReport& r,
                                     double (*key)(const DisciplineRow&)) {
  std::vector<std::size_t> idx(r.disciplines.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    const double ka = key(r.disciplines[a]);
    const double kb = key(r.disciplines[b]);
    const bool na = std::isnan(ka), nb = std::isnan(kb);
    if (na != nb) return nb;
    if (!na && ka != kb) return ka > kb;
    return r.disciplines[a].discipline < r.disciplines[b].discipline;
  });
  return idx;
}

Table conditional_rates_sorted(const RoundReport& r) {
  Table t{"plots/conditional_rates_sorted", {"rank", "discipline", "kind", "pqo", "pqu"}, {}};
  const auto idx = sorted_desc(r, [](const DisciplineRow& d) { return d.pooled.pqo; });
  for (std::size_t i = 0; i < idx.size(); ++i) {
    const auto& d = r.disciplines[idx[i]];
    t.rows.push_back({cnt(i + 1), str(d.discipline.code()), str(kind_code(d.kind)),
                      num(d.pooled.pqo), num(d.pooled.pqu)});
  }
  return t;
}

Table conditional_full_vs_assoc(const RoundReport& r) {
  Table t{"plots/conditional_full_vs_assoc",
          {"discipline", "kind", "pqo.F", "pqo.A", "pqu.F", "pqu.A"},
          {}};
  for (const auto& d : r.disciplines) {
    t.rows.push_back({str(d.discipline.code()), str(kind_code(d.kind)),
                      num(d.full.rates.pqo), num(d.associate.rates.pqo),
                      num(d.full.rates.pqu), num(d.associate.rates.pqu)});
  }
  return t;
}

Table pvr_sorted(const RoundReport& r) {
  Table t{"plots/pvr_sorted", {"rank", "discipline", "kind", "pvr.F", "pvr.A"}, {}};
  const auto idx = sorted_desc(r, [](const DisciplineRow& d) { return d.full.pvr.ratio; });
  for (std::size_t i = 0; i < idx.size(); ++i) {
    const auto& d = r.disciplines[idx[i]];
    t.rows.push_back({cnt(i + 1), str(d.discipline.code()), str(kind_code(d.kind)),
                      num(d.full.pvr.ratio), num(d.associate.pvr.ratio)});
  }
  return t;
}

Table pvr_full_vs_assoc(const RoundReport& r) {
  Table t{"plots/pvr_full_vs_assoc",
          {"discipline", "kind", "pvr.F", "pvr.A", "no_comparable_pairs.F",
           "no_comparable_pairs.A"},
          {}};
  for (const auto& d : r.disciplines) {
    t.rows.push_back({str(d.discipline.code()), str(kind_code(d.kind)),
                      num(d.full.pvr.ratio), num(d.associate.pvr.ratio),
                      d.full.pvr.no_comparable_pairs, d.associate.pvr.no_comparable_pairs});
  }
  return t;
}

Table min_vs_median(const RoundReport& r) {
  Table t{"plots/min_vs_median",
          {"discipline", "sub_discipline", "role", "kind", "component", "median",
           "min_qualified"},
          {}};
  for (long long c = 0; c < 3; ++c) {
    for (const auto& q : r.min_qualified) {
      if (q.qualified == 0) continue;
      const auto i = static_cast<std::size_t>(c);
      t.rows.push_back({str(q.discipline.code()), str(sub_of(q.discipline)),
                        str(role_suffix(q.role)), str(kind_code(q.kind)), c + 1,
                        num(q.median[i]), num(q.min_indicator[i])});
    }
  }
  return t;
}

Table indicator_scatter(const RoundReport& r, Role role, IndicatorKind kind) {
  Table t{"plots/indicator_scatter_" + std::string(role_suffix(role)) + "_" +
              std::string(kind_code(kind)),
          {"applicant_id", "discipline", "ind1", "ind2", "ind3", "qualified"},
          {}};
  for (const auto& a : r.applications) {
    if (a.role != role || a.indicators.kind != kind) continue;
    t.rows.push_back({str(a.applicant_id), str(a.discipline.code()),
                      num(a.indicators[0]), num(a.indicators[1]), num(a.indicators[2]),
                      a.qualified});
  }
  return t;
}

std::string cell_text(const Cell& c) {
  struct V {
    std::string operator()(const std::string& s) const { return s; }
    std::string operator()(double d) const { return format_number(d); }
    std::string operator()(long long v) const { return std::to_string(v); }
    std::string operator()(bool b) const { return b ? "true" : "false"; }
  };
  return std::visit(V{}, c);
}

nlohmann::ordered_json cell_json(const Cell& c) {
  struct V {
    nlohmann::ordered_json operator()(const std::string& s) const { return s; }
    nlohmann::ordered_json operator()(double d) const {
      if (!std::isfinite(d)) return nullptr;
      return d;
    }
    nlohmann::ordered_json operator()(long long v) const { return v; }
    nlohmann::ordered_json operator()(bool b) const { return b; }
  };
  return std::visit(V{}, c);
}

std::string render_csv(const Table& t) {
  std::ostringstream out;
  write_csv_row(out, t.columns);
  std::vector<std::string> fields;
  for (const auto& row : t.rows) {
    fields.clear();
    for (const auto& c : row) fields.push_back(cell_text(c));
    write_csv_row(out, fields);
  }
  return out.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::io_error, "cannot open " + path.string() + " for writing");
  out << content;
  out.close();
  if (!out) throw Error(Errc::io_error, "write failed: " + path.string());
}

bool is_plot(const Table& t) { return t.name.starts_with("plots/"); }

}  // namespace

std::vector<Table> tabulate(const RoundReport& report, const EmitOptions& options) {
  if (!(options.histogram_bin_width > 0) || !std::isfinite(options.histogram_bin_width)) {
    throw Error(Errc::invalid_argument, "histogram bin width must be positive");
  }
  std::vector<Table> t;
  t.push_back(overview_table(report));
  t.push_back(areas_table(report));
  t.push_back(disciplines_table(report));
  t.push_back(summaries_table(report));
  t.push_back(correlation_table("correlations", report.correlations));
  t.push_back(correlation_table("indicator_correlations", report.indicator_correlations));
  t.push_back(median_pairs_table(report));
  t.push_back(median_anomalies_table(report));
  t.push_back(min_qualified_table(report));
  t.push_back(min_qualified_counts_table(report));
  t.push_back(class_rates_table(report));
  t.push_back(pq_extremes_table(report));
  t.push_back(applications_table(report));
  t.push_back(violations_table(report));

  t.push_back(na_histogram(report, options.histogram_bin_width));
  t.push_back(na_by_discipline(report));
  t.push_back(pq_full_vs_assoc(report));
  t.push_back(medians_full_vs_assoc(report));
  t.push_back(conditional_rates_sorted(report));
  t.push_back(conditional_full_vs_assoc(report));
  t.push_back(pvr_sorted(report));
  t.push_back(pvr_full_vs_assoc(report));
  t.push_back(min_vs_median(report));
  for (Role role : kRoles) {
    for (IndicatorKind kind : {IndicatorKind::bibliometric, IndicatorKind::non_bibliometric}) {
      t.push_back(indicator_scatter(report, role, kind));
    }
  }
  return t;
}

OutputFormat parse_output_format(std::string_view name) {
  if (name == "delimited-table") return OutputFormat::delimited_table;
  if (name == "structured-document") return OutputFormat::structured_document;
  throw Error(Errc::invalid_argument, "unknown output format '" + std::string(name) + "'");
}

std::vector<std::filesystem::path> emit(const RoundReport& report, OutputFormat format,
                                        const std::filesystem::path& target,
                                        const EmitOptions& options) {
  const auto tables = tabulate(report, options);
  std::error_code ec;
  std::filesystem::create_directories(target / "plots", ec);
  if (ec) {
    throw Error(Errc::io_error, "cannot create " + (target / "plots").string() + ": " +
                                    ec.message());
  }
  std::vector<std::filesystem::path> written;
  nlohmann::ordered_json doc = nlohmann::ordered_json::object();
  for (const auto& t : tables) {
    if (format == OutputFormat::delimited_table || is_plot(t)) {
      const auto path = target / (t.name + ".csv");
      write_file(path, render_csv(t));
      written.push_back(path);
      continue;
    }
    auto& entry = doc[t.name];
    entry["columns"] = t.columns;
    auto rows = nlohmann::ordered_json::array();
    for (const auto& row : t.rows) {
      auto obj = nlohmann::ordered_json::object();
      for (std::size_t i = 0; i < row.size(); ++i) obj[t.columns[i]] = cell_json(row[i]);
      rows.push_back(std::move(obj));
    }
    entry["rows"] = std::move(rows);
  }
  if (format == OutputFormat::structured_document) {
    const auto path = target / "report.json";
    write_file(path, doc.dump(2) + "\n");
    written.insert(written.begin(), path);
  }
  return written;
}

}  // namespace asn
