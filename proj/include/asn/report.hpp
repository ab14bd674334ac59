#pragma once

// Whole-round analysis: aggregation by area and discipline, conditional
// qualification rates, Pareto violation ratios, median anomalies, minimum
// qualified indicators, correlations, and deterministic emission of the
// result as delimited tables or a JSON document plus plot-ready data.

#include <array>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "asn/dominance.hpp"
#include "asn/ingest.hpp"
#include "asn/stats.hpp"
#include "asn/thresholds.hpp"

namespace asn {

struct Tally {
  std::size_t applications = 0;
  std::size_t qualified = 0;

  [[nodiscard]] double pq() const;  // NaN when empty
  Tally& operator+=(const Tally& o) {
    applications += o.applications;
    qualified += o.qualified;
    return *this;
  }
};

struct AreaRow {
  int area = 0;
  std::string acronym;
  Tally full;
  Tally associate;
  Tally total;
};

struct RoleResult {
  Tally tally;
  ConditionalRates rates;
  PvrResult pvr;
};

struct DisciplineRow {
  DisciplineId discipline;  // base code
  std::string name;
  std::string area_acronym;
  IndicatorKind kind = IndicatorKind::bibliometric;
  RoleResult full;
  RoleResult associate;
  Tally total;
  ConditionalRates pooled;  // both roles together

  [[nodiscard]] const RoleResult& role(Role r) const {
    return r == Role::full ? full : associate;
  }
};

struct SummaryRow {
  std::string variable;
  std::size_t n = 0;  // values summarized (NaN entries dropped)
  std::optional<FiveNumberSummary> summary;
};

struct CorrelationRow {
  std::string x;
  std::string y;
  std::string subset;  // "all", "B", "NB", or "F/B"-style for indicator pairs
  std::optional<CorrelationResult> result;  // empty when fewer than 3 pairs
};

struct MedianPairRow {
  DisciplineId discipline;  // may carry a sub-discipline
  IndicatorKind kind = IndicatorKind::bibliometric;
  MedianSet full;
  MedianSet associate;
  MedianTag tag = MedianTag::none;
};

struct MedianAnomalies {
  ZeroMedianCensus census;
  std::vector<MedianPairRow> pairs;
  // Pairs with M_i.F < M_i.A for i = 1, 2, 3.
  std::array<int, 3> component_violations{};
  int star_bibliometric = 0;
  int star_non_bibliometric = 0;
};

// One row per median set that has qualified applicants or not; mins are NaN
// when nobody qualified.
struct MinQualifiedRow {
  DisciplineId discipline;
  Role role = Role::full;
  IndicatorKind kind = IndicatorKind::bibliometric;
  std::size_t qualified = 0;
  std::array<double, 3> min_indicator{};
  std::array<double, 3> median{};
  std::array<bool, 3> above_median{};
};

struct ClassRateRow {
  Role role = Role::full;
  MedianClass median_class = MedianClass::over_median;
  Tally bibliometric;
  Tally non_bibliometric;
  std::optional<Interval> difference;  // B - N
};

struct ApplicationRow {
  std::string applicant_id;
  DisciplineId discipline;
  Role role = Role::full;
  IndicatorVector indicators;
  MedianSet medians;
  int exceeds = 0;
  MedianClass median_class = MedianClass::under_median;
  bool qualified = false;
};

struct PvrViolationRow {
  DisciplineId discipline;
  Role role = Role::full;
  std::string dominator;
  std::string dominated;
};

struct Overview {
  Tally total;
  Tally full;
  Tally associate;
  Tally bibliometric;
  Tally non_bibliometric;
  std::size_t distinct_names = 0;
  std::size_t disciplines = 0;
  std::array<ConditionalRates, 2> rates_by_role;  // full, associate
  ConditionalRates rates_all;
  std::size_t no_underqualified_disciplines = 0;  // pooled PQU == 0
};

struct RoundReport {
  Overview overview;
  std::vector<AreaRow> areas;  // area order
  AreaRow grand_total;
  std::vector<DisciplineRow> disciplines;  // area, then code
  std::vector<SummaryRow> summaries;
  std::vector<CorrelationRow> correlations;
  std::vector<CorrelationRow> indicator_correlations;
  MedianAnomalies median_anomalies;
  std::vector<MinQualifiedRow> min_qualified;
  // Table counts [role][i]: median sets whose qualified minimum of ind_i
  // strictly exceeds M_i.
  std::array<std::array<int, 3>, 2> min_above_median_counts{};
  std::vector<ClassRateRow> class_rates;
  // Indices into disciplines, ascending PQ (ties by code).
  std::vector<std::size_t> lowest_pq;
  std::vector<std::size_t> highest_pq;
  std::vector<ApplicationRow> applications;
  std::vector<PvrViolationRow> violations;
};

// Throws Errc::invalid_argument (first validation error) for an invalid
// dataset.
RoundReport analyze_round(const RoundDataset& data);

// ---------------------------------------------------------------------------
// Emission

using Cell = std::variant<std::string, double, long long, bool>;

struct Table {
  std::string name;  // file stem, may contain "plots/"
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

struct EmitOptions {
  double histogram_bin_width = 50.0;
};

// Flattens the report into named tables in a fixed order.
std::vector<Table> tabulate(const RoundReport& report, const EmitOptions& options = {});

enum class OutputFormat { delimited_table, structured_document };

OutputFormat parse_output_format(std::string_view name);

// delimited_table: one <name>.csv per table. structured_document: report.json
// holding the non-plot tables; plot tables are always written as CSV under
// plots/. Returns the files written. Throws Errc::io_error with the path.
std::vector<std::filesystem::path> emit(const RoundReport& report, OutputFormat format,
                                        const std::filesystem::path& target,
                                        const EmitOptions& options = {});

}  // namespace asn
