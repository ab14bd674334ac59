#pragma once

// Median threshold sets, strict exceedance, and the analysis of median sets
// across roles.

#include <compare>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "asn/types.hpp"

namespace asn {

// Scientific discipline "AA/MC": area AA (01-14), macro-sector letter M and
// digit C, optionally refined by a sub-discipline code.
struct DisciplineId {
  int area = 0;
  char macro_sector = 'A';
  int digit = 0;
  std::optional<std::string> sub_discipline;

  // Throws Errc::invalid_discipline.
  static DisciplineId parse(std::string_view code,
                            std::optional<std::string> sub = std::nullopt);

  // "AA/MC", without the sub-discipline.
  [[nodiscard]] std::string code() const;
  // "AA/MC" or "AA/MC:SUB".
  [[nodiscard]] std::string label() const;
  // The same discipline with the sub-discipline dropped.
  [[nodiscard]] DisciplineId base() const;
  [[nodiscard]] bool same_base(const DisciplineId& other) const;

  friend auto operator<=>(const DisciplineId&, const DisciplineId&) = default;
  friend bool operator==(const DisciplineId&, const DisciplineId&) = default;
};

struct MedianSet {
  DisciplineId discipline;
  Role role = Role::full;
  double m1 = 0.0;
  double m2 = 0.0;
  double m3 = 0.0;
  IndicatorKind kind = IndicatorKind::bibliometric;

  [[nodiscard]] std::array<double, 3> values() const { return {m1, m2, m3}; }
  [[nodiscard]] int zero_count() const;
};

enum class MedianTag { none, O, OO, o, oo, star };

std::string_view to_string(MedianTag tag);

enum class MedianClass { over_median, under_median };

// Odd n: middle order statistic; even n: mean of the two central ones.
// Throws Errc::no_population when empty.
double compute_median(std::span<const double> values);

// Number of components with v_i > m_i (equality does not count).
int exceeds_count(const IndicatorVector& v, const MedianSet& m);

// Over-median iff at least two (bibliometric) or one (non-bibliometric)
// median is strictly exceeded.
MedianClass classify(const IndicatorVector& v, const MedianSet& m);
int required_exceedances(IndicatorKind kind);

struct ZeroMedianCensus {
  int full_one_zero = 0;
  int full_two_zero = 0;
  int associate_one_zero = 0;
  int associate_two_zero = 0;

  friend bool operator==(const ZeroMedianCensus&,
                         const ZeroMedianCensus&) = default;
};

// Throws Errc::duplicate_entry when a (discipline, role) appears twice.
ZeroMedianCensus zero_median_census(std::span<const MedianSet> sets);

// Star when the associate medians Pareto-dominate the full ones, otherwise
// O/OO for one/two zero full medians, then o/oo for the associate ones.
MedianTag tag_median_pair(const MedianSet& full, const MedianSet& associate);

// Lookup of the median set that applies to a (discipline, role). A set
// carrying a sub-discipline code takes precedence over the plain one.
class MedianTable {
 public:
  MedianTable() = default;
  // Throws Errc::duplicate_entry on repeated (discipline, sub, role).
  explicit MedianTable(std::vector<MedianSet> sets);

  [[nodiscard]] const MedianSet* find(const DisciplineId& discipline,
                                      Role role) const;
  [[nodiscard]] const MedianSet* find_exact(const DisciplineId& discipline,
                                            Role role) const;
  [[nodiscard]] std::span<const MedianSet> sets() const { return sets_; }

 private:
  std::vector<MedianSet> sets_;
  std::map<std::pair<DisciplineId, Role>, std::size_t> index_;
};

}  // namespace asn
