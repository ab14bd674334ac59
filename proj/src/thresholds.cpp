#include "asn/thresholds.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <set>

#include "asn/pareto.hpp"

namespace asn {

namespace {

bool is_digit(char c) { return c >= '0' && c <= '9'; }

}  // namespace

DisciplineId DisciplineId::parse(std::string_view code,
                                 std::optional<std::string> sub) {
  // AA/MC
  if (code.size() != 5 || !is_digit(code[0]) || !is_digit(code[1]) ||
      code[2] != '/' || !std::isupper(static_cast<unsigned char>(code[3])) ||
      !is_digit(code[4])) {
    throw Error(Errc::invalid_discipline,
                "malformed discipline code '" + std::string(code) + "'");
  }
  DisciplineId id;
  id.area = (code[0] - '0') * 10 + (code[1] - '0');
  id.macro_sector = code[3];
  id.digit = code[4] - '0';
  if (id.area < 1 || id.area > 14) {
    throw Error(Errc::invalid_discipline,
                "area out of range in '" + std::string(code) + "'");
  }
  if (sub && sub->empty()) sub.reset();
  id.sub_discipline = std::move(sub);
  return id;
}

std::string DisciplineId::code() const {
  char buf[8];
  std::snprintf(buf, sizeof buf, "%02d/%c%d", area, macro_sector, digit);
  return buf;
}

std::string DisciplineId::label() const {
  return sub_discipline ? code() + ":" + *sub_discipline : code();
}

DisciplineId DisciplineId::base() const {
  DisciplineId out = *this;
  out.sub_discipline.reset();
  return out;
}

bool DisciplineId::same_base(const DisciplineId& other) const {
  return area == other.area && macro_sector == other.macro_sector &&
         digit == other.digit;
}

int MedianSet::zero_count() const {
  const auto v = values();
  return static_cast<int>(std::count(v.begin(), v.end(), 0.0));
}

std::string_view to_string(MedianTag tag) {
  switch (tag) {
    case MedianTag::none: return "";
    case MedianTag::O: return "O";
    case MedianTag::OO: return "OO";
    case MedianTag::o: return "o";
    case MedianTag::oo: return "oo";
    case MedianTag::star: return "*";
  }
  return "";
}

double compute_median(std::span<const double> values) {
  if (values.empty()) {
    throw Error(Errc::no_population, "no population");
  }
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();
  if (n % 2 == 1) return sorted[n / 2];
  return (sorted[n / 2 - 1] + sorted[n / 2]) / 2.0;
}

int exceeds_count(const IndicatorVector& v, const MedianSet& m) {
  if (v.kind != m.kind) {
    throw Error(Errc::kind_mismatch, "indicator/threshold kind mismatch");
  }
  return static_cast<int>(v.ind1 > m.m1) + static_cast<int>(v.ind2 > m.m2) +
         static_cast<int>(v.ind3 > m.m3);
}

int required_exceedances(IndicatorKind kind) {
  return kind == IndicatorKind::bibliometric ? 2 : 1;
}

MedianClass classify(const IndicatorVector& v, const MedianSet& m) {
  return exceeds_count(v, m) >= required_exceedances(m.kind)
             ? MedianClass::over_median
             : MedianClass::under_median;
}

ZeroMedianCensus zero_median_census(std::span<const MedianSet> sets) {
  std::set<std::pair<DisciplineId, Role>> seen;
  ZeroMedianCensus census;
  for (const auto& s : sets) {
    if (!seen.emplace(s.discipline, s.role).second) {
      throw Error(Errc::duplicate_entry,
                  "duplicate median set for " + s.discipline.label() +
                      " role " + std::to_string(role_code(s.role)));
    }
    const int zeros = s.zero_count();
    const bool full = s.role == Role::full;
    if (zeros == 1) ++(full ? census.full_one_zero : census.associate_one_zero);
    if (zeros == 2) ++(full ? census.full_two_zero : census.associate_two_zero);
  }
  return census;
}

MedianTag tag_median_pair(const MedianSet& full, const MedianSet& associate) {
  if (full.role != Role::full || associate.role != Role::associate) {
    throw Error(Errc::role_mismatch,
                "median pair must be (full, associate)");
  }
  // Sub-disciplines may exist for one role only, so only the base code has
  // to agree.
  if (!full.discipline.same_base(associate.discipline)) {
    throw Error(Errc::discipline_mismatch,
                "median pair spans " + full.discipline.code() + " and " +
                    associate.discipline.code());
  }
  const auto f = full.values();
  const auto a = associate.values();
  if (dominates(a, f)) return MedianTag::star;
  switch (full.zero_count()) {
    case 1: return MedianTag::O;
    case 2: return MedianTag::OO;
    default: break;
  }
  switch (associate.zero_count()) {
    case 1: return MedianTag::o;
    case 2: return MedianTag::oo;
    default: break;
  }
  return MedianTag::none;
}

MedianTable::MedianTable(std::vector<MedianSet> sets) : sets_(std::move(sets)) {
  for (std::size_t i = 0; i < sets_.size(); ++i) {
    const auto& s = sets_[i];
    if (!index_.emplace(std::pair{s.discipline, s.role}, i).second) {
      throw Error(Errc::duplicate_entry,
                  "duplicate median set for " + s.discipline.label() +
                      " role " + std::to_string(role_code(s.role)));
    }
  }
}

const MedianSet* MedianTable::find_exact(const DisciplineId& discipline,
                                         Role role) const {
  const auto it = index_.find({discipline, role});
  return it == index_.end() ? nullptr : &sets_[it->second];
}

const MedianSet* MedianTable::find(const DisciplineId& discipline,
                                   Role role) const {
  if (discipline.sub_discipline) {
    if (const auto* hit = find_exact(discipline, role)) return hit;
  }
  return find_exact(discipline.base(), role);
}

}  // namespace asn
