#include "asn/ingest.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>
#include <set>
#include <tuple>

#include "asn/csv.hpp"

namespace asn {

namespace {

constexpr std::array<std::string_view, 14> kAreaAcronyms = {
    "MCS", "PHY", "CHE", "EAS", "BIO", "MED", "AVM",
    "CEA", "IIE", "APL", "HPP", "LAW", "ECS", "PSS",
};

// Column positions resolved from a header row.
class Header {
 public:
  Header(std::vector<std::string> names, const std::string& source)
      : names_(std::move(names)), source_(source) {
    for (auto& n : names_) n = std::string(trim(n));
  }

  [[nodiscard]] std::optional<std::size_t> find(std::string_view name) const {
    const auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - names_.begin());
  }

  [[nodiscard]] std::size_t require(std::string_view name) const {
    if (auto i = find(name)) return *i;
    throw Error(Errc::missing_column,
                source_ + ": missing column '" + std::string(name) + "'");
  }

  [[nodiscard]] std::size_t size() const { return names_.size(); }

 private:
  std::vector<std::string> names_;
  std::string source_;
};

Header read_header(CsvReader& reader, const std::string& source) {
  CsvRow row;
  if (!reader.next(row)) {
    throw Error(Errc::missing_column, source + ": header row missing");
  }
  return Header(std::move(row.fields), source);
}

// Collects the first problem found in a row; the row is dropped if any.
class RowCheck {
 public:
  RowCheck(std::vector<Diagnostic>& out, const std::string& source,
           const CsvRow& row)
      : out_(out), source_(source), row_(row) {}

  void fail(std::string_view column, std::string message) {
    if (failed_) return;
    failed_ = true;
    out_.push_back(Diagnostic{Severity::error, source_, row_.line,
                              std::string(column), std::move(message)});
  }

  [[nodiscard]] bool ok() const { return !failed_; }

  std::string_view text(std::size_t idx) const {
    return trim(row_.fields[idx]);
  }

  std::optional<DisciplineId> discipline(std::size_t code_col,
                                         std::optional<std::size_t> sub_col) {
    std::optional<std::string> sub;
    if (sub_col && !text(*sub_col).empty()) sub = std::string(text(*sub_col));
    try {
      return DisciplineId::parse(text(code_col), std::move(sub));
    } catch (const Error& e) {
      fail("discipline", e.what());
      return std::nullopt;
    }
  }

  std::optional<Role> role(std::size_t col) {
    const auto raw = text(col);
    const auto v = parse_integer(raw);
    if (!v || (*v != 1 && *v != 2)) {
      fail("role", "unknown role '" + std::string(raw) + "'");
      return std::nullopt;
    }
    return role_from_code(static_cast<int>(*v));
  }

  std::optional<IndicatorKind> kind(std::size_t col) {
    const auto raw = text(col);
    if (raw == "B") return IndicatorKind::bibliometric;
    if (raw == "NB") return IndicatorKind::non_bibliometric;
    fail("kind", "unknown kind '" + std::string(raw) + "'");
    return std::nullopt;
  }

  double nonneg(std::size_t col, std::string_view name) {
    const auto raw = text(col);
    if (raw.empty()) {
      fail(name, "missing value for column '" + std::string(name) + "'");
      return 0.0;
    }
    const auto v = parse_number(raw);
    if (!v) {
      fail(name, "unparseable number '" + std::string(raw) + "' in column '" +
                     std::string(name) + "'");
      return 0.0;
    }
    if (*v < 0.0) {
      fail(name, "negative value in column '" + std::string(name) + "'");
      return 0.0;
    }
    return *v;
  }

 private:
  std::vector<Diagnostic>& out_;
  const std::string& source_;
  const CsvRow& row_;
  bool failed_ = false;
};

std::optional<bool> parse_bool(std::string_view raw) {
  std::string lower(raw);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (lower == "true") return true;
  if (lower == "false") return false;
  return std::nullopt;
}

std::string role_text(Role role) { return std::to_string(role_code(role)); }

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(Errc::io_error, "cannot open '" + path.string() + "'");
  }
  return in;
}

void diag(std::vector<Diagnostic>& out, Severity sev, std::string source,
          std::string message) {
  out.push_back(Diagnostic{sev, std::move(source), 0, {}, std::move(message)});
}

}  // namespace

std::string Diagnostic::to_string() const {
  std::string out = severity == Severity::error ? "error: " : "warning: ";
  if (!source.empty()) {
    out += source;
    if (line > 0) out += ":" + std::to_string(line);
    out += ": ";
  }
  if (!column.empty()) out += "[" + column + "] ";
  out += message;
  return out;
}

std::string_view area_acronym(int area) {
  if (area < 1 || area > 14) {
    throw Error(Errc::invalid_discipline,
                "area " + std::to_string(area) + " out of range");
  }
  return kAreaAcronyms[static_cast<std::size_t>(area - 1)];
}

IndicatorKind default_kind(const DisciplineId& d) {
  if (d.area <= 9) {
    if (d.area == 8) {
      const bool exception = (d.macro_sector == 'C' && d.digit == 1) ||
                             (d.macro_sector == 'D' && d.digit == 1) ||
                             (d.macro_sector == 'E' && (d.digit == 1 || d.digit == 2)) ||
                             (d.macro_sector == 'F' && d.digit == 1);
      if (exception) return IndicatorKind::non_bibliometric;
    }
    return IndicatorKind::bibliometric;
  }
  if (d.area == 11 && d.macro_sector == 'E') return IndicatorKind::bibliometric;
  return IndicatorKind::non_bibliometric;
}

DisciplineRegistry::DisciplineRegistry(
    std::vector<DisciplineRegistryEntry> entries)
    : entries_(std::move(entries)) {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const auto key = entries_[i].discipline.base();
    if (!index_.emplace(key, i).second) {
      throw Error(Errc::duplicate_entry,
                  "duplicate registry entry " + key.code());
    }
  }
}

const DisciplineRegistryEntry* DisciplineRegistry::find(
    const DisciplineId& discipline) const {
  const auto it = index_.find(discipline.base());
  return it == index_.end() ? nullptr : &entries_[it->second];
}

Parsed<ApplicationRecord> parse_applications(std::istream& in,
                                             const DisciplineRegistry* registry,
                                             const std::string& source) {
  CsvReader reader(in);
  const Header header = read_header(reader, source);
  const auto c_last = header.require("last_name");
  const auto c_first = header.require("first_name");
  const auto c_disc = header.require("discipline");
  const auto c_sub = header.find("sub_discipline");
  const auto c_role = header.require("role");
  const auto c_i1 = header.require("ind1");
  const auto c_i2 = header.require("ind2");
  const auto c_i3 = header.require("ind3");
  const auto c_qual = header.require("qualified");
  const auto c_id = header.find("applicant_id");

  Parsed<ApplicationRecord> out;
  std::map<std::tuple<std::string, DisciplineId, Role>, std::size_t> seen;
  CsvRow row;
  while (reader.next(row)) {
    RowCheck check(out.diagnostics, source, row);
    if (row.fields.size() != header.size()) {
      check.fail("", "expected " + std::to_string(header.size()) +
                         " fields, found " + std::to_string(row.fields.size()));
      continue;
    }
    ApplicationRecord rec;
    rec.last_name = std::string(check.text(c_last));
    rec.first_name = std::string(check.text(c_first));
    const auto disc = check.discipline(c_disc, c_sub);
    const auto role = check.role(c_role);
    const double i1 = check.nonneg(c_i1, "ind1");
    const double i2 = check.nonneg(c_i2, "ind2");
    const double i3 = check.nonneg(c_i3, "ind3");
    const auto qualified = parse_bool(check.text(c_qual));
    if (!qualified) {
      check.fail("qualified", "expected true|false, found '" +
                                  std::string(check.text(c_qual)) + "'");
    }
    if (!check.ok()) continue;

    rec.discipline = *disc;
    rec.role = *role;
    rec.qualified = *qualified;
    IndicatorKind kind = default_kind(rec.discipline);
    if (registry != nullptr) {
      if (const auto* entry = registry->find(rec.discipline)) kind = entry->kind;
    }
    rec.indicators = IndicatorVector{i1, i2, i3, kind};
    rec.applicant_id = (c_id && !check.text(*c_id).empty())
                           ? std::string(check.text(*c_id))
                           : rec.last_name + "," + rec.first_name;

    auto key = std::tuple{rec.applicant_id, rec.discipline, rec.role};
    if (const auto [it, fresh] = seen.emplace(key, row.line); !fresh) {
      throw Error(Errc::duplicate_entry,
                  source + ": duplicate application of '" + rec.applicant_id +
                      "' for " + rec.discipline.label() + " role " +
                      role_text(rec.role) + " on lines " +
                      std::to_string(it->second) + " and " +
                      std::to_string(row.line));
    }
    out.records.push_back(std::move(rec));
  }
  return out;
}

Parsed<MedianSet> parse_medians(std::istream& in, const std::string& source) {
  CsvReader reader(in);
  const Header header = read_header(reader, source);
  const auto c_disc = header.require("discipline");
  const auto c_sub = header.find("sub_discipline");
  const auto c_role = header.require("role");
  const auto c_kind = header.require("kind");
  const auto c_m1 = header.require("m1");
  const auto c_m2 = header.require("m2");
  const auto c_m3 = header.require("m3");

  Parsed<MedianSet> out;
  std::map<std::pair<DisciplineId, Role>, std::size_t> seen;
  CsvRow row;
  while (reader.next(row)) {
    RowCheck check(out.diagnostics, source, row);
    if (row.fields.size() != header.size()) {
      check.fail("", "expected " + std::to_string(header.size()) +
                         " fields, found " + std::to_string(row.fields.size()));
      continue;
    }
    const auto disc = check.discipline(c_disc, c_sub);
    const auto role = check.role(c_role);
    const auto kind = check.kind(c_kind);
    const double m1 = check.nonneg(c_m1, "m1");
    const double m2 = check.nonneg(c_m2, "m2");
    const double m3 = check.nonneg(c_m3, "m3");
    if (!check.ok()) continue;

    MedianSet m{*disc, *role, m1, m2, m3, *kind};
    if (const auto [it, fresh] = seen.emplace(std::pair{m.discipline, m.role},
                                              row.line);
        !fresh) {
      throw Error(Errc::duplicate_entry,
                  source + ": duplicate median set for " +
                      m.discipline.label() + " role " + role_text(m.role) +
                      " on lines " + std::to_string(it->second) + " and " +
                      std::to_string(row.line));
    }
    out.records.push_back(std::move(m));
  }
  return out;
}

Parsed<DisciplineRegistryEntry> parse_registry(std::istream& in,
                                               const std::string& source) {
  CsvReader reader(in);
  const Header header = read_header(reader, source);
  const auto c_disc = header.require("discipline");
  const auto c_acr = header.require("area_acronym");
  const auto c_kind = header.require("kind");
  const auto c_name = header.find("name");

  Parsed<DisciplineRegistryEntry> out;
  std::map<DisciplineId, std::size_t> seen;
  CsvRow row;
  while (reader.next(row)) {
    RowCheck check(out.diagnostics, source, row);
    if (row.fields.size() != header.size()) {
      check.fail("", "expected " + std::to_string(header.size()) +
                         " fields, found " + std::to_string(row.fields.size()));
      continue;
    }
    const auto disc = check.discipline(c_disc, std::nullopt);
    const auto kind = check.kind(c_kind);
    const auto acronym = check.text(c_acr);
    if (acronym.size() != 3 ||
        !std::all_of(acronym.begin(), acronym.end(), [](unsigned char c) {
          return std::isupper(c);
        })) {
      check.fail("area_acronym",
                 "area acronym must be three letters, found '" +
                     std::string(acronym) + "'");
    }
    if (!check.ok()) continue;

    if (const auto [it, fresh] = seen.emplace(*disc, row.line); !fresh) {
      throw Error(Errc::duplicate_entry,
                  source + ": duplicate discipline " + disc->code() +
                      " on lines " + std::to_string(it->second) + " and " +
                      std::to_string(row.line));
    }
    out.records.push_back(DisciplineRegistryEntry{
        *disc, std::string(acronym), *kind,
        c_name ? std::string(check.text(*c_name)) : std::string()});
  }
  return out;
}

void write_applications(std::ostream& out,
                        std::span<const ApplicationRecord> apps) {
  write_csv_row(out, {"applicant_id", "last_name", "first_name", "discipline",
                      "sub_discipline", "role", "ind1", "ind2", "ind3",
                      "qualified"});
  for (const auto& a : apps) {
    write_csv_row(out, {a.applicant_id, a.last_name, a.first_name,
                        a.discipline.code(),
                        a.discipline.sub_discipline.value_or(""),
                        role_text(a.role), format_number(a.indicators.ind1),
                        format_number(a.indicators.ind2),
                        format_number(a.indicators.ind3),
                        a.qualified ? "true" : "false"});
  }
}

void write_medians(std::ostream& out, std::span<const MedianSet> medians) {
  write_csv_row(out, {"discipline", "sub_discipline", "role", "kind", "m1",
                      "m2", "m3"});
  for (const auto& m : medians) {
    write_csv_row(out, {m.discipline.code(),
                        m.discipline.sub_discipline.value_or(""),
                        role_text(m.role), std::string(kind_code(m.kind)),
                        format_number(m.m1), format_number(m.m2),
                        format_number(m.m3)});
  }
}

void write_registry(std::ostream& out,
                    std::span<const DisciplineRegistryEntry> entries) {
  write_csv_row(out, {"discipline", "area_acronym", "kind", "name"});
  for (const auto& e : entries) {
    write_csv_row(out, {e.discipline.code(), e.area_acronym,
                        std::string(kind_code(e.kind)), e.name});
  }
}

bool has_errors(std::span<const Diagnostic> diagnostics) {
  return std::any_of(diagnostics.begin(), diagnostics.end(),
                     [](const Diagnostic& d) {
                       return d.severity == Severity::error;
                     });
}

std::vector<Diagnostic> validate_round(const RoundDataset& data) {
  std::vector<Diagnostic> out;

  DisciplineRegistry registry;
  try {
    registry = DisciplineRegistry(data.registry);
  } catch (const Error& e) {
    diag(out, Severity::error, "registry", e.what());
    return out;
  }
  for (const auto& e : registry.entries()) {
    if (e.area_acronym != area_acronym(e.area())) {
      diag(out, Severity::warning, "registry",
           e.discipline.code() + " listed under area acronym " +
               e.area_acronym + ", expected " +
               std::string(area_acronym(e.area())));
    }
    if (e.kind != default_kind(e.discipline)) {
      diag(out, Severity::warning, "registry",
           e.discipline.code() + " is marked " +
               std::string(kind_code(e.kind)) +
               ", unlike the official partition");
    }
  }

  MedianTable medians;
  try {
    medians = MedianTable(data.medians);
  } catch (const Error& e) {
    diag(out, Severity::error, "medians", e.what());
    return out;
  }
  for (const auto& m : medians.sets()) {
    const auto* entry = registry.find(m.discipline);
    if (entry == nullptr) {
      diag(out, Severity::error, "medians",
           "median set for unregistered discipline " + m.discipline.label());
      continue;
    }
    if (entry->kind != m.kind) {
      diag(out, Severity::error, "medians",
           "median set for " + m.discipline.label() + " has kind " +
               std::string(kind_code(m.kind)) + " but the registry says " +
               std::string(kind_code(entry->kind)));
    }
    if (m.kind == IndicatorKind::bibliometric && m.zero_count() > 0) {
      diag(out, Severity::warning, "medians",
           "bibliometric median set for " + m.discipline.label() + " role " +
               role_text(m.role) + " contains a zero median");
    }
  }

  std::set<std::tuple<std::string, DisciplineId, Role>> seen;
  for (const auto& a : data.applications) {
    const std::string who = "'" + a.applicant_id + "' (" +
                            a.discipline.label() + ", role " +
                            role_text(a.role) + ")";
    if (!seen.emplace(a.applicant_id, a.discipline, a.role).second) {
      diag(out, Severity::error, "applications", "duplicate application " + who);
    }
    const auto* entry = registry.find(a.discipline);
    if (entry == nullptr) {
      diag(out, Severity::error, "applications",
           "unresolved discipline for application " + who);
      continue;
    }
    if (entry->kind != a.indicators.kind) {
      diag(out, Severity::error, "applications",
           "indicator kind of application " + who +
               " disagrees with the registry");
    }
    if (medians.find(a.discipline, a.role) == nullptr) {
      diag(out, Severity::error, "applications",
           "no median set for application " + who);
    }
  }
  return out;
}

LoadedRound load_round(const std::filesystem::path& applications,
                       const std::filesystem::path& medians,
                       const std::filesystem::path& registry) {
  LoadedRound out;
  auto append = [&out](std::vector<Diagnostic>& d) {
    out.diagnostics.insert(out.diagnostics.end(), d.begin(), d.end());
  };

  auto reg_in = open_input(registry);
  auto reg = parse_registry(reg_in, registry.string());
  append(reg.diagnostics);

  // Kinds come from the registry; a duplicate there surfaces in
  // validate_round.
  std::optional<DisciplineRegistry> lookup;
  try {
    lookup.emplace(reg.records);
  } catch (const Error&) {
  }

  auto app_in = open_input(applications);
  auto apps = parse_applications(app_in, lookup ? &*lookup : nullptr,
                                 applications.string());
  append(apps.diagnostics);

  auto med_in = open_input(medians);
  auto meds = parse_medians(med_in, medians.string());
  append(meds.diagnostics);

  out.data.applications = std::move(apps.records);
  out.data.medians = std::move(meds.records);
  out.data.registry = std::move(reg.records);
  auto checks = validate_round(out.data);
  append(checks);
  return out;
}

void save_round(const RoundDataset& data, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    throw Error(Errc::io_error,
                "cannot create '" + dir.string() + "': " + ec.message());
  }
  auto write = [&dir](const char* name, auto&& fn) {
    const auto path = dir / name;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(Errc::io_error, "cannot write '" + path.string() + "'");
    fn(out);
    out.flush();
    if (!out) throw Error(Errc::io_error, "write failed for '" + path.string() + "'");
  };
  write("applications.csv",
        [&](std::ostream& o) { write_applications(o, data.applications); });
  write("medians.csv", [&](std::ostream& o) { write_medians(o, data.medians); });
  write("registry.csv",
        [&](std::ostream& o) { write_registry(o, data.registry); });
}

}  // namespace asn
