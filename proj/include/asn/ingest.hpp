#pragma once

// Parsing, validation and serialization of round data (applications,
// median fixtures, discipline registry) and a seeded synthetic-round
// generator.

#include <cstdint>
#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "asn/dominance.hpp"
#include "asn/thresholds.hpp"

namespace asn {

enum class Severity { warning, error };

struct Diagnostic {
  Severity severity = Severity::error;
  std::string source;  // file label, may be empty
  std::size_t line = 0;  // 0 when not tied to a line
  std::string column;
  std::string message;

  [[nodiscard]] std::string to_string() const;
};

template <typename T>
struct Parsed {
  std::vector<T> records;
  std::vector<Diagnostic> diagnostics;
};

// Three-letter acronym of a scientific area (01 = "MCS" ... 14 = "PSS").
std::string_view area_acronym(int area);

// Indicator family implied by the official partition: areas 01-09 are
// bibliometric except 08/C1, 08/D1, 08/E1, 08/E2, 08/F1; areas 10-14 are
// non-bibliometric except the 11/E macro-sector.
IndicatorKind default_kind(const DisciplineId& discipline);

struct DisciplineRegistryEntry {
  DisciplineId discipline;
  std::string area_acronym;
  IndicatorKind kind = IndicatorKind::bibliometric;
  std::string name;  // optional

  [[nodiscard]] int area() const { return discipline.area; }
};

class DisciplineRegistry {
 public:
  DisciplineRegistry() = default;
  // Throws Errc::duplicate_entry.
  explicit DisciplineRegistry(std::vector<DisciplineRegistryEntry> entries);

  [[nodiscard]] const DisciplineRegistryEntry* find(
      const DisciplineId& discipline) const;
  [[nodiscard]] std::span<const DisciplineRegistryEntry> entries() const {
    return entries_;
  }
  [[nodiscard]] std::size_t size() const { return entries_.size(); }

 private:
  std::vector<DisciplineRegistryEntry> entries_;
  std::map<DisciplineId, std::size_t> index_;
};

// Columns (located by header name): last_name, first_name, discipline,
// sub_discipline (optional), role (1|2), ind1, ind2, ind3, qualified
// (true|false), applicant_id (optional; defaults to "last_name,first_name").
// Damaged rows are skipped with a diagnostic. Missing header columns and
// duplicate (applicant, discipline, role) rows throw.
Parsed<ApplicationRecord> parse_applications(
    std::istream& in, const DisciplineRegistry* registry = nullptr,
    const std::string& source = "applications");

// Columns: discipline, sub_discipline (optional), role, kind (B|NB), m1, m2,
// m3. Duplicate (discipline, sub_discipline, role) rows throw.
Parsed<MedianSet> parse_medians(std::istream& in,
                                const std::string& source = "medians");

// Columns: discipline, area_acronym, kind (B|NB), name (optional).
Parsed<DisciplineRegistryEntry> parse_registry(
    std::istream& in, const std::string& source = "registry");

void write_applications(std::ostream& out,
                        std::span<const ApplicationRecord> apps);
void write_medians(std::ostream& out, std::span<const MedianSet> medians);
void write_registry(std::ostream& out,
                    std::span<const DisciplineRegistryEntry> entries);

struct RoundDataset {
  std::vector<ApplicationRecord> applications;
  std::vector<MedianSet> medians;
  std::vector<DisciplineRegistryEntry> registry;
};

// Dataset-level consistency: registry resolution, median availability,
// kind agreement and uniqueness. Errors make the round unusable; warnings
// (zero bibliometric medians, registry kinds off the official partition)
// do not.
std::vector<Diagnostic> validate_round(const RoundDataset& data);

bool has_errors(std::span<const Diagnostic> diagnostics);

struct LoadedRound {
  RoundDataset data;
  std::vector<Diagnostic> diagnostics;
};

// Reads and validates the three files. Throws Errc::io_error when a file
// cannot be opened; parse-level hard errors propagate as asn::Error.
LoadedRound load_round(const std::filesystem::path& applications,
                       const std::filesystem::path& medians,
                       const std::filesystem::path& registry);

void save_round(const RoundDataset& data, const std::filesystem::path& dir);

// ---------------------------------------------------------------------------
// Synthetic rounds

enum class DistributionFamily { lognormal, gamma, exponential, uniform, poisson };

struct ComponentDistribution {
  DistributionFamily family = DistributionFamily::lognormal;
  double a = 0.0;  // lognormal mu | gamma shape | exponential rate | uniform low | poisson mean
  double b = 1.0;  // lognormal sigma | gamma scale | uniform high
  double zero_probability = 0.0;
  bool integer = false;  // floor the drawn value
};

enum class DecisionModel { strict_median, relaxed, noisy_threshold };

struct RoleCounts {
  int min = 0;
  int max = 0;
};

struct SynthConfig {
  std::vector<DisciplineRegistryEntry> disciplines;
  RoleCounts full_applicants{20, 60};
  RoleCounts associate_applicants{40, 120};
  // Exact (full, associate) applicant counts for specific disciplines.
  std::map<std::string, std::pair<int, int>> overrides;
  int professors_per_median = 101;
  double professor_scale = 1.0;
  double full_scale = 1.3;
  double associate_scale = 1.0;
  std::array<ComponentDistribution, 3> bibliometric;
  std::array<ComponentDistribution, 3> non_bibliometric;
  double bibliometric_correlation = 0.7;
  double non_bibliometric_correlation = 0.2;
  DecisionModel decision = DecisionModel::strict_median;
  DecisionModel noise_base = DecisionModel::relaxed;
  double qualify_fraction = 0.5;
  double epsilon = 0.0;
  std::uint64_t seed = 1;
};

// Throws Errc::invalid_config.
void validate_config(const SynthConfig& config);

// JSON document; see data/synth/*.json. Relative "registry" paths resolve
// against base_dir. Throws Errc::invalid_config.
SynthConfig parse_synth_config(std::istream& in,
                               const std::filesystem::path& base_dir = {});
SynthConfig load_synth_config(const std::filesystem::path& path);

// Deterministic for a fixed (config, seed). Medians are the medians of a
// simulated tenured population; decisions follow config.decision.
RoundDataset synthesize_round(const SynthConfig& config, std::uint64_t seed);

}  // namespace asn
