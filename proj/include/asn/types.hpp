#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace asn {

// Error categories surfaced by the library. Each throwing operation reports
// exactly one of these so callers (and tests) can branch without parsing
// message text.
enum class Errc {
  no_publications,
  invalid_publication,
  citation_before_publication,
  invalid_window,
  no_population,
  kind_mismatch,
  discipline_mismatch,
  role_mismatch,
  duplicate_entry,
  invalid_discipline,
  invalid_argument,
  length_mismatch,
  insufficient_data,
  invalid_counts,
  invalid_config,
  missing_column,
  unresolved_reference,
  io_error,
};

std::string_view to_string(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  [[nodiscard]] Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

// Official terminology: "bibliometric" disciplines use citation-based
// indicators (B1-B3), "non-bibliometric" ones use paper counts (N1-N3).
enum class IndicatorKind { bibliometric, non_bibliometric };

// Short codes used in every delimited file: "B" / "NB".
std::string_view kind_code(IndicatorKind kind);
IndicatorKind parse_kind_code(std::string_view code);

enum class Role { full, associate };

// Role code 1 = full professor, 2 = associate professor.
int role_code(Role role);
Role role_from_code(int code);
std::string_view role_suffix(Role role);  // "F" / "A"

inline constexpr std::array<Role, 2> kRoles = {Role::full, Role::associate};

// (ind1, ind2, ind3) of one applicant; interpretation depends on kind.
struct IndicatorVector {
  double ind1 = 0.0;
  double ind2 = 0.0;
  double ind3 = 0.0;
  IndicatorKind kind = IndicatorKind::bibliometric;

  [[nodiscard]] std::array<double, 3> values() const {
    return {ind1, ind2, ind3};
  }
  [[nodiscard]] double operator[](std::size_t i) const;

  friend bool operator==(const IndicatorVector&,
                         const IndicatorVector&) = default;
};

// Throws Errc::invalid_argument unless every component is finite and >= 0.
IndicatorVector make_indicators(double ind1, double ind2, double ind3,
                                IndicatorKind kind);

}  // namespace asn
