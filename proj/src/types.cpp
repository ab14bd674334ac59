#include "asn/types.hpp"

#include <cmath>

namespace asn {

std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::no_publications: return "no publications";
    case Errc::invalid_publication: return "invalid publication";
    case Errc::citation_before_publication:
      return "citation time precedes publication";
    case Errc::invalid_window: return "invalid year window";
    case Errc::no_population: return "no population";
    case Errc::kind_mismatch: return "indicator/threshold kind mismatch";
    case Errc::discipline_mismatch: return "discipline mismatch";
    case Errc::role_mismatch: return "role mismatch";
    case Errc::duplicate_entry: return "duplicate entry";
    case Errc::invalid_discipline: return "invalid discipline code";
    case Errc::invalid_argument: return "invalid argument";
    case Errc::length_mismatch: return "length mismatch";
    case Errc::insufficient_data: return "insufficient data";
    case Errc::invalid_counts: return "invalid counts";
    case Errc::invalid_config: return "invalid configuration";
    case Errc::missing_column: return "missing column";
    case Errc::unresolved_reference: return "unresolved reference";
    case Errc::io_error: return "I/O error";
  }
  return "unknown error";
}

std::string_view kind_code(IndicatorKind kind) {
  return kind == IndicatorKind::bibliometric ? "B" : "NB";
}

IndicatorKind parse_kind_code(std::string_view code) {
  if (code == "B") return IndicatorKind::bibliometric;
  if (code == "NB") return IndicatorKind::non_bibliometric;
  throw Error(Errc::invalid_argument,
              "unknown indicator kind '" + std::string(code) + "'");
}

int role_code(Role role) { return role == Role::full ? 1 : 2; }

Role role_from_code(int code) {
  if (code == 1) return Role::full;
  if (code == 2) return Role::associate;
  throw Error(Errc::invalid_argument,
              "unknown role code " + std::to_string(code));
}

std::string_view role_suffix(Role role) {
  return role == Role::full ? "F" : "A";
}

double IndicatorVector::operator[](std::size_t i) const {
  switch (i) {
    case 0: return ind1;
    case 1: return ind2;
    case 2: return ind3;
    default: throw std::out_of_range("indicator index out of range");
  }
}

IndicatorVector make_indicators(double ind1, double ind2, double ind3,
                                IndicatorKind kind) {
  for (double v : {ind1, ind2, ind3}) {
    if (!std::isfinite(v) || v < 0.0) {
      throw Error(Errc::invalid_argument,
                  "indicator values must be finite and non-negative");
    }
  }
  return IndicatorVector{ind1, ind2, ind3, kind};
}

}  // namespace asn
