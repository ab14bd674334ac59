#include "asn/dominance.hpp"

#include "asn/pareto.hpp"

namespace asn {

bool pareto_dominates(const IndicatorVector& x, const IndicatorVector& y) {
  if (x.kind != y.kind) {
    throw Error(Errc::kind_mismatch, "cannot compare indicators of different kinds");
  }
  return dominates(x.values(), y.values());
}

PvrResult pvr(std::span<const ApplicationRecord> apps) {
  PvrResult result;
  if (apps.empty()) return result;

  const auto& first = apps.front();
  for (const auto& a : apps) {
    if (!a.discipline.same_base(first.discipline)) {
      throw Error(Errc::discipline_mismatch,
                  "PVR group mixes " + first.discipline.code() + " and " +
                      a.discipline.code());
    }
    if (a.role != first.role) {
      throw Error(Errc::role_mismatch, "PVR group mixes roles");
    }
    if (a.indicators.kind != first.indicators.kind) {
      throw Error(Errc::kind_mismatch, "PVR group mixes indicator kinds");
    }
  }

  std::vector<std::array<double, 3>> points;
  points.reserve(apps.size());
  for (const auto& a : apps) points.push_back(a.indicators.values());

  for (std::size_t p = 0; p < apps.size(); ++p) {
    for (std::size_t q = 0; q < apps.size(); ++q) {
      if (p == q || !dominates(points[p], points[q])) continue;
      ++result.dominating_pairs;
      if (!apps[p].qualified && apps[q].qualified) {
        ++result.violations;
        result.violating_pairs.emplace_back(p, q);
      }
    }
  }
  result.no_comparable_pairs = result.dominating_pairs == 0;
  if (!result.no_comparable_pairs) {
    result.ratio = static_cast<double>(result.violations) /
                   static_cast<double>(result.dominating_pairs);
  }
  return result;
}

}  // namespace asn
