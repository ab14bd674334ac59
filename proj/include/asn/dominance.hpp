#pragma once

// Pareto dominance between applicants and the Pareto Violation Ratio.

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "asn/thresholds.hpp"
#include "asn/types.hpp"

namespace asn {

struct ApplicationRecord {
  std::string applicant_id;
  std::string last_name;
  std::string first_name;
  DisciplineId discipline;
  Role role = Role::full;
  IndicatorVector indicators;
  bool qualified = false;
};

// Throws Errc::kind_mismatch for vectors of different kinds.
bool pareto_dominates(const IndicatorVector& x, const IndicatorVector& y);

struct PvrResult {
  double ratio = 0.0;
  std::size_t violations = 0;
  std::size_t dominating_pairs = 0;
  // Set when no pair dominates; ratio is then reported as 0.
  bool no_comparable_pairs = true;
  // (p, q) indices into the input: p dominates q, p not qualified, q
  // qualified. Ordered by p, then q.
  std::vector<std::pair<std::size_t, std::size_t>> violating_pairs;
};

// Ordered-pair scan over one (discipline, role) group. Throws
// Errc::discipline_mismatch / Errc::role_mismatch on mixed input.
PvrResult pvr(std::span<const ApplicationRecord> apps);

}  // namespace asn
