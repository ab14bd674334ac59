#pragma once

// Scientific age and the six normalized quantitative indicators computed
// from an applicant's publication list.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "asn/types.hpp"

namespace asn {

enum class PublicationKind {
  journal_paper,
  book,
  book_chapter,
  top_journal_paper,  // also counts as a journal paper
  other,
};

struct Publication {
  std::string id;
  int year = 0;
  PublicationKind kind = PublicationKind::other;
  std::uint32_t citations_source_a = 0;
  std::uint32_t citations_source_b = 0;
};

// Inclusive on both ends.
struct YearWindow {
  int first = 2002;
  int last = 2012;

  [[nodiscard]] bool contains(int year) const {
    return year >= first && year <= last;
  }
};

inline constexpr int kEvaluationYear = 2012;
inline constexpr YearWindow kCountingWindow{2002, 2012};

class PublicationRecord {
 public:
  PublicationRecord() = default;
  // Throws Errc::invalid_publication for non-positive years.
  explicit PublicationRecord(std::vector<Publication> publications);

  [[nodiscard]] std::span<const Publication> publications() const {
    return publications_;
  }
  [[nodiscard]] bool empty() const { return publications_.empty(); }
  [[nodiscard]] std::size_t size() const { return publications_.size(); }

  // Minimum year over all publications, counting window or not.
  // Throws Errc::no_publications when empty.
  [[nodiscard]] int first_publication_year() const;

  // Publications whose year falls inside the window, in original order.
  [[nodiscard]] std::vector<Publication> within(YearWindow window) const;

 private:
  std::vector<Publication> publications_;
  int first_year_ = 0;
};

// max(10, evaluation_year - t0 + 1).
int scientific_age(const PublicationRecord& record, int evaluation_year);

// Larger of the two per-source citation counts.
std::uint32_t citation_count(const Publication& p);

// S(p, t) = 4 / (t - t_p + 1) * C(p, t).
double normalized_citations(const Publication& p, int t);

// Largest h such that h publications have S(p, t) >= h each.
int hc_index(std::span<const Publication> publications, int t);
int hc_index(const PublicationRecord& record, int t);

// (B1, B2, B3): journal papers * 10/SA, citations / SA, hc-index; the
// numerators only count publications inside the window.
IndicatorVector compute_bibliometric(const PublicationRecord& record,
                                     int evaluation_year,
                                     YearWindow window = kCountingWindow);

// (N1, N2, N3): books, journal papers + chapters, top-journal papers; each
// scaled by 10/SA.
IndicatorVector compute_non_bibliometric(const PublicationRecord& record,
                                         int evaluation_year,
                                         YearWindow window = kCountingWindow);

}  // namespace asn
