#include "asn/indicators.hpp"

#include <algorithm>
#include <functional>
#include <iterator>

namespace asn {

namespace {

void check_window(YearWindow window) {
  if (window.first > window.last) {
    throw Error(Errc::invalid_window,
                "year window " + std::to_string(window.first) + "-" +
                    std::to_string(window.last) + " is empty");
  }
}

void check_not_after(const PublicationRecord& record, int evaluation_year) {
  for (const auto& p : record.publications()) {
    if (p.year > evaluation_year) {
      throw Error(Errc::citation_before_publication,
                  "publication '" + p.id + "' (" + std::to_string(p.year) +
                      ") is later than evaluation year " +
                      std::to_string(evaluation_year));
    }
  }
}

bool is_journal_paper(PublicationKind kind) {
  return kind == PublicationKind::journal_paper ||
         kind == PublicationKind::top_journal_paper;
}

}  // namespace

PublicationRecord::PublicationRecord(std::vector<Publication> publications)
    : publications_(std::move(publications)) {
  for (const auto& p : publications_) {
    if (p.year <= 0) {
      throw Error(Errc::invalid_publication,
                  "publication '" + p.id + "' has non-positive year");
    }
  }
  if (!publications_.empty()) {
    first_year_ = std::min_element(publications_.begin(), publications_.end(),
                                   [](const auto& a, const auto& b) {
                                     return a.year < b.year;
                                   })
                      ->year;
  }
}

int PublicationRecord::first_publication_year() const {
  if (publications_.empty()) {
    throw Error(Errc::no_publications, "no publications");
  }
  return first_year_;
}

std::vector<Publication> PublicationRecord::within(YearWindow window) const {
  std::vector<Publication> out;
  std::copy_if(publications_.begin(), publications_.end(),
               std::back_inserter(out),
               [&](const Publication& p) { return window.contains(p.year); });
  return out;
}

int scientific_age(const PublicationRecord& record, int evaluation_year) {
  const int t0 = record.first_publication_year();
  if (evaluation_year < t0) {
    throw Error(Errc::citation_before_publication,
                "evaluation year " + std::to_string(evaluation_year) +
                    " precedes first publication " + std::to_string(t0));
  }
  return std::max(10, evaluation_year - t0 + 1);
}

std::uint32_t citation_count(const Publication& p) {
  return std::max(p.citations_source_a, p.citations_source_b);
}

double normalized_citations(const Publication& p, int t) {
  if (t < p.year) {
    throw Error(Errc::citation_before_publication,
                "citation time " + std::to_string(t) +
                    " precedes publication year " + std::to_string(p.year));
  }
  return 4.0 / static_cast<double>(t - p.year + 1) *
         static_cast<double>(citation_count(p));
}

int hc_index(std::span<const Publication> publications, int t) {
  std::vector<double> scores;
  scores.reserve(publications.size());
  for (const auto& p : publications) {
    scores.push_back(normalized_citations(p, t));
  }
  std::sort(scores.begin(), scores.end(), std::greater<>());
  // scores is non-increasing, so the feasible h form a prefix.
  int h = 0;
  while (h < static_cast<int>(scores.size()) &&
         scores[static_cast<std::size_t>(h)] >= static_cast<double>(h + 1)) {
    ++h;
  }
  return h;
}

int hc_index(const PublicationRecord& record, int t) {
  return hc_index(record.publications(), t);
}

IndicatorVector compute_bibliometric(const PublicationRecord& record,
                                     int evaluation_year, YearWindow window) {
  check_window(window);
  const double age = scientific_age(record, evaluation_year);
  check_not_after(record, evaluation_year);

  const auto counted = record.within(window);
  std::size_t papers = 0;
  double citations = 0.0;
  for (const auto& p : counted) {
    if (is_journal_paper(p.kind)) ++papers;
    citations += citation_count(p);
  }
  return IndicatorVector{
      static_cast<double>(papers) * 10.0 / age,
      citations / age,
      static_cast<double>(hc_index(counted, evaluation_year)),
      IndicatorKind::bibliometric,
  };
}

IndicatorVector compute_non_bibliometric(const PublicationRecord& record,
                                         int evaluation_year,
                                         YearWindow window) {
  check_window(window);
  const double age = scientific_age(record, evaluation_year);
  check_not_after(record, evaluation_year);

  std::size_t books = 0;
  std::size_t papers_and_chapters = 0;
  std::size_t top = 0;
  for (const auto& p : record.publications()) {
    if (!window.contains(p.year)) continue;
    switch (p.kind) {
      case PublicationKind::book:
        ++books;
        break;
      case PublicationKind::top_journal_paper:
        ++top;
        ++papers_and_chapters;
        break;
      case PublicationKind::journal_paper:
      case PublicationKind::book_chapter:
        ++papers_and_chapters;
        break;
      case PublicationKind::other:
        break;
    }
  }
  const double scale = 10.0 / age;
  return IndicatorVector{
      static_cast<double>(books) * scale,
      static_cast<double>(papers_and_chapters) * scale,
      static_cast<double>(top) * scale,
      IndicatorKind::non_bibliometric,
  };
}

}  // namespace asn
