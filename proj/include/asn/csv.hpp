#pragma once

// Comma-delimited text with RFC 4180 quoting, plus the number formatting
// shared by every file this library writes.

#include <cstddef>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace asn {

struct CsvRow {
  std::size_t line = 0;  // 1-based line on which the record starts
  std::vector<std::string> fields;
};

class CsvReader {
 public:
  explicit CsvReader(std::istream& in) : in_(in) {}

  // False at end of input. Blank lines are skipped. Throws
  // Errc::invalid_argument on an unterminated quoted field.
  bool next(CsvRow& row);

 private:
  std::istream& in_;
  std::size_t line_ = 0;
};

// Quotes the field when it contains a delimiter, quote or line break.
std::string csv_escape(std::string_view field);

void write_csv_row(std::ostream& out, const std::vector<std::string>& fields);

// Shortest representation that parses back to the same double; "NaN" for
// NaN.
std::string format_number(double v);

// Decimal point only; rejects empty text, trailing garbage, inf and nan.
std::optional<double> parse_number(std::string_view text);
std::optional<long long> parse_integer(std::string_view text);

std::string_view trim(std::string_view s);

}  // namespace asn
