#pragma once

#include <cstdint>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

namespace citedistill {

/// True when the field holds a comma, double quote, CR or LF.
bool csv_needs_quoting(std::string_view field) noexcept;

/// Appends `field` with minimal RFC 4180 quoting: wrapped in double quotes
/// only when needed, embedded quotes doubled.
void append_csv_field(std::string& out, std::string_view field);

/// Streaming RFC 4180 reader. Quoted fields may span lines. Rows end at LF
/// (a preceding CR is dropped outside quotes).
class CsvReader {
 public:
  explicit CsvReader(std::istream& in) : in_(in) {}

  /// Returns false at end of input. Throws Error(MalformedCsv) on an
  /// unterminated quote or garbage after a closing quote.
  bool next_row(std::vector<std::string>& fields);

  /// 1-based number of the last row returned.
  std::uint64_t row_number() const noexcept { return rows_; }

  /// Whether the last row was terminated by LF (false only for a final
  /// unterminated row).
  bool last_row_terminated() const noexcept { return terminated_; }

 private:
  std::istream& in_;
  std::uint64_t rows_ = 0;
  bool terminated_ = true;
};

}  // namespace citedistill
