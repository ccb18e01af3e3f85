#include "citedistill/csv.hpp"

#include "citedistill/error.hpp"

namespace citedistill {

bool csv_needs_quoting(std::string_view field) noexcept {
  return field.find_first_of(",\"\r\n") != std::string_view::npos;
}

void append_csv_field(std::string& out, std::string_view field) {
  if (!csv_needs_quoting(field)) {
    out.append(field);
    return;
  }
  out.push_back('"');
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
}

bool CsvReader::next_row(std::vector<std::string>& fields) {
  using Traits = std::char_traits<char>;
  std::streambuf* sb = in_.rdbuf();
  fields.clear();

  int c = sb->sbumpc();
  if (c == Traits::eof()) return false;

  ++rows_;
  std::string field;
  bool quoted = false;      // inside quotes
  bool was_quoted = false;  // current field started with a quote
  bool field_start = true;

  for (;; c = sb->sbumpc()) {
    if (c == Traits::eof()) {
      if (quoted) {
        throw Error(Errc::MalformedCsv, "unterminated quoted field in row " + std::to_string(rows_));
      }
      fields.push_back(std::move(field));
      terminated_ = false;
      return true;
    }
    const char ch = static_cast<char>(c);
    if (quoted) {
      if (ch == '"') {
        if (sb->sgetc() == '"') {
          sb->sbumpc();
          field.push_back('"');
        } else {
          quoted = false;
        }
      } else {
        field.push_back(ch);
      }
      continue;
    }
    if (ch == '"' && field_start) {
      quoted = was_quoted = true;
      field_start = false;
      continue;
    }
    if (ch == ',') {
      fields.push_back(std::move(field));
      field.clear();
      field_start = true;
      was_quoted = false;
      continue;
    }
    if (ch == '\n') {
      if (!was_quoted && !field.empty() && field.back() == '\r') field.pop_back();
      fields.push_back(std::move(field));
      terminated_ = true;
      return true;
    }
    if (was_quoted) {
      if (ch == '\r' && sb->sgetc() == '\n') continue;
      throw Error(Errc::MalformedCsv, "unexpected character after closing quote in row " +
                                          std::to_string(rows_));
    }
    field_start = false;
    field.push_back(ch);
  }
}

}  // namespace citedistill
