#pragma once

#include <filesystem>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "citedistill/model.hpp"

namespace citedistill {

/// One failed quality-control identity.
struct Violation {
  std::string identity;
  std::string detail;
  friend bool operator==(const Violation&, const Violation&) = default;
};

/// Serializes the report as pretty JSON (stable key order). When
/// `violations` is given, a "validation" section is appended. Returns bytes
/// written; throws Error(Io) on stream failure.
std::uint64_t write_report(const RunReport& report, std::ostream& out,
                           const std::vector<Violation>* violations = nullptr);

/// Parses a report written by write_report. Throws Error(Format) on bad JSON
/// or missing counters and Error(FileNotFound) for a missing file.
RunReport read_report(std::istream& in);
RunReport read_report(const std::filesystem::path& file);

/// A violation as a single JSON line: {"kind":"violation","identity":...,"detail":...}
std::string violation_json_line(const Violation& v);

}  // namespace citedistill
