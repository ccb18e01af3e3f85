#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "citedistill/dump_layout.hpp"
#include "citedistill/model.hpp"
#include "citedistill/report.hpp"

namespace citedistill {

// Post-run quality control. Every check reads either the run report or the
// emitted files; none of them trusts in-memory pipeline state.

/// Conservation identities over the report counters. Empty means pass.
std::vector<Violation> verify_counts(const RunReport& report);

struct ColumnCompleteness {
  std::string column;
  std::uint64_t non_null = 0;
  std::uint64_t total = 0;
  bool below_threshold = false;

  double ratio() const noexcept {
    return total == 0 ? 1.0 : static_cast<double>(non_null) / static_cast<double>(total);
  }
};

/// nonNull/total for each of the ten publications_large.csv columns; a column
/// is flagged when its ratio is strictly below `threshold`. An empty field is
/// null. Throws Error(FileNotFound) or Error(MalformedCsv).
std::vector<ColumnCompleteness> verify_completeness(const std::filesystem::path& large_file,
                                                    double threshold = 0.0);

struct CrosscheckOptions {
  bool citations_header = false;
  bool publications_header = false;
};

struct CrosscheckResult {
  std::vector<Violation> violations;
  std::uint64_t citation_rows = 0;
  std::uint64_t publication_rows = 0;
  std::uint64_t idmap_rows = 0;
  /// In-degree tallied from the citation rows (entries for in-range targets).
  std::vector<std::uint64_t> in_degree;
  /// The publications citations column when the file carries one.
  std::optional<std::vector<std::uint64_t>> citations_column;
};

/// Streams the three files and checks that publication node ids are exactly
/// 0..n-1 in order, every edge endpoint is one of them, and the id map assigns
/// the same ids. Throws Error(FileNotFound) or Error(MalformedCsv).
CrosscheckResult crosscheck_outputs(const std::filesystem::path& citations,
                                    const std::filesystem::path& publications,
                                    const std::filesystem::path& idmap, const CrosscheckOptions& options = {});

std::vector<Violation> verify_outputs_crosscheck(const std::filesystem::path& citations,
                                                 const std::filesystem::path& publications,
                                                 const std::filesystem::path& idmap,
                                                 const CrosscheckOptions& options = {});

struct ValidateOptions {
  std::filesystem::path output_dir;
  /// When set, the dump is re-read and its record counts compared with the report.
  std::optional<std::filesystem::path> input_root;
  LayoutConfig layout;
  double completeness_threshold = 0.0;
};

struct ValidationResult {
  std::vector<Violation> violations;
  std::vector<ColumnCompleteness> completeness;
  bool passed() const noexcept { return violations.empty(); }
};

/// Runs every check over an output directory using its report.json.
ValidationResult validate_outputs(const ValidateOptions& options);

/// Same, with an in-memory report (used before report.json is written).
ValidationResult validate_outputs(const ValidateOptions& options, const RunReport& report);

}  // namespace citedistill
