#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>

#include "citedistill/dump_layout.hpp"
#include "citedistill/model.hpp"
#include "citedistill/validate.hpp"

namespace citedistill {

struct DistillOptions {
  std::filesystem::path input;
  std::filesystem::path output;
  LayoutConfig layout;
  bool dedup_edges = false;
  bool headers = false;
  PublicationsFormat publications_format = PublicationsFormat::Minimal;
  unsigned threads = 1;
  bool memory_report = false;
  bool skip_large = false;
  double completeness_threshold = 0.0;
  /// Scratch space for spill files; defaults to $CITEDISTILL_TMPDIR, then to
  /// the staging directory inside `output`.
  std::optional<std::filesystem::path> tmpdir;
  /// Memory for each sorted run of the duplicate-edge scan.
  std::size_t sort_memory = std::size_t{64} << 20;
  std::size_t batch_size = 2048;
  /// Called once per finished part file.
  std::function<void(const std::string&)> progress;
};

struct DistillResult {
  RunReport report;
  ValidationResult validation;
};

inline constexpr const char* kTmpDirEnv = "CITEDISTILL_TMPDIR";

/// The whole pipeline:
///   pass 1  publication parts -> IdMap + publication spill (node-id order)
///   pass 2  relation parts    -> Cites filter -> edge spill (stream order)
///   pass 3  external sort of the edge spill to count or drop duplicates
///   pass 4  edge spill        -> citations.csv + in-degree table
///   pass 5  publication spill -> publications.csv (+ publications_large.csv)
/// then validation over the written files and report.json. Files are written
/// to a staging directory and moved into `output` only if no error was thrown;
/// a failed validation still promotes the files (see result.validation).
///
/// Memory is O(nodes) plus bounded buffers; the edge stream is never held.
DistillResult distill(const DistillOptions& options);

/// Peak resident set size of this process image in bytes (VmHWM, falling
/// back to getrusage), or 0 if unknown.
std::uint64_t peak_rss_bytes();

}  // namespace citedistill
