#pragma once

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <vector>

#include "citedistill/model.hpp"

namespace citedistill {

/// Append-only binary edge file: 8 bytes per edge, little-endian int32 pairs.
class EdgeSpillWriter {
 public:
  explicit EdgeSpillWriter(const std::filesystem::path& file);
  ~EdgeSpillWriter();
  EdgeSpillWriter(const EdgeSpillWriter&) = delete;
  EdgeSpillWriter& operator=(const EdgeSpillWriter&) = delete;

  void write(const CitationEdge& edge);
  void close();
  std::uint64_t count() const noexcept { return count_; }

 private:
  std::filesystem::path path_;
  std::FILE* file_ = nullptr;
  std::uint64_t count_ = 0;
};

class EdgeSpillReader {
 public:
  explicit EdgeSpillReader(const std::filesystem::path& file);
  ~EdgeSpillReader();
  EdgeSpillReader(const EdgeSpillReader&) = delete;
  EdgeSpillReader& operator=(const EdgeSpillReader&) = delete;

  bool next(CitationEdge& edge);

 private:
  std::filesystem::path path_;
  std::FILE* file_ = nullptr;
};

struct DuplicateScan {
  /// Occurrences of an edge after its first one.
  std::uint64_t duplicates = 0;
  /// Stream positions of those later occurrences, ascending. Filled only
  /// when requested.
  std::vector<std::uint64_t> duplicate_positions;
  std::uint64_t runs = 0;
};

/// Finds repeated (source, target) pairs in a spill file with an external
/// sort: sorted runs of at most `memory_budget` bytes go to `scratch_dir`,
/// then a k-way merge walks equal pairs. Memory is O(budget + duplicates).
DuplicateScan scan_duplicates(const std::filesystem::path& spill, const std::filesystem::path& scratch_dir,
                              std::size_t memory_budget, bool collect_positions);

}  // namespace citedistill
