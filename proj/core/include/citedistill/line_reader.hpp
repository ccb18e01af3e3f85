#pragma once

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <memory>
#include <string_view>
#include <vector>

namespace citedistill {

/// Streams newline-delimited records out of a part file. Gzip input (one or
/// more members) is detected from the magic bytes, anything else is read as
/// plain text. Memory stays proportional to the longest line.
///
/// Zero-length lines are not records and are never yielded. A final line
/// without a trailing newline is yielded.
class LineReader {
 public:
  explicit LineReader(const std::filesystem::path& part, std::size_t chunk_size = 1 << 16);
  ~LineReader();

  LineReader(const LineReader&) = delete;
  LineReader& operator=(const LineReader&) = delete;

  /// Returns false at end of input. The view stays valid until the next call.
  /// Throws Error(CorruptCompression) on an invalid or truncated gzip stream
  /// and Error(Io) on read failures.
  bool next(std::string_view& line);

  /// Index of the line last returned by next(), counting from 0.
  std::uint64_t line_index() const noexcept { return lines_ - 1; }
  std::uint64_t lines() const noexcept { return lines_; }

  bool compressed() const noexcept { return gzip_; }
  std::uint64_t bytes_compressed() const noexcept { return bytes_read_; }
  std::uint64_t bytes_uncompressed() const noexcept { return bytes_produced_; }
  std::size_t buffer_capacity() const noexcept { return buf_.size(); }

  const std::filesystem::path& path() const noexcept { return path_; }

 private:
  struct Inflater;

  bool fill();
  std::size_t read_raw(char* dst, std::size_t n);
  std::size_t inflate_some(char* dst, std::size_t n);

  std::filesystem::path path_;
  std::FILE* file_ = nullptr;
  bool gzip_ = false;
  bool eof_ = false;
  std::unique_ptr<Inflater> inflater_;
  std::vector<char> in_;   // compressed input window
  std::vector<char> buf_;  // decompressed data
  std::size_t begin_ = 0;
  std::size_t end_ = 0;
  std::size_t scan_ = 0;  // no newline in [begin_, scan_)
  std::size_t chunk_size_;
  std::uint64_t lines_ = 0;
  std::uint64_t bytes_read_ = 0;
  std::uint64_t bytes_produced_ = 0;
};

/// Counts records the way LineReader yields them.
std::uint64_t count_lines(const std::filesystem::path& part);

}  // namespace citedistill
