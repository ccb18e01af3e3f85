#pragma once

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <memory>
#include <string>
#include <string_view>

namespace citedistill {

/// Writes a single-member gzip file. The header carries no name or mtime, so
/// identical input gives identical bytes.
class GzipWriter {
 public:
  GzipWriter(const std::filesystem::path& file, int level = 6);
  ~GzipWriter();
  GzipWriter(const GzipWriter&) = delete;
  GzipWriter& operator=(const GzipWriter&) = delete;

  void write(std::string_view data);
  /// Finishes the stream. Safe to call twice.
  void close();

  std::uint64_t bytes_in() const noexcept { return bytes_in_; }
  std::uint64_t bytes_out() const noexcept { return bytes_out_; }

 private:
  struct Deflater;
  void pump(int flush);

  std::filesystem::path path_;
  std::FILE* file_ = nullptr;
  std::unique_ptr<Deflater> deflater_;
  std::string pending_;
  std::string out_;
  std::uint64_t bytes_in_ = 0;
  std::uint64_t bytes_out_ = 0;
};

}  // namespace citedistill
