#pragma once

#include <cstdio>
#include <filesystem>

#include "citedistill/model.hpp"

namespace citedistill {

// Scratch file holding publication fragments in node-id order, so the
// publication tables can be written after the in-degree pass without keeping
// the text fields in memory. Each string is a presence byte, a u32 length and
// the bytes.

class PublicationSpillWriter {
 public:
  explicit PublicationSpillWriter(const std::filesystem::path& file);
  ~PublicationSpillWriter();
  PublicationSpillWriter(const PublicationSpillWriter&) = delete;
  PublicationSpillWriter& operator=(const PublicationSpillWriter&) = delete;

  void write(const PublicationFragment& frag);
  void close();

 private:
  void put(const std::string* s);
  std::filesystem::path path_;
  std::FILE* file_ = nullptr;
};

class PublicationSpillReader {
 public:
  explicit PublicationSpillReader(const std::filesystem::path& file);
  ~PublicationSpillReader();
  PublicationSpillReader(const PublicationSpillReader&) = delete;
  PublicationSpillReader& operator=(const PublicationSpillReader&) = delete;

  /// Returns std::nullopt at end of file; throws Error(Format) on truncation.
  std::optional<PublicationFragment> next();

 private:
  bool get(std::optional<std::string>& out);
  std::filesystem::path path_;
  std::FILE* file_ = nullptr;
};

}  // namespace citedistill
