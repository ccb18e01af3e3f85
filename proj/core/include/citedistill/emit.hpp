#pragma once

#include <cstdint>
#include <ostream>
#include <span>
#include <string>

#include "citedistill/model.hpp"

namespace citedistill {

// Output formats. All files are UTF-8 with LF line endings and no BOM.
//
//   citations.csv           "source,target" per edge, no header unless asked
//   publications.csv        "nodeId,doi" (Minimal) or "nodeId,doi,citations"
//   publications_large.csv  header + the ten columns of kLargeColumnNames
//
// Fields are quoted only when they contain a comma, quote, CR or LF. Absent
// optionals render as empty fields.

inline constexpr std::string_view kCitationsFile = "citations.csv";
inline constexpr std::string_view kPublicationsFile = "publications.csv";
inline constexpr std::string_view kPublicationsLargeFile = "publications_large.csv";
inline constexpr std::string_view kIdMapFile = "idmap.csv";
inline constexpr std::string_view kReportFile = "report.json";

std::string format_edge_row(const CitationEdge& edge);
std::string format_publication_row(const PublicationRecord& rec, PublicationsFormat format);
std::string format_publication_large_row(const PublicationRecord& rec);
std::string publications_header(PublicationsFormat format);
std::string publications_large_header();

/// Buffered row writer that tracks how many bytes went to the sink.
class RowSink {
 public:
  explicit RowSink(std::ostream& out) : out_(out) {}
  ~RowSink();
  RowSink(const RowSink&) = delete;
  RowSink& operator=(const RowSink&) = delete;

  void append(std::string_view text);
  std::string& buffer() noexcept { return buf_; }
  /// Flushes; throws Error(Io) if the stream failed.
  void flush();
  std::uint64_t bytes() const noexcept { return bytes_ + buf_.size(); }

 private:
  void maybe_flush();
  std::ostream& out_;
  std::string buf_;
  std::uint64_t bytes_ = 0;
};

class CitationsWriter {
 public:
  CitationsWriter(std::ostream& out, bool header);
  void write(const CitationEdge& edge);
  std::uint64_t finish();

 private:
  RowSink sink_;
};

class PublicationsWriter {
 public:
  PublicationsWriter(std::ostream& out, PublicationsFormat format, bool header);
  void write(const PublicationRecord& rec);
  std::uint64_t finish();

 private:
  RowSink sink_;
  PublicationsFormat format_;
};

class PublicationsLargeWriter {
 public:
  explicit PublicationsLargeWriter(std::ostream& out);
  void write(const PublicationRecord& rec);
  std::uint64_t finish();

 private:
  RowSink sink_;
};

/// Returns the byte count written.
std::uint64_t write_citations(std::span<const CitationEdge> edges, std::ostream& out, bool header = false);
std::uint64_t write_publications(std::span<const PublicationRecord> records, std::ostream& out,
                                 PublicationsFormat format = PublicationsFormat::Minimal,
                                 bool header = false);
std::uint64_t write_publications_large(std::span<const PublicationRecord> records, std::ostream& out);

}  // namespace citedistill
