#include "citedistill/emit.hpp"

#include <charconv>

#include "citedistill/csv.hpp"
#include "citedistill/error.hpp"

namespace citedistill {
namespace {

constexpr std::size_t kFlushAt = 1 << 16;

template <class Int>
void append_int(std::string& out, Int v) {
  char buf[24];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  out.append(buf, ptr);
}

void append_optional(std::string& out, const std::optional<std::string>& v) {
  if (v) append_csv_field(out, *v);
}

void append_edge(std::string& out, const CitationEdge& e) {
  append_int(out, e.source.value());
  out.push_back(',');
  append_int(out, e.target.value());
  out.push_back('\n');
}

void append_publication(std::string& out, const PublicationRecord& r, PublicationsFormat format) {
  append_int(out, r.node_id.value());
  out.push_back(',');
  append_optional(out, r.fields.doi);
  if (format == PublicationsFormat::WithCitations) {
    out.push_back(',');
    append_int(out, r.citations);
  }
  out.push_back('\n');
}

void append_publication_large(std::string& out, const PublicationRecord& r) {
  const auto& f = r.fields;
  append_int(out, r.node_id.value());
  out.push_back(',');
  append_csv_field(out, f.openaire_id.view());
  out.push_back(',');
  append_optional(out, f.doi);
  out.push_back(',');
  append_optional(out, f.title);
  out.push_back(',');
  append_optional(out, f.authors);
  out.push_back(',');
  append_optional(out, f.description);
  out.push_back(',');
  append_optional(out, f.date);
  out.push_back(',');
  append_optional(out, f.container);
  out.push_back(',');
  append_int(out, r.citations);
  out.push_back(',');
  append_optional(out, f.language);
  out.push_back('\n');
}

}  // namespace

std::string format_edge_row(const CitationEdge& edge) {
  std::string s;
  append_edge(s, edge);
  s.pop_back();
  return s;
}

std::string format_publication_row(const PublicationRecord& rec, PublicationsFormat format) {
  std::string s;
  append_publication(s, rec, format);
  s.pop_back();
  return s;
}

std::string format_publication_large_row(const PublicationRecord& rec) {
  std::string s;
  append_publication_large(s, rec);
  s.pop_back();
  return s;
}

std::string publications_header(PublicationsFormat format) {
  return format == PublicationsFormat::Minimal ? "nodeId,doi" : "nodeId,doi,citations";
}

std::string publications_large_header() {
  std::string s;
  for (std::size_t i = 0; i < kLargeColumnNames.size(); ++i) {
    if (i) s.push_back(',');
    s.append(kLargeColumnNames[i]);
  }
  return s;
}

RowSink::~RowSink() {
  if (!buf_.empty()) out_.write(buf_.data(), static_cast<std::streamsize>(buf_.size()));
}

void RowSink::append(std::string_view text) {
  buf_.append(text);
  maybe_flush();
}

void RowSink::maybe_flush() {
  if (buf_.size() >= kFlushAt) flush();
}

void RowSink::flush() {
  out_.write(buf_.data(), static_cast<std::streamsize>(buf_.size()));
  bytes_ += buf_.size();
  buf_.clear();
  out_.flush();
  if (!out_) throw Error(Errc::Io, "write to output stream failed");
}

CitationsWriter::CitationsWriter(std::ostream& out, bool header) : sink_(out) {
  if (header) sink_.append("source,target\n");
}

void CitationsWriter::write(const CitationEdge& edge) {
  append_edge(sink_.buffer(), edge);
  if (sink_.buffer().size() >= kFlushAt) sink_.flush();
}

std::uint64_t CitationsWriter::finish() {
  sink_.flush();
  return sink_.bytes();
}

PublicationsWriter::PublicationsWriter(std::ostream& out, PublicationsFormat format, bool header)
    : sink_(out), format_(format) {
  if (header) {
    sink_.append(publications_header(format));
    sink_.append("\n");
  }
}

void PublicationsWriter::write(const PublicationRecord& rec) {
  append_publication(sink_.buffer(), rec, format_);
  if (sink_.buffer().size() >= kFlushAt) sink_.flush();
}

std::uint64_t PublicationsWriter::finish() {
  sink_.flush();
  return sink_.bytes();
}

PublicationsLargeWriter::PublicationsLargeWriter(std::ostream& out) : sink_(out) {
  sink_.append(publications_large_header());
  sink_.append("\n");
}

void PublicationsLargeWriter::write(const PublicationRecord& rec) {
  append_publication_large(sink_.buffer(), rec);
  if (sink_.buffer().size() >= kFlushAt) sink_.flush();
}

std::uint64_t PublicationsLargeWriter::finish() {
  sink_.flush();
  return sink_.bytes();
}

std::uint64_t write_citations(std::span<const CitationEdge> edges, std::ostream& out, bool header) {
  CitationsWriter w(out, header);
  for (const auto& e : edges) w.write(e);
  return w.finish();
}

std::uint64_t write_publications(std::span<const PublicationRecord> records, std::ostream& out,
                                 PublicationsFormat format, bool header) {
  PublicationsWriter w(out, format, header);
  for (const auto& r : records) w.write(r);
  return w.finish();
}

std::uint64_t write_publications_large(std::span<const PublicationRecord> records, std::ostream& out) {
  PublicationsLargeWriter w(out);
  for (const auto& r : records) w.write(r);
  return w.finish();
}

}  // namespace citedistill
