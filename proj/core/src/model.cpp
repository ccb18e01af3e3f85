#include "citedistill/model.hpp"

#include "citedistill/error.hpp"

namespace citedistill {

bool OpenAireId::is_valid(std::string_view value) noexcept {
  return !value.empty() && value.find('\n') == std::string_view::npos;
}

OpenAireId::OpenAireId(std::string value) : value_(std::move(value)) {
  if (!is_valid(value_)) {
    throw Error(Errc::InvalidArgument, "OpenAIRE id must be non-empty and newline-free");
  }
}

NodeId NodeId::from(std::int64_t value) {
  if (value < 0) throw Error(Errc::InvalidArgument, "negative node id " + std::to_string(value));
  if (value >= kLimit) {
    throw Error(Errc::IdSpaceExhausted, "node id " + std::to_string(value) + " exceeds int32 range");
  }
  return NodeId(static_cast<std::int32_t>(value));
}

const std::optional<std::string>* optional_field(const PublicationFragment& f, Column c) noexcept {
  switch (c) {
    case Column::Doi: return &f.doi;
    case Column::Title: return &f.title;
    case Column::Authors: return &f.authors;
    case Column::Description: return &f.description;
    case Column::Date: return &f.date;
    case Column::Container: return &f.container;
    case Column::Language: return &f.language;
    default: return nullptr;
  }
}

std::string_view to_string(PublicationsFormat f) noexcept {
  return f == PublicationsFormat::Minimal ? "minimal" : "with-citations";
}

std::optional<PublicationsFormat> parse_publications_format(std::string_view s) noexcept {
  if (s == "minimal") return PublicationsFormat::Minimal;
  if (s == "with-citations") return PublicationsFormat::WithCitations;
  return std::nullopt;
}

double RunReport::compression_ratio() const noexcept {
  if (bytes_in_compressed == 0) return 0.0;
  return static_cast<double>(bytes_in_uncompressed) / static_cast<double>(bytes_in_compressed);
}

namespace {
std::uint64_t citations_bytes(const RunReport& r) {
  auto it = r.bytes_out_by_file.find("citations.csv");
  return it == r.bytes_out_by_file.end() ? 0 : it->second;
}
}  // namespace

double RunReport::bytes_per_emitted_edge() const noexcept {
  if (edges_emitted == 0) return 0.0;
  return static_cast<double>(citations_bytes(*this)) / static_cast<double>(edges_emitted);
}

double RunReport::relation_json_to_edge_row_ratio() const noexcept {
  const auto out = citations_bytes(*this);
  if (out == 0) return 0.0;
  return static_cast<double>(cites_relation_bytes) / static_cast<double>(out);
}

}  // namespace citedistill
