#pragma once

// Shared domain types for the distillation pipeline. No I/O lives here.

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace citedistill {

/// Opaque product identifier from the dump, e.g. "doi_________::7e8d84fc...".
/// Non-empty, newline-free, compared byte for byte.
class OpenAireId {
 public:
  /// Throws Error(InvalidArgument) when the value is empty or holds a newline.
  explicit OpenAireId(std::string value);

  static bool is_valid(std::string_view value) noexcept;

  const std::string& str() const noexcept { return value_; }
  std::string_view view() const noexcept { return value_; }

  friend bool operator==(const OpenAireId&, const OpenAireId&) = default;
  friend auto operator<=>(const OpenAireId&, const OpenAireId&) = default;

 private:
  std::string value_;
};

/// Dense signed 32-bit node identifier; always in [0, 2^31).
class NodeId {
 public:
  static constexpr std::int64_t kLimit = std::int64_t{1} << 31;

  constexpr NodeId() noexcept = default;

  /// Throws Error(InvalidArgument) for negatives and Error(IdSpaceExhausted) for
  /// values at or beyond 2^31. Never wraps.
  static NodeId from(std::int64_t value);

  constexpr std::int32_t value() const noexcept { return value_; }

  friend constexpr bool operator==(NodeId, NodeId) noexcept = default;
  friend constexpr auto operator<=>(NodeId, NodeId) noexcept = default;

 private:
  constexpr explicit NodeId(std::int32_t v) noexcept : value_(v) {}
  std::int32_t value_ = 0;
};

/// "source Cites target".
struct CitationEdge {
  NodeId source;
  NodeId target;

  bool is_self_loop() const noexcept { return source == target; }

  friend constexpr bool operator==(const CitationEdge&, const CitationEdge&) noexcept = default;
  friend constexpr auto operator<=>(const CitationEdge&, const CitationEdge&) noexcept = default;
};

/// Everything parsed out of one publication line; nodeId and citations are
/// assigned later in the pipeline.
struct PublicationFragment {
  explicit PublicationFragment(OpenAireId id) : openaire_id(std::move(id)) {}

  OpenAireId openaire_id;
  std::optional<std::string> doi;
  std::optional<std::string> title;
  std::optional<std::string> authors;
  std::optional<std::string> description;
  std::optional<std::string> date;
  std::optional<std::string> container;
  std::optional<std::string> language;

  friend bool operator==(const PublicationFragment&, const PublicationFragment&) = default;
};

struct PublicationRecord {
  NodeId node_id;
  PublicationFragment fields;
  std::uint64_t citations = 0;

  friend bool operator==(const PublicationRecord&, const PublicationRecord&) = default;
};

struct RelationRecord {
  OpenAireId source;
  OpenAireId target;
  std::string rel_type_name;
  std::string rel_type_type;

  friend bool operator==(const RelationRecord&, const RelationRecord&) = default;
};

/// Columns of publications_large.csv, in file order.
enum class Column : std::uint8_t {
  NodeId,
  OpenaireId,
  Doi,
  Title,
  Authors,
  Description,
  Date,
  Container,
  Citations,
  Language,
};

inline constexpr std::array<std::string_view, 10> kLargeColumnNames = {
    "nodeId", "openaireId", "doi",       "title",     "authors",
    "description", "date", "container", "citations", "language"};

/// The optional field a column maps to, or nullptr for the always-present ones.
const std::optional<std::string>* optional_field(const PublicationFragment& f, Column c) noexcept;

enum class PublicationsFormat { Minimal, WithCitations };

std::string_view to_string(PublicationsFormat f) noexcept;
std::optional<PublicationsFormat> parse_publications_format(std::string_view s) noexcept;

/// Counters proving every input line is accounted for.
struct RunReport {
  // publications
  std::uint64_t publications_seen = 0;
  std::uint64_t publications_kept = 0;
  std::uint64_t publications_skipped_malformed = 0;
  std::uint64_t publications_duplicate_id = 0;

  // relations
  std::uint64_t relations_seen = 0;
  std::uint64_t relations_cites = 0;
  std::uint64_t relations_other_type = 0;
  std::uint64_t relations_skipped_malformed = 0;
  std::uint64_t relations_cites_non_citation_type = 0;  // name "Cites", type != "citation"
  std::uint64_t relations_citation_type_not_cites = 0;  // type "citation", name != "Cites"

  // edges
  std::uint64_t edges_emitted = 0;
  std::uint64_t edges_dangling_dropped = 0;
  std::uint64_t edges_dangling_source = 0;
  std::uint64_t edges_dangling_target = 0;
  std::uint64_t edges_dangling_both = 0;
  std::uint64_t edges_self_loop = 0;
  std::uint64_t edges_duplicate = 0;
  bool dedup_edges = false;

  // parts
  std::uint64_t publication_parts = 0;
  std::uint64_t relation_parts = 0;
  std::vector<std::string> corrupt_parts;

  // bytes
  std::uint64_t bytes_in_compressed = 0;
  std::uint64_t bytes_in_uncompressed = 0;
  std::uint64_t publication_bytes_uncompressed = 0;
  std::uint64_t relation_bytes_uncompressed = 0;
  std::uint64_t cites_relation_bytes = 0;  // uncompressed bytes of Cites lines, newline included
  std::uint64_t bytes_out = 0;
  std::map<std::string, std::uint64_t> bytes_out_by_file;

  std::map<std::string, std::uint64_t> per_column_null_counts;
  std::map<std::string, std::uint64_t> skip_reasons;

  // run options needed to interpret the output files
  bool headers = false;
  PublicationsFormat publications_format = PublicationsFormat::Minimal;
  bool skip_large = false;

  std::optional<std::uint64_t> peak_rss_bytes;

  double compression_ratio() const noexcept;
  double bytes_per_emitted_edge() const noexcept;
  /// Uncompressed Cites JSON bytes per byte of citations.csv.
  double relation_json_to_edge_row_ratio() const noexcept;

  friend bool operator==(const RunReport&, const RunReport&) = default;
};

}  // namespace citedistill
