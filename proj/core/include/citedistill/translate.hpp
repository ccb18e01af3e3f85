#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "citedistill/id_map.hpp"
#include "citedistill/model.hpp"

namespace citedistill {

enum class DanglingSide { Source, Target, Both };

std::string_view to_string(DanglingSide side) noexcept;

struct Dangling {
  DanglingSide side;
  friend bool operator==(const Dangling&, const Dangling&) = default;
};

using TranslateOutcome = std::variant<CitationEdge, Dangling>;

/// Rewrites a Cites relation onto node ids. Endpoints that were never seen as
/// publications make the edge dangling; no node is created for them.
TranslateOutcome translate_edge(const RelationRecord& rel, const IdMap& map);

/// Same rule over any id lookup, e.g. a sparse fixture table.
using IdLookup = std::function<std::optional<NodeId>(std::string_view)>;
TranslateOutcome translate_edge(const RelationRecord& rel, const IdLookup& lookup);

/// Streaming in-degree tally over a fixed node count.
class DegreeCounter {
 public:
  explicit DegreeCounter(std::size_t node_count) : degree_(node_count, 0) {}

  /// Throws Error(EndpointOutOfRange) if either endpoint is >= node_count.
  void add(const CitationEdge& edge);

  /// Sums another partial tally over the same node count into this one.
  void merge(const DegreeCounter& other);

  const std::vector<std::uint64_t>& table() const noexcept { return degree_; }
  std::uint64_t total() const noexcept { return total_; }

 private:
  std::vector<std::uint64_t> degree_;
  std::uint64_t total_ = 0;
};

/// table[v] = number of edges whose target is v.
std::vector<std::uint64_t> count_in_degree(std::span<const CitationEdge> edges, std::size_t node_count);

}  // namespace citedistill
