#include "citedistill/translate.hpp"

#include "citedistill/error.hpp"

namespace citedistill {

std::string_view to_string(DanglingSide side) noexcept {
  switch (side) {
    case DanglingSide::Source: return "source";
    case DanglingSide::Target: return "target";
    case DanglingSide::Both: return "both";
  }
  return "unknown";
}

namespace {

TranslateOutcome resolve(std::optional<NodeId> source, std::optional<NodeId> target) {
  if (source && target) return CitationEdge{*source, *target};
  if (!source && !target) return Dangling{DanglingSide::Both};
  return Dangling{source ? DanglingSide::Target : DanglingSide::Source};
}

}  // namespace

TranslateOutcome translate_edge(const RelationRecord& rel, const IdMap& map) {
  return resolve(map.lookup(rel.source.view()), map.lookup(rel.target.view()));
}

TranslateOutcome translate_edge(const RelationRecord& rel, const IdLookup& lookup) {
  return resolve(lookup(rel.source.view()), lookup(rel.target.view()));
}

void DegreeCounter::add(const CitationEdge& edge) {
  const auto n = degree_.size();
  const auto s = static_cast<std::size_t>(edge.source.value());
  const auto t = static_cast<std::size_t>(edge.target.value());
  if (s >= n || t >= n) {
    throw Error(Errc::EndpointOutOfRange, "edge (" + std::to_string(s) + "," + std::to_string(t) +
                                              ") outside node range [0," + std::to_string(n) + ")");
  }
  ++degree_[t];
  ++total_;
}

void DegreeCounter::merge(const DegreeCounter& other) {
  if (other.degree_.size() != degree_.size()) {
    throw Error(Errc::InvalidArgument, "cannot merge degree tallies of different node counts");
  }
  for (std::size_t i = 0; i < degree_.size(); ++i) degree_[i] += other.degree_[i];
  total_ += other.total_;
}

std::vector<std::uint64_t> count_in_degree(std::span<const CitationEdge> edges, std::size_t node_count) {
  DegreeCounter counter(node_count);
  for (const auto& e : edges) counter.add(e);
  return counter.table();
}

}  // namespace citedistill
