#pragma once

// Brute-force references computed from the generator manifest and from the
// raw output files, sharing no code with the pipeline's own translation.

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "citedistill/synthgen.hpp"
#include "test_support.hpp"

namespace testing {

using StringEdge = std::pair<std::string, std::string>;

// Cites relations whose endpoints are both publications, by nested scan
// over a sorted id list.
inline std::vector<StringEdge> manifest_join(const citedistill::Manifest& m) {
  std::vector<std::string> ids;
  for (const auto& p : m.publications) ids.push_back(p.openaire_id.str());
  std::sort(ids.begin(), ids.end());
  const auto known = [&](const std::string& id) { return std::binary_search(ids.begin(), ids.end(), id); };
  std::vector<StringEdge> edges;
  for (const auto& r : m.relations) {
    if (r.rel_type_name != "Cites") continue;
    if (known(r.source) && known(r.target)) edges.emplace_back(r.source, r.target);
  }
  return edges;
}

// Reads idmap.csv and citations.csv and maps every edge back to string ids.
inline std::vector<StringEdge> output_edges(const fs::path& out_dir, bool citations_header = false) {
  const auto idmap = parse_csv(slurp(out_dir / "idmap.csv"));
  std::map<std::string, std::string> by_node;
  for (std::size_t i = 1; i < idmap.size(); ++i) by_node[idmap[i].at(1)] = idmap[i].at(0);
  const auto rows = parse_csv(slurp(out_dir / "citations.csv"));
  std::vector<StringEdge> edges;
  for (std::size_t i = citations_header ? 1 : 0; i < rows.size(); ++i) {
    edges.emplace_back(by_node.at(rows[i].at(0)), by_node.at(rows[i].at(1)));
  }
  return edges;
}

inline std::multiset<StringEdge> as_multiset(const std::vector<StringEdge>& v) { return {v.begin(), v.end()}; }

// Tally of targets in citations.csv, indexed by node id.
inline std::vector<std::uint64_t> brute_in_degree(const fs::path& citations, std::size_t nodes,
                                                  bool header = false) {
  std::vector<std::uint64_t> deg(nodes, 0);
  const auto rows = parse_csv(slurp(citations));
  for (std::size_t i = header ? 1 : 0; i < rows.size(); ++i) ++deg.at(std::stoull(rows[i].at(1)));
  return deg;
}

}  // namespace testing
