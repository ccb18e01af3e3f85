#include "citedistill/validate.hpp"

#include <charconv>
#include <fstream>
#include <map>

#include "citedistill/csv.hpp"
#include "citedistill/emit.hpp"
#include "citedistill/error.hpp"
#include "citedistill/line_reader.hpp"

namespace fs = std::filesystem;

namespace citedistill {
namespace {

constexpr std::size_t kSamplesPerIdentity = 5;

// Keeps the first few violations per identity and summarizes the rest.
class ViolationLog {
 public:
  void add(std::string identity, std::string detail) {
    auto& n = counts_[identity];
    if (n++ < kSamplesPerIdentity) out_.push_back({std::move(identity), std::move(detail)});
  }

  std::vector<Violation> take() {
    for (const auto& [identity, n] : counts_) {
      if (n > kSamplesPerIdentity) {
        out_.push_back({identity, std::to_string(n - kSamplesPerIdentity) + " more occurrences"});
      }
    }
    counts_.clear();
    return std::move(out_);
  }

 private:
  std::vector<Violation> out_;
  std::map<std::string, std::uint64_t> counts_;
};

std::optional<std::uint64_t> parse_u64(std::string_view s) {
  std::uint64_t v = 0;
  if (s.empty()) return std::nullopt;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

std::ifstream open_input(const fs::path& p) {
  std::error_code ec;
  if (!fs::is_regular_file(p, ec)) throw Error(Errc::FileNotFound, p.string());
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error(Errc::Io, "cannot open " + p.string());
  return in;
}

std::string mismatch(std::string_view what, std::uint64_t found, std::string_view ref, std::uint64_t expected) {
  return std::string(what) + " = " + std::to_string(found) + " but " + std::string(ref) + " = " +
         std::to_string(expected);
}

struct LargeScan {
  std::vector<ColumnCompleteness> columns;
  std::vector<std::uint64_t> citations;
  std::uint64_t rows = 0;
  std::vector<Violation> violations;
};

LargeScan scan_large(const fs::path& file, double threshold) {
  auto in = open_input(file);
  CsvReader reader(in);
  std::vector<std::string> row;

  if (!reader.next_row(row) || row.size() != kLargeColumnNames.size()) {
    throw Error(Errc::MalformedCsv, file.string() + ": missing or wrong header");
  }
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (row[i] != kLargeColumnNames[i]) {
      throw Error(Errc::MalformedCsv, file.string() + ": header column " + std::to_string(i) + " is \"" +
                                          row[i] + "\", expected \"" + std::string(kLargeColumnNames[i]) + "\"");
    }
  }

  LargeScan scan;
  ViolationLog log;
  std::vector<std::uint64_t> non_null(kLargeColumnNames.size(), 0);
  const auto node_col = static_cast<std::size_t>(Column::NodeId);
  const auto cit_col = static_cast<std::size_t>(Column::Citations);

  while (reader.next_row(row)) {
    if (row.size() != kLargeColumnNames.size()) {
      throw Error(Errc::MalformedCsv, file.string() + ": row " + std::to_string(reader.row_number()) + " has " +
                                          std::to_string(row.size()) + " fields");
    }
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (!row[i].empty()) ++non_null[i];
    }
    const auto node = parse_u64(row[node_col]);
    if (!node || *node != scan.rows) {
      log.add("dense-node-range", std::string(kPublicationsLargeFile) + " row " + std::to_string(scan.rows + 1) +
                                      ": nodeId \"" + row[node_col] + "\", expected " + std::to_string(scan.rows));
    }
    const auto cites = parse_u64(row[cit_col]);
    if (!cites) {
      log.add("citations-column-matches-in-degree",
              std::string(kPublicationsLargeFile) + " row " + std::to_string(scan.rows + 1) +
                  ": citations \"" + row[cit_col] + "\" is not a count");
    }
    scan.citations.push_back(cites.value_or(0));
    ++scan.rows;
  }

  for (std::size_t i = 0; i < kLargeColumnNames.size(); ++i) {
    ColumnCompleteness c;
    c.column = std::string(kLargeColumnNames[i]);
    c.non_null = non_null[i];
    c.total = scan.rows;
    c.below_threshold = c.ratio() < threshold;
    scan.columns.push_back(std::move(c));
  }
  scan.violations = log.take();
  return scan;
}

void recount_input(const ValidateOptions& options, const RunReport& report, ViolationLog& log) {
  DumpLayout layout;
  try {
    layout = enumerate_dump(*options.input_root, options.layout);
  } catch (const Error& e) {
    log.add("input-readable", e.what());
    return;
  }
  auto count_all = [&](const std::vector<fs::path>& parts) {
    std::uint64_t total = 0;
    for (const auto& part : parts) {
      LineReader reader(part);
      std::string_view line;
      try {
        while (reader.next(line)) {
        }
      } catch (const Error& e) {
        if (e.code() != Errc::CorruptCompression) throw;
        log.add("no-corrupt-parts", std::string("input part unreadable: ") + e.what());
      }
      total += reader.lines();
    }
    return total;
  };
  const auto pubs = count_all(layout.publication_parts);
  const auto rels = count_all(layout.relation_parts);
  if (pubs != report.publications_seen) {
    log.add("input-publication-lines", mismatch("publication lines in dump", pubs, "publicationsSeen",
                                                report.publications_seen));
  }
  if (rels != report.relations_seen) {
    log.add("input-relation-lines",
            mismatch("relation lines in dump", rels, "relationsSeen", report.relations_seen));
  }
  if (layout.publication_parts.size() != report.publication_parts) {
    log.add("input-part-count", mismatch("publication parts in dump", layout.publication_parts.size(),
                                         "report", report.publication_parts));
  }
  if (layout.relation_parts.size() != report.relation_parts) {
    log.add("input-part-count",
            mismatch("relation parts in dump", layout.relation_parts.size(), "report", report.relation_parts));
  }
}

}  // namespace

std::vector<Violation> verify_counts(const RunReport& r) {
  std::vector<Violation> v;
  const auto pub_sum = r.publications_kept + r.publications_skipped_malformed + r.publications_duplicate_id;
  if (r.publications_seen != pub_sum) {
    v.push_back({"publication-conservation",
                 mismatch("publicationsSeen", r.publications_seen, "kept + skippedMalformed + duplicateId", pub_sum)});
  }
  const auto rel_sum = r.relations_cites + r.relations_other_type + r.relations_skipped_malformed;
  if (r.relations_seen != rel_sum) {
    v.push_back({"relation-conservation",
                 mismatch("relationsSeen", r.relations_seen, "cites + otherType + skippedMalformed", rel_sum)});
  }
  const auto removed = r.dedup_edges ? r.edges_duplicate : 0;
  const auto edge_sum = r.edges_emitted + r.edges_dangling_dropped + removed;
  if (r.relations_cites != edge_sum) {
    v.push_back({"edge-conservation",
                 mismatch("edgesEmitted + edgesDanglingDropped" + std::string(r.dedup_edges ? " + edgesDuplicate" : ""),
                          edge_sum, "relationsCites", r.relations_cites)});
  }
  const auto dangling_sum = r.edges_dangling_source + r.edges_dangling_target + r.edges_dangling_both;
  if (r.edges_dangling_dropped != dangling_sum) {
    v.push_back({"dangling-breakdown", mismatch("edgesDanglingDropped", r.edges_dangling_dropped,
                                                "source + target + both", dangling_sum)});
  }
  if (r.edges_self_loop > r.edges_emitted) {
    v.push_back({"self-loops-bounded", mismatch("edgesSelfLoop", r.edges_self_loop, "edgesEmitted", r.edges_emitted)});
  }
  for (const auto& part : r.corrupt_parts) {
    v.push_back({"no-corrupt-parts", "part file could not be fully decompressed: " + part});
  }
  const auto in_sum = r.publication_bytes_uncompressed + r.relation_bytes_uncompressed;
  if (r.bytes_in_uncompressed != in_sum) {
    v.push_back({"byte-accounting", mismatch("bytesInUncompressed", r.bytes_in_uncompressed,
                                             "publication + relation bytes", in_sum)});
  }
  for (const auto& [column, nulls] : r.per_column_null_counts) {
    if (nulls > r.publications_kept) {
      v.push_back({"null-counts-bounded",
                   mismatch("nulls in " + column, nulls, "publicationsKept", r.publications_kept)});
    }
  }
  return v;
}

std::vector<ColumnCompleteness> verify_completeness(const fs::path& large_file, double threshold) {
  return scan_large(large_file, threshold).columns;
}

CrosscheckResult crosscheck_outputs(const fs::path& citations, const fs::path& publications, const fs::path& idmap,
                                    const CrosscheckOptions& options) {
  CrosscheckResult result;
  ViolationLog log;
  std::vector<std::string> row;

  {
    auto in = open_input(publications);
    CsvReader reader(in);
    if (options.publications_header && !reader.next_row(row)) {
      log.add("publications-row-shape", std::string(kPublicationsFile) + ": missing header");
    }
    std::vector<std::uint64_t> column;
    bool has_column = false;
    while (reader.next_row(row)) {
      const auto index = result.publication_rows++;
      if (row.size() != 2 && row.size() != 3) {
        log.add("publications-row-shape", std::string(kPublicationsFile) + " row " + std::to_string(index + 1) +
                                              " has " + std::to_string(row.size()) + " fields");
        continue;
      }
      const auto node = parse_u64(row[0]);
      if (!node || *node != index) {
        log.add("dense-node-range", std::string(kPublicationsFile) + " row " + std::to_string(index + 1) +
                                        ": nodeId \"" + row[0] + "\", expected " + std::to_string(index));
      }
      if (row.size() == 3) {
        has_column = true;
        column.resize(index + 1, 0);
        column[index] = parse_u64(row[2]).value_or(0);
      }
    }
    if (has_column) {
      column.resize(result.publication_rows, 0);
      result.citations_column = std::move(column);
    }
  }
  const std::uint64_t n = result.publication_rows;

  {
    auto in = open_input(idmap);
    CsvReader reader(in);
    if (!reader.next_row(row) || row.size() != 2 || row[0] != "openaireId" || row[1] != "nodeId") {
      log.add("idmap-matches-publications", std::string(kIdMapFile) + ": missing \"openaireId,nodeId\" header");
    }
    for (;;) {
      try {
        if (!reader.next_row(row)) break;
      } catch (const Error& e) {
        log.add("idmap-matches-publications", std::string(kIdMapFile) + ": " + e.what());
        break;
      }
      const auto index = result.idmap_rows++;
      if (!reader.last_row_terminated()) {
        log.add("idmap-matches-publications", std::string(kIdMapFile) + " row " + std::to_string(index + 1) +
                                                  " is truncated (no line terminator)");
      }
      if (row.size() != 2) {
        log.add("idmap-matches-publications", std::string(kIdMapFile) + " row " + std::to_string(index + 1) +
                                                  " has " + std::to_string(row.size()) + " fields");
        continue;
      }
      const auto node = parse_u64(row[1]);
      if (!node || *node != index) {
        log.add("idmap-matches-publications", std::string(kIdMapFile) + " row " + std::to_string(index + 1) +
                                                  ": nodeId \"" + row[1] + "\", expected " + std::to_string(index));
      }
      if (row[0].empty()) {
        log.add("idmap-matches-publications",
                std::string(kIdMapFile) + " row " + std::to_string(index + 1) + ": empty openaireId");
      }
    }
    if (result.idmap_rows != n) {
      log.add("idmap-matches-publications",
              mismatch("id map rows", result.idmap_rows, "publication rows", n));
    }
  }

  {
    auto in = open_input(citations);
    result.in_degree.assign(n, 0);
    std::string line;
    std::uint64_t line_no = 0;
    if (options.citations_header && std::getline(in, line)) ++line_no;
    while (std::getline(in, line)) {
      ++line_no;
      const auto comma = line.find(',');
      const auto src = comma == std::string::npos ? std::nullopt : parse_u64(std::string_view(line).substr(0, comma));
      const auto dst = comma == std::string::npos ? std::nullopt : parse_u64(std::string_view(line).substr(comma + 1));
      if (!src || !dst) {
        log.add("citations-row-shape", std::string(kCitationsFile) + " line " + std::to_string(line_no) + ": \"" +
                                           line.substr(0, 64) + "\" is not \"source,target\"");
        ++result.citation_rows;
        continue;
      }
      ++result.citation_rows;
      if (*src >= n || *dst >= n) {
        log.add("endpoint-in-node-set", "endpoint not in node set: " + std::string(kCitationsFile) + " line " +
                                            std::to_string(line_no) + " (" + line + ") with " +
                                            std::to_string(n) + " nodes");
        continue;
      }
      ++result.in_degree[*dst];
    }
  }

  result.violations = log.take();
  return result;
}

std::vector<Violation> verify_outputs_crosscheck(const fs::path& citations, const fs::path& publications,
                                                 const fs::path& idmap, const CrosscheckOptions& options) {
  return crosscheck_outputs(citations, publications, idmap, options).violations;
}

ValidationResult validate_outputs(const ValidateOptions& options, const RunReport& report) {
  ValidationResult result;
  result.violations = verify_counts(report);
  ViolationLog log;
  const auto& dir = options.output_dir;

  std::optional<CrosscheckResult> cross;
  try {
    cross = crosscheck_outputs(dir / kCitationsFile, dir / kPublicationsFile, dir / kIdMapFile,
                               {.citations_header = report.headers, .publications_header = report.headers});
  } catch (const Error& e) {
    log.add("outputs-readable", e.what());
  }

  if (cross) {
    for (auto& v : cross->violations) result.violations.push_back(std::move(v));
    if (cross->citation_rows != report.edges_emitted) {
      log.add("citations-rows-match-report",
              mismatch("citations.csv rows", cross->citation_rows, "edgesEmitted", report.edges_emitted));
    }
    if (cross->publication_rows != report.publications_kept) {
      log.add("publications-rows-match-report",
              mismatch("publications.csv rows", cross->publication_rows, "publicationsKept", report.publications_kept));
    }
    if (cross->idmap_rows != report.publications_kept) {
      log.add("idmap-rows-match-report",
              mismatch("idmap.csv rows", cross->idmap_rows, "publicationsKept", report.publications_kept));
    }
  }

  std::optional<std::vector<std::uint64_t>> citations_column;
  if (cross && cross->citations_column) citations_column = cross->citations_column;

  if (!report.skip_large) {
    try {
      auto scan = scan_large(dir / kPublicationsLargeFile, options.completeness_threshold);
      for (auto& v : scan.violations) result.violations.push_back(std::move(v));
      if (scan.rows != report.publications_kept) {
        log.add("large-rows-match-report",
                mismatch("publications_large.csv rows", scan.rows, "publicationsKept", report.publications_kept));
      }
      for (const auto& c : scan.columns) {
        if (c.below_threshold) {
          log.add("column-completeness", c.column + " completeness " + std::to_string(c.ratio()) +
                                             " below threshold " + std::to_string(options.completeness_threshold));
        }
      }
      if (!citations_column) citations_column = std::move(scan.citations);
      result.completeness = std::move(scan.columns);
    } catch (const Error& e) {
      log.add("outputs-readable", e.what());
    }
  }

  if (cross && citations_column) {
    const auto& degree = cross->in_degree;
    if (citations_column->size() != degree.size()) {
      log.add("citations-column-matches-in-degree",
              mismatch("citations column length", citations_column->size(), "node count", degree.size()));
    } else {
      std::uint64_t column_total = 0;
      for (std::size_t v = 0; v < degree.size(); ++v) {
        column_total += (*citations_column)[v];
        if ((*citations_column)[v] != degree[v]) {
          log.add("citations-column-matches-in-degree",
                  "node " + std::to_string(v) + ": citations column " + std::to_string((*citations_column)[v]) +
                      ", in-degree over citations.csv " + std::to_string(degree[v]));
        }
      }
      if (column_total != report.edges_emitted) {
        log.add("degree-total", mismatch("sum of citations column", column_total, "edgesEmitted", report.edges_emitted));
      }
    }
  }

  if (options.input_root) recount_input(options, report, log);

  for (auto& v : log.take()) result.violations.push_back(std::move(v));
  return result;
}

ValidationResult validate_outputs(const ValidateOptions& options) {
  RunReport report;
  try {
    report = read_report(options.output_dir / kReportFile);
  } catch (const Error& e) {
    ValidationResult result;
    result.violations.push_back({"report-readable", e.what()});
    return result;
  }
  return validate_outputs(options, report);
}

}  // namespace citedistill
