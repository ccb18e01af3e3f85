#include "citedistill/pipeline.hpp"

#include <sys/resource.h>
#include <unistd.h>

#include <array>
#include <cstdlib>
#include <fstream>
#include <string>

#include "citedistill/edge_spill.hpp"
#include "citedistill/emit.hpp"
#include "citedistill/error.hpp"
#include "citedistill/id_map.hpp"
#include "citedistill/line_reader.hpp"
#include "citedistill/ordered_pool.hpp"
#include "citedistill/publication_spill.hpp"
#include "citedistill/records.hpp"
#include "citedistill/report.hpp"
#include "citedistill/translate.hpp"

namespace fs = std::filesystem;

namespace citedistill {
namespace {

constexpr std::size_t kQueueDepth = 4;

struct PartSummary {
  std::uint64_t bytes_compressed = 0;
  std::uint64_t bytes_uncompressed = 0;
  std::uint64_t lines = 0;
  std::optional<std::string> corrupt;
};

template <class Item>
struct Batch {
  std::vector<Item> items;
  std::optional<PartSummary> summary;  // set on the last batch of a part
};

// Streams one part through `parse`, emitting batches; a corrupt gzip stream
// ends the part early and is reported in the summary instead of thrown.
template <class Item, class Parse>
void produce_part(const fs::path& part, std::size_t batch_size, const std::function<void(Batch<Item>&&)>& emit,
                  Parse&& parse) {
  LineReader reader(part);
  Batch<Item> batch;
  batch.items.reserve(batch_size);
  PartSummary summary;
  std::string_view line;
  try {
    while (reader.next(line)) {
      batch.items.push_back(parse(line));
      if (batch.items.size() >= batch_size) {
        emit(std::move(batch));
        batch = {};
        batch.items.reserve(batch_size);
      }
    }
  } catch (const Error& e) {
    if (e.code() != Errc::CorruptCompression) throw;
    summary.corrupt = e.what();
  }
  summary.bytes_compressed = reader.bytes_compressed();
  summary.bytes_uncompressed = reader.bytes_uncompressed();
  summary.lines = reader.lines();
  batch.summary = summary;
  emit(std::move(batch));
}

struct RelationItem {
  enum Kind : std::uint8_t { Edge, DanglingEdge, Other, Skipped } kind = Skipped;
  DanglingSide side = DanglingSide::Both;
  SkipReason reason = SkipReason::MalformedJson;
  bool cites_non_citation_type = false;
  bool citation_type_not_cites = false;
  std::uint32_t line_bytes = 0;
  CitationEdge edge;
};

RelationItem classify_relation(std::string_view line, const IdMap& map) {
  RelationItem item;
  item.line_bytes = static_cast<std::uint32_t>(line.size() + 1);
  auto outcome = parse_relation(line);
  if (auto* rel = std::get_if<RelationRecord>(&outcome)) {
    item.cites_non_citation_type = rel->rel_type_type != kCitationType;
    auto t = translate_edge(*rel, map);
    if (auto* edge = std::get_if<CitationEdge>(&t)) {
      item.kind = RelationItem::Edge;
      item.edge = *edge;
    } else {
      item.kind = RelationItem::DanglingEdge;
      item.side = std::get<Dangling>(t).side;
    }
  } else if (auto* other = std::get_if<NotCites>(&outcome)) {
    item.kind = RelationItem::Other;
    item.citation_type_not_cites = other->rel_type_type == kCitationType;
  } else {
    item.reason = std::get<Skip>(outcome).reason;
  }
  return item;
}

fs::path make_scratch_dir(const DistillOptions& options, const fs::path& staging) {
  fs::path base;
  if (options.tmpdir) {
    base = *options.tmpdir;
  } else if (const char* env = std::getenv(kTmpDirEnv); env != nullptr && *env != '\0') {
    base = env;
  } else {
    base = staging;
  }
  fs::path dir = base / ("citedistill-scratch-" + std::to_string(::getpid()));
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

// Removes a directory tree on scope exit unless released.
class DirGuard {
 public:
  explicit DirGuard(fs::path dir) : dir_(std::move(dir)) {}
  ~DirGuard() {
    if (!dir_.empty()) {
      std::error_code ec;
      fs::remove_all(dir_, ec);
    }
  }
  DirGuard(const DirGuard&) = delete;
  DirGuard& operator=(const DirGuard&) = delete;
  void release() { dir_.clear(); }

 private:
  fs::path dir_;
};

std::ofstream create_output(const fs::path& p) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::Io, "cannot create " + p.string());
  return out;
}

constexpr std::array<Column, 7> kOptionalColumns = {Column::Doi,       Column::Title, Column::Authors,
                                                    Column::Description, Column::Date, Column::Container,
                                                    Column::Language};

}  // namespace

std::uint64_t peak_rss_bytes() {
  // VmHWM belongs to this address space only; ru_maxrss also carries the
  // high-water mark of whatever process image exec replaced.
  std::ifstream status("/proc/self/status");
  std::string line;
  while (std::getline(status, line)) {
    if (line.rfind("VmHWM:", 0) == 0) return std::strtoull(line.c_str() + 6, nullptr, 10) * 1024;
  }
  rusage usage{};
  if (getrusage(RUSAGE_SELF, &usage) != 0) return 0;
  return static_cast<std::uint64_t>(usage.ru_maxrss) * 1024;
}

DistillResult distill(const DistillOptions& options) {
  const DumpLayout layout = enumerate_dump(options.input, options.layout);
  const auto batch_size = std::max<std::size_t>(options.batch_size, 1);

  fs::create_directories(options.output);
  const fs::path staging = options.output / ".citedistill-staging";
  fs::remove_all(staging);
  fs::create_directories(staging);
  DirGuard staging_guard(staging);
  const fs::path scratch = make_scratch_dir(options, staging);
  DirGuard scratch_guard(scratch);

  auto progress = [&](const std::string& msg) {
    if (options.progress) options.progress(msg);
  };

  RunReport report;
  report.dedup_edges = options.dedup_edges;
  report.headers = options.headers;
  report.publications_format = options.publications_format;
  report.skip_large = options.skip_large;
  report.publication_parts = layout.publication_parts.size();
  report.relation_parts = layout.relation_parts.size();
  for (auto name : kLargeColumnNames) report.per_column_null_counts[std::string(name)] = 0;

  auto account_part = [&](const fs::path& part, const PartSummary& s, std::uint64_t& kind_bytes,
                          const char* kind) {
    report.bytes_in_compressed += s.bytes_compressed;
    report.bytes_in_uncompressed += s.bytes_uncompressed;
    kind_bytes += s.bytes_uncompressed;
    if (s.corrupt) report.corrupt_parts.push_back(part.string());
    progress(std::string(kind) + " " + part.string() + ": " + std::to_string(s.lines) + " lines" +
             (s.corrupt ? " (CORRUPT: " + *s.corrupt + ")" : ""));
  };

  // Pass 1: publications.
  IdMap map;
  const fs::path pub_spill_path = scratch / "publications.spill";
  {
    PublicationSpillWriter spill(pub_spill_path);
    run_ordered<Batch<PublicationOutcome>>(
        layout.publication_parts.size(), options.threads, kQueueDepth,
        [&](std::size_t p, const std::function<void(Batch<PublicationOutcome>&&)>& emit) {
          produce_part<PublicationOutcome>(layout.publication_parts[p], batch_size, emit,
                                           [](std::string_view line) { return parse_publication(line); });
        },
        [&](std::size_t p, Batch<PublicationOutcome>&& batch) {
          for (auto& outcome : batch.items) {
            ++report.publications_seen;
            if (auto* frag = std::get_if<PublicationFragment>(&outcome)) {
              auto [node, fresh] = map.try_assign(frag->openaire_id.view());
              if (!fresh) {
                ++report.publications_duplicate_id;
                continue;
              }
              ++report.publications_kept;
              for (auto column : kOptionalColumns) {
                if (!*optional_field(*frag, column)) {
                  ++report.per_column_null_counts[std::string(kLargeColumnNames[static_cast<std::size_t>(column)])];
                }
              }
              spill.write(*frag);
            } else {
              ++report.publications_skipped_malformed;
              ++report.skip_reasons["publication." + std::string(to_string(std::get<Skip>(outcome).reason))];
            }
          }
          if (batch.summary) {
            account_part(layout.publication_parts[p], *batch.summary, report.publication_bytes_uncompressed,
                         "publication");
          }
        });
    spill.close();
  }
  map.finalize();
  report.bytes_out_by_file[std::string(kIdMapFile)] = map.persist(staging / kIdMapFile);

  // Pass 2: relations -> edge spill.
  const fs::path edge_spill_path = scratch / "edges.bin";
  {
    EdgeSpillWriter edges(edge_spill_path);
    run_ordered<Batch<RelationItem>>(
        layout.relation_parts.size(), options.threads, kQueueDepth,
        [&](std::size_t p, const std::function<void(Batch<RelationItem>&&)>& emit) {
          produce_part<RelationItem>(layout.relation_parts[p], batch_size, emit,
                                     [&map](std::string_view line) { return classify_relation(line, map); });
        },
        [&](std::size_t p, Batch<RelationItem>&& batch) {
          for (const auto& item : batch.items) {
            ++report.relations_seen;
            switch (item.kind) {
              case RelationItem::Edge:
              case RelationItem::DanglingEdge:
                ++report.relations_cites;
                report.cites_relation_bytes += item.line_bytes;
                if (item.cites_non_citation_type) ++report.relations_cites_non_citation_type;
                if (item.kind == RelationItem::Edge) {
                  edges.write(item.edge);
                } else {
                  ++report.edges_dangling_dropped;
                  switch (item.side) {
                    case DanglingSide::Source: ++report.edges_dangling_source; break;
                    case DanglingSide::Target: ++report.edges_dangling_target; break;
                    case DanglingSide::Both: ++report.edges_dangling_both; break;
                  }
                }
                break;
              case RelationItem::Other:
                ++report.relations_other_type;
                if (item.citation_type_not_cites) ++report.relations_citation_type_not_cites;
                break;
              case RelationItem::Skipped:
                ++report.relations_skipped_malformed;
                ++report.skip_reasons["relation." + std::string(to_string(item.reason))];
                break;
            }
          }
          if (batch.summary) {
            account_part(layout.relation_parts[p], *batch.summary, report.relation_bytes_uncompressed, "relation");
          }
        });
    edges.close();
  }

  // Pass 3: duplicates.
  const auto dups = scan_duplicates(edge_spill_path, scratch, options.sort_memory, options.dedup_edges);
  report.edges_duplicate = dups.duplicates;
  progress("duplicate scan: " + std::to_string(dups.duplicates) + " repeated edges, " + std::to_string(dups.runs) +
           " sorted runs");

  // Pass 4: citations.csv and in-degree.
  DegreeCounter degree(map.size());
  {
    auto out = create_output(staging / kCitationsFile);
    CitationsWriter writer(out, options.headers);
    EdgeSpillReader reader(edge_spill_path);
    CitationEdge edge;
    std::uint64_t pos = 0;
    auto next_dup = dups.duplicate_positions.begin();
    while (reader.next(edge)) {
      const auto here = pos++;
      if (next_dup != dups.duplicate_positions.end() && *next_dup == here) {
        ++next_dup;
        continue;
      }
      writer.write(edge);
      degree.add(edge);
      ++report.edges_emitted;
      if (edge.is_self_loop()) ++report.edges_self_loop;
    }
    report.bytes_out_by_file[std::string(kCitationsFile)] = writer.finish();
  }
  fs::remove(edge_spill_path);
  progress(std::string(kCitationsFile) + ": " + std::to_string(report.edges_emitted) + " edges");

  // Pass 5: publication tables.
  {
    auto pub_out = create_output(staging / kPublicationsFile);
    PublicationsWriter pubs(pub_out, options.publications_format, options.headers);
    std::ofstream large_out;
    std::optional<PublicationsLargeWriter> large;
    if (!options.skip_large) {
      large_out = create_output(staging / kPublicationsLargeFile);
      large.emplace(large_out);
    }
    PublicationSpillReader reader(pub_spill_path);
    const auto& table = degree.table();
    std::int64_t node = 0;
    while (auto frag = reader.next()) {
      const auto id = NodeId::from(node);
      PublicationRecord rec{id, std::move(*frag), table.at(static_cast<std::size_t>(node))};
      pubs.write(rec);
      if (large) large->write(rec);
      ++node;
    }
    if (static_cast<std::size_t>(node) != map.size()) {
      throw Error(Errc::Format, "publication spill holds " + std::to_string(node) + " records, id map " +
                                    std::to_string(map.size()));
    }
    report.bytes_out_by_file[std::string(kPublicationsFile)] = pubs.finish();
    if (large) report.bytes_out_by_file[std::string(kPublicationsLargeFile)] = large->finish();
  }
  fs::remove(pub_spill_path);
  progress("publication tables: " + std::to_string(map.size()) + " rows");

  for (const auto& [file, bytes] : report.bytes_out_by_file) report.bytes_out += bytes;

  DistillResult result;
  ValidateOptions vopts;
  vopts.output_dir = staging;
  vopts.layout = options.layout;
  vopts.completeness_threshold = options.completeness_threshold;
  result.validation = validate_outputs(vopts, report);
  if (options.memory_report) report.peak_rss_bytes = peak_rss_bytes();

  {
    auto out = create_output(staging / kReportFile);
    write_report(report, out, &result.validation.violations);
    out.close();
    if (!out) throw Error(Errc::Io, "failed writing report");
  }

  // Promote.
  scratch_guard.release();
  {
    std::error_code ec;
    fs::remove_all(scratch, ec);
  }
  if (options.skip_large) {
    std::error_code ec;
    fs::remove(options.output / kPublicationsLargeFile, ec);
  }
  for (auto name : {kIdMapFile, kCitationsFile, kPublicationsFile, kPublicationsLargeFile, kReportFile}) {
    const fs::path from = staging / name;
    if (fs::exists(from)) fs::rename(from, options.output / name);
  }

  result.report = std::move(report);
  return result;
}

}  // namespace citedistill
