#include "citedistill/report.hpp"

#include <fstream>

#include "citedistill/error.hpp"
#include "json.hpp"

namespace citedistill {

using ordered_json = nlohmann::ordered_json;

namespace {

ordered_json to_json(const RunReport& r) {
  ordered_json j;
  j["publications"] = {
      {"seen", r.publications_seen},
      {"kept", r.publications_kept},
      {"skippedMalformed", r.publications_skipped_malformed},
      {"duplicateId", r.publications_duplicate_id},
  };
  j["relations"] = {
      {"seen", r.relations_seen},
      {"cites", r.relations_cites},
      {"otherType", r.relations_other_type},
      {"skippedMalformed", r.relations_skipped_malformed},
      {"citesWithNonCitationType", r.relations_cites_non_citation_type},
      {"citationTypeNotCites", r.relations_citation_type_not_cites},
  };
  j["edges"] = {
      {"emitted", r.edges_emitted},
      {"danglingDropped", r.edges_dangling_dropped},
      {"danglingSource", r.edges_dangling_source},
      {"danglingTarget", r.edges_dangling_target},
      {"danglingBoth", r.edges_dangling_both},
      {"selfLoop", r.edges_self_loop},
      {"duplicate", r.edges_duplicate},
      {"dedup", r.dedup_edges},
  };
  j["parts"] = {
      {"publication", r.publication_parts},
      {"relation", r.relation_parts},
      {"corrupt", r.corrupt_parts},
  };
  j["bytes"] = {
      {"inCompressed", r.bytes_in_compressed},
      {"inUncompressed", r.bytes_in_uncompressed},
      {"publicationUncompressed", r.publication_bytes_uncompressed},
      {"relationUncompressed", r.relation_bytes_uncompressed},
      {"citesRelationJson", r.cites_relation_bytes},
      {"out", r.bytes_out},
      {"outByFile", r.bytes_out_by_file},
      {"compressionRatio", r.compression_ratio()},
      {"bytesPerEmittedEdge", r.bytes_per_emitted_edge()},
      {"relationJsonToEdgeRowRatio", r.relation_json_to_edge_row_ratio()},
  };
  j["perColumnNullCounts"] = r.per_column_null_counts;
  j["skipReasons"] = r.skip_reasons;
  j["options"] = {
      {"headers", r.headers},
      {"publicationsFormat", std::string(to_string(r.publications_format))},
      {"skipLarge", r.skip_large},
  };
  if (r.peak_rss_bytes) j["memory"] = {{"peakRssBytes", *r.peak_rss_bytes}};
  return j;
}

template <class T>
void get_to(const ordered_json& j, std::string_view section, std::string_view key, T& out) {
  try {
    j.at(std::string(section)).at(std::string(key)).get_to(out);
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::Format, "report field " + std::string(section) + "." + std::string(key) + ": " + e.what());
  }
}

}  // namespace

std::uint64_t write_report(const RunReport& report, std::ostream& out, const std::vector<Violation>* violations) {
  ordered_json j = to_json(report);
  if (violations != nullptr) {
    ordered_json list = ordered_json::array();
    for (const auto& v : *violations) list.push_back({{"identity", v.identity}, {"detail", v.detail}});
    j["validation"] = {{"passed", violations->empty()}, {"violations", std::move(list)}};
  }
  const std::string text = j.dump(2) + "\n";
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  out.flush();
  if (!out) throw Error(Errc::Io, "failed writing report");
  return text.size();
}

RunReport read_report(std::istream& in) {
  ordered_json j = ordered_json::parse(in, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded() || !j.is_object()) throw Error(Errc::Format, "report is not a JSON object");

  RunReport r;
  get_to(j, "publications", "seen", r.publications_seen);
  get_to(j, "publications", "kept", r.publications_kept);
  get_to(j, "publications", "skippedMalformed", r.publications_skipped_malformed);
  get_to(j, "publications", "duplicateId", r.publications_duplicate_id);
  get_to(j, "relations", "seen", r.relations_seen);
  get_to(j, "relations", "cites", r.relations_cites);
  get_to(j, "relations", "otherType", r.relations_other_type);
  get_to(j, "relations", "skippedMalformed", r.relations_skipped_malformed);
  get_to(j, "relations", "citesWithNonCitationType", r.relations_cites_non_citation_type);
  get_to(j, "relations", "citationTypeNotCites", r.relations_citation_type_not_cites);
  get_to(j, "edges", "emitted", r.edges_emitted);
  get_to(j, "edges", "danglingDropped", r.edges_dangling_dropped);
  get_to(j, "edges", "danglingSource", r.edges_dangling_source);
  get_to(j, "edges", "danglingTarget", r.edges_dangling_target);
  get_to(j, "edges", "danglingBoth", r.edges_dangling_both);
  get_to(j, "edges", "selfLoop", r.edges_self_loop);
  get_to(j, "edges", "duplicate", r.edges_duplicate);
  get_to(j, "edges", "dedup", r.dedup_edges);
  get_to(j, "parts", "publication", r.publication_parts);
  get_to(j, "parts", "relation", r.relation_parts);
  get_to(j, "parts", "corrupt", r.corrupt_parts);
  get_to(j, "bytes", "inCompressed", r.bytes_in_compressed);
  get_to(j, "bytes", "inUncompressed", r.bytes_in_uncompressed);
  get_to(j, "bytes", "publicationUncompressed", r.publication_bytes_uncompressed);
  get_to(j, "bytes", "relationUncompressed", r.relation_bytes_uncompressed);
  get_to(j, "bytes", "citesRelationJson", r.cites_relation_bytes);
  get_to(j, "bytes", "out", r.bytes_out);
  get_to(j, "bytes", "outByFile", r.bytes_out_by_file);
  get_to(j, "options", "headers", r.headers);
  get_to(j, "options", "skipLarge", r.skip_large);

  std::string format;
  get_to(j, "options", "publicationsFormat", format);
  auto parsed = parse_publications_format(format);
  if (!parsed) throw Error(Errc::Format, "unknown publicationsFormat \"" + format + "\"");
  r.publications_format = *parsed;

  try {
    j.at("perColumnNullCounts").get_to(r.per_column_null_counts);
    j.at("skipReasons").get_to(r.skip_reasons);
    if (j.contains("memory")) r.peak_rss_bytes = j["memory"].at("peakRssBytes").get<std::uint64_t>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::Format, std::string("report: ") + e.what());
  }
  return r;
}

RunReport read_report(const std::filesystem::path& file) {
  std::error_code ec;
  if (!std::filesystem::exists(file, ec)) throw Error(Errc::FileNotFound, file.string());
  std::ifstream in(file, std::ios::binary);
  if (!in) throw Error(Errc::Io, "cannot open " + file.string());
  return read_report(in);
}

std::string violation_json_line(const Violation& v) {
  ordered_json j;
  j["kind"] = "violation";
  j["identity"] = v.identity;
  j["detail"] = v.detail;
  return j.dump();
}

}  // namespace citedistill
