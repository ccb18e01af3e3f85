#include <benchmark/benchmark.h>

#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "citedistill/emit.hpp"
#include "citedistill/gzip_writer.hpp"
#include "citedistill/id_map.hpp"
#include "citedistill/line_reader.hpp"
#include "citedistill/records.hpp"
#include "citedistill/translate.hpp"

namespace fs = std::filesystem;
using namespace citedistill;

namespace {

std::string relation_line(std::uint64_t i) {
  return R"({"provenance":{"provenance":"Inferred by OpenAIRE","trust":"0.9"},"relType":{"name":"Cites","type":"citation"},"source":"doi_________::)" +
         std::to_string(1000000 + i) +
         R"(","sourceType":"product","target":"dedup_wf_002::)" + std::to_string(2000000 + i) +
         R"(","targetType":"product","validated":false})";
}

const std::string kPublication = R"({"id":"50|doi_dedup___::0a1b2c3d4e5f","pids":[{"scheme":"pmid","value":"31234567"},{"scheme":"doi","value":"10.3931/e-rara-45685"}],"mainTitle":"Temporal graphs, \"dynamic\" ones","authors":[{"fullName":"Ada Lovelace","rank":1},{"fullName":"Alan Turing","rank":2},{"fullName":"Grace Hopper","rank":3}],"descriptions":["A long abstract about citation networks and their evolution over time, with commas, and more words."],"publicationDate":"2019-04-01","container":{"name":"Journal of Network Science"},"language":{"code":"eng","label":"English"},"publisher":"Elsevier"})";

void BM_ParseRelation(benchmark::State& state) {
  const auto line = relation_line(7);
  for (auto _ : state) benchmark::DoNotOptimize(parse_relation(line));
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * line.size()));
}
BENCHMARK(BM_ParseRelation);

void BM_ParsePublication(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(parse_publication(kPublication));
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * kPublication.size()));
}
BENCHMARK(BM_ParsePublication);

void BM_IdMapAssign(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<std::string> keys;
  for (std::size_t i = 0; i < n; ++i) keys.push_back("dedup_wf_002::" + std::to_string(i * 2654435761u));
  for (auto _ : state) {
    IdMap m;
    for (const auto& k : keys) m.assign(k);
    benchmark::DoNotOptimize(m.size());
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * n));
}
BENCHMARK(BM_IdMapAssign)->Arg(1 << 12)->Arg(1 << 17);

void BM_TranslateEdge(benchmark::State& state) {
  IdMap m;
  std::vector<RelationRecord> rels;
  for (int i = 0; i < 4096; ++i) m.assign("p" + std::to_string(i));
  m.finalize();
  std::mt19937_64 rng(1);
  for (int i = 0; i < 4096; ++i) {
    rels.push_back({OpenAireId("p" + std::to_string(rng() % 4500)), OpenAireId("p" + std::to_string(rng() % 4500)),
                    "Cites", "citation"});
  }
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(translate_edge(rels[i++ & 4095], m));
}
BENCHMARK(BM_TranslateEdge);

void BM_LargeRow(benchmark::State& state) {
  PublicationRecord rec{NodeId::from(123456), PublicationFragment(OpenAireId("50|doi_dedup___::0a1b2c3d4e5f")), 17};
  rec.fields.doi = "10.3931/e-rara-45685";
  rec.fields.title = "Temporal graphs, \"dynamic\" ones";
  rec.fields.authors = "Ada Lovelace; Alan Turing";
  rec.fields.description = "Line one\nline two, with a comma";
  rec.fields.date = "2019-04-01";
  rec.fields.language = "English";
  for (auto _ : state) benchmark::DoNotOptimize(format_publication_large_row(rec));
}
BENCHMARK(BM_LargeRow);

void BM_LineReaderGzip(benchmark::State& state) {
  const auto path = fs::temp_directory_path() / "citedistill-bench-lines.json.gz";
  std::uint64_t bytes = 0;
  {
    GzipWriter w(path, 1);
    for (std::uint64_t i = 0; i < 50000; ++i) {
      const auto line = relation_line(i) + "\n";
      bytes += line.size();
      w.write(line);
    }
  }
  for (auto _ : state) {
    LineReader r(path);
    std::string_view line;
    std::uint64_t n = 0;
    while (r.next(line)) ++n;
    benchmark::DoNotOptimize(n);
  }
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * bytes));
  fs::remove(path);
}
BENCHMARK(BM_LineReaderGzip)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
