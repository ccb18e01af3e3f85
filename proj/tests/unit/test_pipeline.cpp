#include "doctest.h"

#include <set>
#include <string>

#include "citedistill/emit.hpp"
#include "citedistill/error.hpp"
#include "citedistill/gzip_writer.hpp"
#include "citedistill/pipeline.hpp"
#include "citedistill/report.hpp"
#include "citedistill/synthgen.hpp"
#include "oracles.hpp"

using namespace citedistill;
using testing::TempDir;

namespace {

SynthConfig config(std::uint64_t seed) {
  SynthConfig c;
  c.seed = seed;
  c.n_publications = 500;
  c.n_relations = 3000;
  c.duplicate_fraction = 0.04;
  c.malformed_fraction = 0.01;
  c.parts_per_folder = 4;
  return c;
}

DistillResult run(const fs::path& in, const fs::path& out, unsigned threads = 1, bool dedup = false) {
  DistillOptions o;
  o.input = in;
  o.output = out;
  o.threads = threads;
  o.dedup_edges = dedup;
  o.batch_size = 64;
  return distill(o);
}

const char* kFiles[] = {"citations.csv", "publications.csv", "publications_large.csv", "idmap.csv"};

}  // namespace

TEST_CASE("edges equal the manifest join") {
  TempDir d;
  const auto m = generate(config(1), d / "dump");
  const auto r = run(d / "dump", d / "out");
  CHECK(r.validation.passed());
  CHECK(r.report.publications_kept == 500);
  CHECK(r.report.edges_emitted == m.expected_edges.size());
  CHECK(testing::output_edges(d / "out") == testing::manifest_join(m));
  CHECK(verify_counts(r.report).empty());
  CHECK(r.report.relations_seen == 3000 + m.malformed_relation_lines);
}

TEST_CASE("dedup removes later repeats only") {
  TempDir d;
  const auto m = generate(config(2), d / "dump");
  const auto r = run(d / "dump", d / "out", 1, true);
  CHECK(r.validation.passed());
  const auto join = testing::manifest_join(m);
  std::vector<testing::StringEdge> first;
  std::set<testing::StringEdge> seen;
  for (const auto& e : join) {
    if (seen.insert(e).second) first.push_back(e);
  }
  CHECK(testing::output_edges(d / "out") == first);
  CHECK(r.report.edges_duplicate == join.size() - first.size());
  CHECK(r.report.edges_emitted + r.report.edges_dangling_dropped + r.report.edges_duplicate ==
        r.report.relations_cites);
}

TEST_CASE("thread count does not change output bytes") {
  TempDir d;
  generate(config(3), d / "dump");
  run(d / "dump", d / "one", 1);
  run(d / "dump", d / "four", 4);
  run(d / "dump", d / "again", 1);
  for (const char* f : kFiles) {
    CHECK_MESSAGE(testing::slurp(d / "one" / f) == testing::slurp(d / "four" / f), f);
    CHECK_MESSAGE(testing::slurp(d / "one" / f) == testing::slurp(d / "again" / f), f);
  }
}

TEST_CASE("small sort budget forces several runs and gives the same answer") {
  TempDir d;
  generate(config(4), d / "dump");
  auto a = run(d / "dump", d / "a");
  DistillOptions o;
  o.input = d / "dump";
  o.output = d / "b";
  o.sort_memory = 1024;
  const auto b = distill(o);
  CHECK(a.report.edges_duplicate == b.report.edges_duplicate);
  CHECK(testing::slurp(d / "a/citations.csv") == testing::slurp(d / "b/citations.csv"));
}

TEST_CASE("in-degree column matches a brute-force tally") {
  TempDir d;
  generate(config(5), d / "dump");
  const auto r = run(d / "dump", d / "out");
  const auto deg = testing::brute_in_degree(d / "out/citations.csv", 500);
  const auto rows = testing::parse_csv(testing::slurp(d / "out/publications_large.csv"));
  REQUIRE(rows.size() == 501);
  for (std::size_t v = 0; v < 500; ++v) CHECK(rows[v + 1].at(8) == std::to_string(deg[v]));
  std::uint64_t total = 0;
  for (auto x : deg) total += x;
  CHECK(total == r.report.edges_emitted);
}

TEST_CASE("duplicate publication ids keep the first record") {
  TempDir d;
  fs::create_directories(d / "dump/publication");
  fs::create_directories(d / "dump/relation");
  GzipWriter pubs(d / "dump/publication/part-0.json.gz");
  pubs.write(R"({"id":"a","mainTitle":"first"})"
             "\n"
             R"({"id":"b"})"
             "\n"
             R"({"id":"a","mainTitle":"second"})"
             "\n");
  pubs.close();
  GzipWriter rels(d / "dump/relation/part-0.json.gz");
  rels.write(R"({"relType":{"name":"Cites","type":"citation"},"source":"b","target":"a"})"
             "\n");
  rels.close();
  const auto r = run(d / "dump", d / "out");
  CHECK(r.validation.passed());
  CHECK(r.report.publications_kept == 2);
  CHECK(r.report.publications_duplicate_id == 1);
  CHECK(testing::slurp(d / "out/citations.csv") == "1,0\n");
  const auto rows = testing::parse_csv(testing::slurp(d / "out/publications_large.csv"));
  CHECK(rows.at(1).at(3) == "first");
}

TEST_CASE("corrupt relation part is recorded and fails validation") {
  TempDir d;
  generate(config(6), d / "dump");
  const auto part = d / "dump/relation/part-00002.json.gz";
  const auto bytes = testing::slurp(part);
  testing::spit(part, bytes.substr(0, bytes.size() / 2));
  const auto r = run(d / "dump", d / "out");
  CHECK_FALSE(r.validation.passed());
  REQUIRE(r.report.corrupt_parts.size() == 1);
  CHECK(r.report.corrupt_parts[0].find("part-00002") != std::string::npos);
  CHECK(fs::exists(d / "out/report.json"));
}

TEST_CASE("skip-large removes a stale large file") {
  TempDir d;
  generate(config(7), d / "dump");
  run(d / "dump", d / "out");
  REQUIRE(fs::exists(d / "out/publications_large.csv"));
  DistillOptions o;
  o.input = d / "dump";
  o.output = d / "out";
  o.skip_large = true;
  const auto r = distill(o);
  CHECK(r.validation.passed());
  CHECK_FALSE(fs::exists(d / "out/publications_large.csv"));
  CHECK_FALSE(fs::exists(d / "out/.citedistill-staging"));
}

TEST_CASE("missing input root") {
  TempDir d;
  try {
    run(d / "nothing", d / "out");
    FAIL("expected RootNotFound");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::RootNotFound);
  }
  CHECK_FALSE(fs::exists(d / "out/citations.csv"));
}

TEST_SUITE("cli") {
  const std::string bin = CITEDISTILL_BIN;

  TEST_CASE("generate, distill and validate exit codes") {
    TempDir d;
    const auto gen = testing::run_process(
        {bin, "-q", "generate", "-o", (d / "dump").string(), "--publications", "200", "--relations", "800",
         "--missing", "description=0.25", "--seed", "4"},
        d.path());
    REQUIRE(gen.exit_code == 0);
    const auto dist = testing::run_process({bin, "-q", "distill", "-i", (d / "dump").string(), "-o",
                                            (d / "out").string(), "--headers", "--publications-format",
                                            "with-citations", "--memory-report", "--threads", "2"},
                                           d.path());
    CHECK(dist.exit_code == 0);
    const auto report = read_report(d / "out/report.json");
    CHECK(report.headers);
    REQUIRE(report.peak_rss_bytes.has_value());
    CHECK(*report.peak_rss_bytes > 0);
    CHECK(testing::slurp(d / "out/publications.csv").rfind("nodeId,doi,citations\n", 0) == 0);

    const auto ok = testing::run_process({bin, "validate", "-o", (d / "out").string(), "-i", (d / "dump").string()},
                                         d.path());
    CHECK(ok.exit_code == 0);
    CHECK(ok.out.find("\"column\":\"description\"") != std::string::npos);
    CHECK(ok.out.find("\"ratio\":0.750000") != std::string::npos);

    const auto low = testing::run_process(
        {bin, "validate", "-o", (d / "out").string(), "--threshold", "0.9"}, d.path());
    CHECK(low.exit_code == 1);
    CHECK(low.out.find("\"identity\":\"column-completeness\"") != std::string::npos);
  }

  TEST_CASE("usage errors exit 2") {
    TempDir d;
    CHECK(testing::run_process({bin}, d.path()).exit_code == 2);
    CHECK(testing::run_process({bin, "distill", "-o", "x"}, d.path()).exit_code == 2);
    CHECK(testing::run_process({bin, "distill", "-i", (d / "none").string(), "-o", (d / "o").string()}, d.path())
              .exit_code == 2);
    CHECK(testing::run_process({bin, "generate", "-o", (d / "g").string(), "--missing", "nonsense"}, d.path())
              .exit_code == 2);
  }
}
