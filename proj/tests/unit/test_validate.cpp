#include "doctest.h"

#include <algorithm>
#include <sstream>
#include <string>

#include "citedistill/emit.hpp"
#include "citedistill/gzip_writer.hpp"
#include "citedistill/line_reader.hpp"
#include "citedistill/pipeline.hpp"
#include "citedistill/report.hpp"
#include "citedistill/synthgen.hpp"
#include "citedistill/validate.hpp"
#include "test_support.hpp"

using namespace citedistill;
using testing::TempDir;

namespace {

RunReport balanced() {
  RunReport r;
  r.publications_seen = 10;
  r.publications_kept = 8;
  r.publications_skipped_malformed = 1;
  r.publications_duplicate_id = 1;
  r.relations_seen = 20;
  r.relations_cites = 12;
  r.relations_other_type = 7;
  r.relations_skipped_malformed = 1;
  r.edges_emitted = 9;
  r.edges_dangling_dropped = 3;
  r.edges_dangling_source = 1;
  r.edges_dangling_target = 1;
  r.edges_dangling_both = 1;
  r.edges_duplicate = 2;
  r.publication_bytes_uncompressed = 100;
  r.relation_bytes_uncompressed = 200;
  r.bytes_in_uncompressed = 300;
  r.per_column_null_counts["doi"] = 3;
  return r;
}

bool names(const std::vector<Violation>& vs, const std::string& identity) {
  return std::any_of(vs.begin(), vs.end(), [&](const Violation& v) { return v.identity == identity; });
}

struct Fixture {
  TempDir dir{"validate"};
  fs::path dump = dir / "dump";
  fs::path out = dir / "out";

  explicit Fixture(bool headers = false, PublicationsFormat format = PublicationsFormat::Minimal) {
    SynthConfig c;
    c.seed = 99;
    c.n_publications = 300;
    c.n_relations = 1500;
    c.missing_field_rates["description"] = 0.2;
    generate(c, dump);
    DistillOptions o;
    o.input = dump;
    o.output = out;
    o.headers = headers;
    o.publications_format = format;
    const auto r = distill(o);
    REQUIRE(r.validation.passed());
  }

  ValidationResult check(bool with_input = true) const {
    ValidateOptions v;
    v.output_dir = out;
    if (with_input) v.input_root = dump;
    return validate_outputs(v);
  }
};

void drop_line(const fs::path& file, std::size_t index) {
  std::istringstream in(testing::slurp(file));
  std::string line, rest;
  for (std::size_t i = 0; std::getline(in, line); ++i) {
    if (i != index) rest += line + "\n";
  }
  testing::spit(file, rest);
}

}  // namespace

TEST_CASE("balanced counters pass") { CHECK(verify_counts(balanced()).empty()); }

TEST_CASE("each flipped counter breaks its identity") {
  struct Flip {
    const char* identity;
    void (*apply)(RunReport&);
  };
  const Flip flips[] = {
      {"publication-conservation", [](RunReport& r) { ++r.publications_seen; }},
      {"publication-conservation", [](RunReport& r) { --r.publications_kept; }},
      {"relation-conservation", [](RunReport& r) { ++r.relations_other_type; }},
      {"edge-conservation", [](RunReport& r) { ++r.edges_emitted; }},
      {"dangling-breakdown", [](RunReport& r) { ++r.edges_dangling_both; }},
      {"self-loops-bounded", [](RunReport& r) { r.edges_self_loop = r.edges_emitted + 1; }},
      {"no-corrupt-parts", [](RunReport& r) { r.corrupt_parts.push_back("relation/part-00000.json.gz"); }},
      {"byte-accounting", [](RunReport& r) { ++r.relation_bytes_uncompressed; }},
      {"null-counts-bounded", [](RunReport& r) { r.per_column_null_counts["doi"] = 100; }},
  };
  for (const auto& f : flips) {
    auto r = balanced();
    f.apply(r);
    const auto v = verify_counts(r);
    CHECK_MESSAGE(names(v, f.identity), f.identity);
  }
}

TEST_CASE("dedup changes the edge identity") {
  auto r = balanced();
  r.dedup_edges = true;
  CHECK(names(verify_counts(r), "edge-conservation"));
  r.edges_emitted -= r.edges_duplicate;
  CHECK(verify_counts(r).empty());
}

TEST_CASE("description missing in a fifth of records gives completeness 0.8") {
  Fixture f;
  const auto cols = verify_completeness(f.out / kPublicationsLargeFile, 0.9);
  const auto it = std::find_if(cols.begin(), cols.end(), [](const auto& c) { return c.column == "description"; });
  REQUIRE(it != cols.end());
  CHECK(it->total == 300);
  CHECK(it->non_null == 240);
  CHECK(it->ratio() == 0.8);
  CHECK(it->below_threshold);
  for (const auto& c : cols) {
    if (c.column != "description") CHECK_FALSE(c.below_threshold);
  }
  CHECK(verify_completeness(f.out / kPublicationsLargeFile, 0.8)[5].below_threshold == false);

  ValidateOptions v;
  v.output_dir = f.out;
  v.completeness_threshold = 0.9;
  CHECK(names(validate_outputs(v).violations, "column-completeness"));
}

TEST_CASE("clean output passes, with and without the input recount") {
  Fixture f;
  CHECK(f.check(false).passed());
  CHECK(f.check(true).passed());
}

TEST_CASE("headers and citation columns validate") {
  Fixture f(true, PublicationsFormat::WithCitations);
  CHECK(f.check().passed());
}

TEST_CASE("dropped publication line in the dump") {
  Fixture f;
  const auto part = f.dump / "publication/part-00000.json.gz";
  std::string text;
  {
    LineReader r(part);
    std::string_view line;
    while (r.next(line)) {
      if (r.line_index() != 3) text += std::string(line) + "\n";
    }
  }
  fs::remove(part);
  {
    GzipWriter w(part);
    w.write(text);
  }
  CHECK(names(f.check().violations, "input-publication-lines"));
}

TEST_CASE("dropped output rows") {
  Fixture f;
  drop_line(f.out / kPublicationsFile, 10);
  const auto v = f.check(false).violations;
  CHECK(names(v, "publications-rows-match-report"));
  CHECK(names(v, "dense-node-range"));
}

TEST_CASE("dropped citation row") {
  Fixture f;
  drop_line(f.out / kCitationsFile, 0);
  const auto v = f.check(false).violations;
  CHECK(names(v, "citations-rows-match-report"));
  CHECK(names(v, "citations-column-matches-in-degree"));
}

TEST_CASE("out of range edge") {
  Fixture f;
  testing::spit(f.out / kCitationsFile, testing::slurp(f.out / kCitationsFile) + "0,300\n");
  CHECK(names(f.check(false).violations, "endpoint-in-node-set"));
}

TEST_CASE("truncated idmap") {
  Fixture f;
  const auto text = testing::slurp(f.out / kIdMapFile);
  testing::spit(f.out / kIdMapFile, text.substr(0, text.size() - 5));
  CHECK(names(f.check(false).violations, "idmap-matches-publications"));
}

TEST_CASE("corrupted gzip tail") {
  Fixture f;
  const auto part = f.dump / "relation/part-00001.json.gz";
  auto bytes = testing::slurp(part);
  testing::spit(part, bytes.substr(0, bytes.size() - 20));
  CHECK(names(f.check().violations, "no-corrupt-parts"));
}

TEST_CASE("missing report") {
  Fixture f;
  fs::remove(f.out / kReportFile);
  CHECK(names(f.check().violations, "report-readable"));
}

TEST_CASE("report round trip") {
  auto r = balanced();
  r.corrupt_parts = {"relation/x.gz"};
  r.bytes_out_by_file["citations.csv"] = 42;
  r.skip_reasons["relation.MalformedJson"] = 1;
  r.peak_rss_bytes = 12345;
  r.publications_format = PublicationsFormat::WithCitations;
  std::stringstream ss;
  write_report(r, ss);
  CHECK(read_report(ss) == r);
}
