#include "doctest.h"

#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "citedistill/csv.hpp"
#include "citedistill/emit.hpp"
#include "citedistill/error.hpp"
#include "test_support.hpp"

using namespace citedistill;

namespace {

PublicationRecord record(std::int64_t node, const std::string& id) {
  return PublicationRecord{NodeId::from(node), PublicationFragment(OpenAireId(id)), 0};
}

std::string nasty(std::mt19937_64& rng) {
  static const std::vector<std::string> bits{"a", "b", ",", "\"", "\n", "\r\n", " ", "é", "\"\"", "x,y", "\r"};
  std::string s;
  const auto n = rng() % 8;
  for (std::uint64_t i = 0; i < n; ++i) s += bits[rng() % bits.size()];
  return s;
}

}  // namespace

TEST_CASE("golden publication row") {
  auto rec = record(14209, "x");
  rec.fields.doi = "10.3931/e-rara-45685";
  CHECK(format_publication_row(rec, PublicationsFormat::Minimal) == "14209,10.3931/e-rara-45685");
  rec.citations = 12;
  CHECK(format_publication_row(rec, PublicationsFormat::WithCitations) == "14209,10.3931/e-rara-45685,12");
}

TEST_CASE("missing doi renders as an empty field") {
  const auto rec = record(3, "x");
  CHECK(format_publication_row(rec, PublicationsFormat::Minimal) == "3,");
}

TEST_CASE("quoting is minimal") {
  std::string out;
  append_csv_field(out, "Graphs, \"large\" ones");
  CHECK(out == "\"Graphs, \"\"large\"\" ones\"");
  out.clear();
  append_csv_field(out, "plain text");
  CHECK(out == "plain text");
  out.clear();
  append_csv_field(out, "line\nbreak");
  CHECK(out == "\"line\nbreak\"");
  CHECK(csv_needs_quoting("a\rb"));
  CHECK_FALSE(csv_needs_quoting("a;b"));
}

TEST_CASE("edge rows and headers") {
  CHECK(format_edge_row({NodeId::from(0), NodeId::from(7)}) == "0,7");
  std::ostringstream with, without;
  const std::vector<CitationEdge> edges{{NodeId::from(1), NodeId::from(2)}};
  CHECK(write_citations(edges, without) == 4);
  write_citations(edges, with, true);
  CHECK(without.str() == "1,2\n");
  CHECK(with.str() == "source,target\n1,2\n");
  CHECK(publications_header(PublicationsFormat::Minimal) == "nodeId,doi");
  CHECK(publications_header(PublicationsFormat::WithCitations) == "nodeId,doi,citations");
  CHECK(publications_large_header() ==
        "nodeId,openaireId,doi,title,authors,description,date,container,citations,language");
}

TEST_CASE("large rows round trip through an independent parser") {
  std::mt19937_64 rng(42);
  std::vector<PublicationRecord> recs;
  for (int i = 0; i < 300; ++i) {
    auto r = record(i, "id::" + std::to_string(i) + (i % 7 == 0 ? ",odd" : ""));
    auto maybe = [&]() -> std::optional<std::string> {
      if (rng() % 5 == 0) return std::nullopt;
      return nasty(rng);
    };
    r.fields.doi = maybe();
    r.fields.title = maybe();
    r.fields.authors = maybe();
    r.fields.description = maybe();
    r.fields.date = maybe();
    r.fields.container = maybe();
    r.fields.language = maybe();
    r.citations = rng() % 1000;
    recs.push_back(std::move(r));
  }
  std::ostringstream out;
  const auto bytes = write_publications_large(recs, out);
  CHECK(bytes == out.str().size());
  const auto rows = testing::parse_csv(out.str());
  REQUIRE(rows.size() == recs.size() + 1);
  for (std::size_t i = 0; i < recs.size(); ++i) {
    const auto& row = rows[i + 1];
    const auto& r = recs[i];
    REQUIRE(row.size() == 10);
    CHECK(row[0] == std::to_string(r.node_id.value()));
    CHECK(row[1] == r.fields.openaire_id.str());
    CHECK(row[2] == r.fields.doi.value_or(""));
    CHECK(row[3] == r.fields.title.value_or(""));
    CHECK(row[4] == r.fields.authors.value_or(""));
    CHECK(row[5] == r.fields.description.value_or(""));
    CHECK(row[6] == r.fields.date.value_or(""));
    CHECK(row[7] == r.fields.container.value_or(""));
    CHECK(row[8] == std::to_string(r.citations));
    CHECK(row[9] == r.fields.language.value_or(""));
  }

  // The library reader agrees with the independent one.
  std::istringstream in(out.str());
  CsvReader reader(in);
  std::vector<std::string> fields;
  std::size_t n = 0;
  while (reader.next_row(fields)) {
    CHECK(fields == rows[n]);
    ++n;
  }
  CHECK(n == rows.size());
}

TEST_CASE("reader rejects malformed quoting") {
  const auto bad = [](const std::string& text) {
    std::istringstream in(text);
    CsvReader r(in);
    std::vector<std::string> f;
    try {
      while (r.next_row(f)) {
      }
    } catch (const Error& e) {
      return e.code() == Errc::MalformedCsv;
    }
    return false;
  };
  CHECK(bad("\"open\n"));
  CHECK(bad("\"a\"b,c\n"));
  CHECK_FALSE(bad("a,\"b\"\"c\"\n"));
}

TEST_CASE("reader reports an unterminated final row") {
  std::istringstream in("a,b\nc,d");
  CsvReader r(in);
  std::vector<std::string> f;
  REQUIRE(r.next_row(f));
  CHECK(r.last_row_terminated());
  REQUIRE(r.next_row(f));
  CHECK(f == std::vector<std::string>{"c", "d"});
  CHECK_FALSE(r.last_row_terminated());
  CHECK_FALSE(r.next_row(f));
}

TEST_CASE("writers are deterministic") {
  std::vector<PublicationRecord> recs;
  for (int i = 0; i < 20; ++i) {
    recs.push_back(record(i, "p" + std::to_string(i)));
    recs.back().fields.title = "t, " + std::to_string(i);
  }
  std::ostringstream a, b;
  write_publications_large(recs, a);
  write_publications_large(recs, b);
  CHECK(a.str() == b.str());
}
