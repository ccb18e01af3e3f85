#include "doctest.h"

#include "citedistill/error.hpp"
#include "citedistill/model.hpp"

using namespace citedistill;

namespace {

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return Errc::Io;
}

}  // namespace

TEST_CASE("OpenAireId rejects empty and newline values") {
  CHECK(code_of([] { OpenAireId(""); }) == Errc::InvalidArgument);
  CHECK(code_of([] { OpenAireId("a\nb"); }) == Errc::InvalidArgument);
  CHECK_FALSE(OpenAireId::is_valid(""));
  CHECK(OpenAireId::is_valid("doi_________::7e8d84fc096936557defb78d22cca97c"));
}

TEST_CASE("OpenAireId equality is byte exact") {
  CHECK(OpenAireId("abc") == OpenAireId("abc"));
  CHECK_FALSE(OpenAireId("abc") == OpenAireId("ABC"));
  CHECK_FALSE(OpenAireId("abc") == OpenAireId("abc "));
}

TEST_CASE("NodeId range") {
  CHECK(NodeId::from(0).value() == 0);
  CHECK(NodeId::from(NodeId::kLimit - 1).value() == 2147483647);
  CHECK(code_of([] { (void)NodeId::from(NodeId::kLimit); }) == Errc::IdSpaceExhausted);
  CHECK(code_of([] { (void)NodeId::from(std::int64_t{1} << 40); }) == Errc::IdSpaceExhausted);
  CHECK(code_of([] { (void)NodeId::from(-1); }) == Errc::InvalidArgument);
}

TEST_CASE("self loops") {
  CHECK(CitationEdge{NodeId::from(3), NodeId::from(3)}.is_self_loop());
  CHECK_FALSE(CitationEdge{NodeId::from(3), NodeId::from(4)}.is_self_loop());
}

TEST_CASE("publications format names") {
  CHECK(parse_publications_format("minimal") == PublicationsFormat::Minimal);
  CHECK(parse_publications_format("with-citations") == PublicationsFormat::WithCitations);
  CHECK_FALSE(parse_publications_format("full").has_value());
  CHECK(to_string(PublicationsFormat::WithCitations) == "with-citations");
}

TEST_CASE("large columns follow the published field order") {
  CHECK(kLargeColumnNames.size() == 10);
  CHECK(kLargeColumnNames.front() == "nodeId");
  CHECK(kLargeColumnNames[8] == "citations");
  CHECK(kLargeColumnNames.back() == "language");

  PublicationFragment f(OpenAireId("x"));
  f.doi = "10.1/x";
  CHECK(optional_field(f, Column::NodeId) == nullptr);
  CHECK(optional_field(f, Column::OpenaireId) == nullptr);
  CHECK(optional_field(f, Column::Citations) == nullptr);
  REQUIRE(optional_field(f, Column::Doi) != nullptr);
  CHECK(*optional_field(f, Column::Doi) == "10.1/x");
  CHECK(optional_field(f, Column::Title)->has_value() == false);
}

TEST_CASE("report ratios") {
  RunReport r;
  CHECK(r.compression_ratio() == 0.0);
  CHECK(r.bytes_per_emitted_edge() == 0.0);
  r.bytes_in_compressed = 100;
  r.bytes_in_uncompressed = 850;
  r.edges_emitted = 4;
  r.bytes_out_by_file["citations.csv"] = 80;
  r.cites_relation_bytes = 1360;
  CHECK(r.compression_ratio() == doctest::Approx(8.5));
  CHECK(r.bytes_per_emitted_edge() == doctest::Approx(20.0));
  CHECK(r.relation_json_to_edge_row_ratio() == doctest::Approx(17.0));
}

TEST_CASE("error messages carry the code name") {
  const Error e(Errc::IdSpaceExhausted, "full");
  CHECK(std::string(e.what()) == "IdSpaceExhausted: full");
  CHECK(e.code() == Errc::IdSpaceExhausted);
}
