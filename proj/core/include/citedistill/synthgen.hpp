#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "citedistill/model.hpp"

namespace citedistill {

/// Knobs for a synthetic dump. Fractions are exact: the generator picks
/// round(fraction * count) records for each property, then shuffles them.
struct SynthConfig {
  std::uint64_t seed = 1;
  std::uint64_t n_publications = 1000;
  std::uint64_t n_relations = 5000;
  double cites_fraction = 0.6;       // of relations
  double dangling_fraction = 0.1;    // of Cites relations
  double duplicate_fraction = 0.02;  // of Cites relations, repeating an earlier resolvable edge
  double malformed_fraction = 0.0;   // extra unparseable lines, relative to each record count
  /// Per optional column (doi, title, authors, description, date, container,
  /// language): fraction of publications where it is absent.
  std::map<std::string, double> missing_field_rates;
  std::uint32_t parts_per_folder = 2;
  std::uint32_t relation_parts_per_folder = 0;  // 0: same as parts_per_folder
  int compression_level = 6;

  /// Throws Error(InvalidArgument) for out-of-range fractions or zero parts.
  void check() const;
};

struct ManifestRelation {
  std::string source;
  std::string target;
  std::string rel_type_name;
  std::string rel_type_type;
  friend bool operator==(const ManifestRelation&, const ManifestRelation&) = default;
};

struct ManifestPart {
  std::string file;  // relative to the dump root
  std::uint64_t lines = 0;
  friend bool operator==(const ManifestPart&, const ManifestPart&) = default;
};

/// Ground truth for a generated dump. Publications carry the already
/// flattened field values a correct parser must produce.
struct Manifest {
  SynthConfig config;
  std::vector<PublicationFragment> publications;
  std::vector<ManifestRelation> relations;
  /// Cites relations whose endpoints are both publications, in stream order.
  std::vector<std::pair<std::string, std::string>> expected_edges;
  std::uint64_t malformed_publication_lines = 0;
  std::uint64_t malformed_relation_lines = 0;
  std::vector<ManifestPart> publication_parts;
  std::vector<ManifestPart> relation_parts;
  std::uint64_t publication_bytes = 0;  // uncompressed
  std::uint64_t relation_bytes = 0;
};

struct GenerateOptions {
  bool write_manifest = true;  // manifest.json beside the dump
  /// Keep publications/relations/expected_edges in the returned manifest.
  /// Off for dumps too large to hold in memory; counts and parts are kept.
  bool keep_records = true;
};

/// Writes publication/part-NNNNN.json.gz and relation/part-NNNNN.json.gz
/// under out_dir. Same config gives byte-identical files.
Manifest generate(const SynthConfig& config, const std::filesystem::path& out_dir,
                  const GenerateOptions& options = {});

void write_manifest(const Manifest& manifest, std::ostream& out);
Manifest read_manifest(const std::filesystem::path& file);

inline constexpr std::string_view kManifestFile = "manifest.json";

}  // namespace citedistill
