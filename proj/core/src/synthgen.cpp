#include "citedistill/synthgen.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <unordered_set>

#include "citedistill/error.hpp"
#include "citedistill/gzip_writer.hpp"
#include "citedistill/records.hpp"
#include "json.hpp"

namespace fs = std::filesystem;

namespace citedistill {

using ordered_json = nlohmann::ordered_json;

namespace {

// splitmix64; the standard distributions are implementation-defined, so all
// sampling goes through this to keep dumps identical across toolchains.
__extension__ using uint128 = unsigned __int128;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t below(std::uint64_t n) {
    return static_cast<std::uint64_t>((static_cast<uint128>(next()) * n) >> 64);
  }

  bool chance(double p) { return static_cast<double>(next() >> 11) * 0x1.0p-53 < p; }

  template <class T, std::size_t N>
  const T& pick(const std::array<T, N>& items) {
    return items[below(N)];
  }

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }

 private:
  std::uint64_t state_;
};

constexpr std::array<std::string_view, 5> kIdPrefixes = {"doi_________", "dedup_wf_002", "pmid________",
                                                         "arXiv_______", "od______2659"};

constexpr std::array<std::string_view, 40> kWords = {
    "graph",     "citation",  "network",   "analysis", "dynamic",  "temporal", "learning", "model",
    "open",      "science",   "knowledge", "large",    "scale",    "dataset",  "neural",   "evolution",
    "history",   "sociology", "metrics",   "impact",   "journal",  "review",   "theory",   "method",
    "complex",   "systems",   "naïve",     "Ångström", "Zürich",   "études",   "structure", "survey",
    "inference", "random",    "walk",      "spectral", "ranking",  "memory",   "stream",   "compact"};

constexpr std::array<std::string_view, 16> kGiven = {"Ada",   "Bertrand", "Carl",  "Dorothy", "Emmy",  "Felix",
                                                     "Grace", "Hedy",     "Ivan",  "Johan",  "Kurt",  "Lise",
                                                     "Marie", "Niels",    "Olga",  "Paul"};
constexpr std::array<std::string_view, 16> kSurnames = {"Lovelace", "Russell", "Gauss",  "Hodgkin", "Noether", "Klein",
                                                        "Hopper",   "Lamarr",  "Pavlov", "Turing", "Gödel", "Meitner",
                                                        "Curie",    "Bohr",    "Ladyzhenskaya", "Shannon"};
constexpr std::array<std::string_view, 8> kContainers = {
    "Journal of Data Science", "Scientometrics", "Physical Review E", "Zenodo",
    "Proceedings of KDD, Vol. 3", "arXiv", "Nature \"Briefs\"", "Quantitative Science Studies"};
constexpr std::array<std::pair<std::string_view, std::string_view>, 5> kLanguages = {
    std::pair{"eng", "English"}, std::pair{"deu", "German"}, std::pair{"fra", "French"},
    std::pair{"ces", "Czech"}, std::pair{"und", "Undetermined"}};

struct OtherRelation {
  std::string_view name;
  std::string_view type;
};
constexpr std::array<OtherRelation, 4> kOtherRelations = {OtherRelation{"IsSupplementedBy", "supplement"},
                                                          OtherRelation{"References", "relationship"},
                                                          OtherRelation{"IsCitedBy", "citation"},
                                                          OtherRelation{"IsPartOf", "part"}};

constexpr std::array<std::string_view, 7> kOptionalColumns = {"doi",  "title",     "authors",  "description",
                                                              "date", "container", "language"};

std::string hex32(Rng& rng) {
  static constexpr char digits[] = "0123456789abcdef";
  std::string s(32, '0');
  std::uint64_t a = rng.next();
  std::uint64_t b = rng.next();
  for (int i = 0; i < 16; ++i) {
    s[i] = digits[(a >> (4 * i)) & 0xf];
    s[16 + i] = digits[(b >> (4 * i)) & 0xf];
  }
  return s;
}

std::string make_id(Rng& rng) {
  std::string id(rng.pick(kIdPrefixes));
  id += "::";
  id += hex32(rng);
  return id;
}

std::string words(Rng& rng, std::size_t lo, std::size_t hi) {
  const std::size_t n = lo + rng.below(hi - lo + 1);
  std::string s;
  for (std::size_t i = 0; i < n; ++i) {
    if (i) s.push_back(' ');
    s += rng.pick(kWords);
  }
  return s;
}

// Text that exercises CSV quoting: commas, quotes, CR/LF.
std::string awkward_text(Rng& rng, std::size_t lo, std::size_t hi) {
  std::string s = words(rng, lo, hi);
  if (rng.chance(0.25)) s += ", " + words(rng, 1, 3);
  if (rng.chance(0.15)) s += " \"" + words(rng, 1, 2) + "\"";
  if (rng.chance(0.08)) s += "\n" + words(rng, 1, 4);
  if (rng.chance(0.03)) s += "\r\n" + words(rng, 1, 2);
  return s;
}

std::uint64_t exact_count(double fraction, std::uint64_t n) {
  return static_cast<std::uint64_t>(std::llround(fraction * static_cast<double>(n)));
}

// Exactly `count` of `n` flags set, positions shuffled.
std::vector<bool> exact_flags(Rng& rng, std::uint64_t n, std::uint64_t count) {
  std::vector<std::uint32_t> idx(n);
  for (std::uint64_t i = 0; i < n; ++i) idx[i] = static_cast<std::uint32_t>(i);
  rng.shuffle(idx);
  std::vector<bool> flags(n, false);
  for (std::uint64_t i = 0; i < count && i < n; ++i) flags[idx[i]] = true;
  return flags;
}

// Representation for a field that should come out absent.
enum class AbsentAs { Omitted, Null, Empty };

AbsentAs absent_style(Rng& rng) {
  const auto r = rng.below(5);
  return r < 3 ? AbsentAs::Omitted : (r == 3 ? AbsentAs::Null : AbsentAs::Empty);
}

void put_absent(ordered_json& rec, const char* key, AbsentAs how, ordered_json empty) {
  if (how == AbsentAs::Null) rec[key] = nullptr;
  if (how == AbsentAs::Empty) rec[key] = std::move(empty);
}

const std::array<std::string_view, 3> kMalformed = {"{\"id\": \"truncated", "not json", "[1, 2, 3]"};

// Splits `lines` into `parts` contiguous blocks and hands out writers.
class PartSet {
 public:
  PartSet(const fs::path& dir, const fs::path& root, std::uint64_t lines, std::uint32_t parts, int level)
      : dir_(dir), root_(root), lines_(lines), parts_(parts), level_(level) {
    fs::create_directories(dir_);
  }

  GzipWriter& writer_for(std::uint64_t line) {
    const auto part = lines_ == 0 ? 0 : static_cast<std::uint32_t>(line * parts_ / lines_);
    while (opened_ <= part) open_next();
    ++info_.back().lines;
    return *current_;
  }

  std::vector<ManifestPart> finish(std::uint64_t& bytes) {
    while (opened_ < parts_) open_next();
    close_current();
    bytes = bytes_;
    return std::move(info_);
  }

 private:
  void close_current() {
    if (current_) {
      current_->close();
      bytes_ += current_->bytes_in();
      current_.reset();
    }
  }

  void open_next() {
    close_current();
    char name[32];
    std::snprintf(name, sizeof name, "part-%05u.json.gz", opened_);
    const fs::path file = dir_ / name;
    current_ = std::make_unique<GzipWriter>(file, level_);
    info_.push_back({fs::relative(file, root_).generic_string(), 0});
    ++opened_;
  }

  fs::path dir_;
  fs::path root_;
  std::uint64_t lines_;
  std::uint32_t parts_;
  int level_;
  std::uint32_t opened_ = 0;
  std::unique_ptr<GzipWriter> current_;
  std::vector<ManifestPart> info_;
  std::uint64_t bytes_ = 0;
};

ordered_json publication_json(Rng& rng, const std::string& id, const std::vector<bool>* missing, std::uint64_t i,
                              PublicationFragment& truth) {
  auto is_missing = [&](std::size_t col) { return missing[col][i]; };
  ordered_json rec;
  rec["id"] = id;
  rec["type"] = "publication";

  // doi via pids
  {
    ordered_json pids = ordered_json::array();
    if (rng.chance(0.3)) pids.push_back({{"scheme", "pmid"}, {"value", std::to_string(rng.below(40000000))}});
    if (!is_missing(0)) {
      std::string doi = "10." + std::to_string(1000 + rng.below(9000)) + "/" + std::string(rng.pick(kWords)) +
                        "-" + std::to_string(rng.below(100000));
      if (rng.chance(0.05)) doi += ",v2";
      pids.push_back({{"scheme", rng.chance(0.1) ? "DOI" : "doi"}, {"value", doi}});
      if (rng.chance(0.1)) pids.push_back({{"scheme", "doi"}, {"value", "10.9999/second-" + hex32(rng)}});
      truth.doi = doi;
    }
    if (!pids.empty()) {
      rec["pids"] = std::move(pids);
    } else {
      put_absent(rec, "pids", absent_style(rng), ordered_json::array());
    }
  }

  if (!is_missing(1)) {
    truth.title = awkward_text(rng, 3, 10);
    rec["mainTitle"] = *truth.title;
  } else if (absent_style(rng) == AbsentAs::Null) {
    rec["mainTitle"] = nullptr;
  }

  if (!is_missing(2)) {
    ordered_json authors = ordered_json::array();
    std::string flat;
    const auto n = 1 + rng.below(5);
    for (std::uint64_t a = 0; a < n; ++a) {
      const auto given = rng.pick(kGiven);
      const auto surname = rng.pick(kSurnames);
      ordered_json author{{"name", given}, {"surname", surname}, {"rank", a + 1}};
      // The first author always has a full name so the column is present.
      if (a > 0 && rng.chance(0.05)) {
        authors.push_back(std::move(author));
        continue;
      }
      std::string full = rng.chance(0.3) ? std::string(surname) + ", " + std::string(given.substr(0, 1)) + "."
                                         : std::string(given) + " " + std::string(surname);
      author["fullName"] = full;
      if (!flat.empty()) flat += kAuthorSeparator;
      flat += full;
      authors.push_back(std::move(author));
    }
    rec["authors"] = std::move(authors);
    truth.authors = flat;
  } else {
    put_absent(rec, "authors", absent_style(rng), ordered_json::array());
  }

  if (!is_missing(3)) {
    ordered_json descs = ordered_json::array();
    truth.description = awkward_text(rng, 10, 40);
    descs.push_back(*truth.description);
    if (rng.chance(0.2)) descs.push_back(words(rng, 5, 10));
    rec["descriptions"] = std::move(descs);
  } else {
    put_absent(rec, "descriptions", absent_style(rng), ordered_json::array());
  }

  if (!is_missing(4)) {
    char date[16];
    std::snprintf(date, sizeof date, "%04u-%02u-%02u", static_cast<unsigned>(1900 + rng.below(126)),
                  static_cast<unsigned>(1 + rng.below(12)), static_cast<unsigned>(1 + rng.below(28)));
    truth.date = date;
    rec["publicationDate"] = *truth.date;
  } else if (absent_style(rng) == AbsentAs::Null) {
    rec["publicationDate"] = nullptr;
  }

  if (!is_missing(5)) {
    truth.container = std::string(rng.pick(kContainers));
    rec["container"] = {{"name", *truth.container}, {"issnPrinted", "1234-" + std::to_string(1000 + rng.below(9000))}};
  } else {
    put_absent(rec, "container", absent_style(rng), ordered_json::object());
  }

  if (!is_missing(6)) {
    const auto& [code, label] = rng.pick(kLanguages);
    truth.language = std::string(label);
    rec["language"] = {{"code", code}, {"label", label}};
  } else {
    put_absent(rec, "language", absent_style(rng), ordered_json::object());
  }

  rec["publisher"] = rng.pick(kContainers);
  rec["bestAccessRight"] = {{"code", "c_abf2"}, {"label", "OPEN"}};
  return rec;
}

void append_relation_line(std::string& line, Rng& rng, std::string_view source, std::string_view target,
                          std::string_view name, std::string_view type) {
  line.clear();
  line += R"({"provenance":{"provenance":")";
  line += rng.chance(0.5) ? "Inferred by OpenAIRE" : "Harvested";
  line += R"(","trust":")";
  line += rng.chance(0.5) ? "0.9" : "0.8";
  line += R"("},"relType":{"name":")";
  line += name;
  line += R"(","type":")";
  line += type;
  line += R"("},"source":")";
  line += source;
  line += R"(","sourceType":"product","target":")";
  line += target;
  line += R"(","targetType":"product","validated":)";
  line += rng.chance(0.2) ? "true" : "false";
  line += "}\n";
}

ordered_json config_json(const SynthConfig& c) {
  return {{"seed", c.seed},
          {"nPublications", c.n_publications},
          {"nRelations", c.n_relations},
          {"citesFraction", c.cites_fraction},
          {"danglingFraction", c.dangling_fraction},
          {"duplicateFraction", c.duplicate_fraction},
          {"malformedFraction", c.malformed_fraction},
          {"missingFieldRates", c.missing_field_rates},
          {"partsPerFolder", c.parts_per_folder},
          {"relationPartsPerFolder", c.relation_parts_per_folder},
          {"compressionLevel", c.compression_level}};
}

}  // namespace

void SynthConfig::check() const {
  auto prob = [](double p, const char* what) {
    if (!(p >= 0.0 && p <= 1.0)) throw Error(Errc::InvalidArgument, std::string(what) + " must be in [0,1]");
  };
  prob(cites_fraction, "citesFraction");
  prob(dangling_fraction, "danglingFraction");
  prob(duplicate_fraction, "duplicateFraction");
  prob(malformed_fraction, "malformedFraction");
  if (dangling_fraction + duplicate_fraction > 1.0) {
    throw Error(Errc::InvalidArgument, "danglingFraction + duplicateFraction must not exceed 1");
  }
  for (const auto& [column, rate] : missing_field_rates) {
    if (std::find(kOptionalColumns.begin(), kOptionalColumns.end(), column) == kOptionalColumns.end()) {
      throw Error(Errc::InvalidArgument, "missing-field rate for unknown column \"" + column + "\"");
    }
    prob(rate, "missing-field rate");
  }
  if (parts_per_folder == 0) throw Error(Errc::InvalidArgument, "partsPerFolder must be at least 1");
  if (compression_level < 0 || compression_level > 9) {
    throw Error(Errc::InvalidArgument, "compression level must be in [0,9]");
  }
  if (n_publications >= static_cast<std::uint64_t>(NodeId::kLimit)) {
    throw Error(Errc::InvalidArgument, "nPublications exceeds the int32 node id space");
  }
}

Manifest generate(const SynthConfig& config, const fs::path& out_dir, const GenerateOptions& options) {
  config.check();
  Manifest m;
  m.config = config;
  fs::create_directories(out_dir);

  Rng rng(config.seed * 0x2545f4914f6cdd1dULL + 0x1234567ULL);
  const auto n_pub = config.n_publications;
  const auto n_rel = config.n_relations;

  // Publication ids, unique.
  std::vector<std::string> ids;
  ids.reserve(n_pub);
  {
    std::unordered_set<std::string> seen;
    while (ids.size() < n_pub) {
      auto id = make_id(rng);
      if (seen.insert(id).second) ids.push_back(std::move(id));
    }
  }

  std::vector<bool> missing[kOptionalColumns.size()];
  for (std::size_t c = 0; c < kOptionalColumns.size(); ++c) {
    auto it = config.missing_field_rates.find(std::string(kOptionalColumns[c]));
    const double rate = it == config.missing_field_rates.end() ? 0.0 : it->second;
    missing[c] = exact_flags(rng, n_pub, exact_count(rate, n_pub));
  }

  // Publications, with malformed lines interleaved.
  {
    m.malformed_publication_lines = exact_count(config.malformed_fraction, n_pub);
    const auto lines = n_pub + m.malformed_publication_lines;
    const auto bad = exact_flags(rng, lines, m.malformed_publication_lines);
    PartSet parts(out_dir / "publication", out_dir, lines, config.parts_per_folder, config.compression_level);
    std::uint64_t next_pub = 0;
    for (std::uint64_t line = 0; line < lines; ++line) {
      auto& out = parts.writer_for(line);
      if (bad[line]) {
        out.write(rng.pick(kMalformed));
        out.write("\n");
        continue;
      }
      PublicationFragment truth{OpenAireId(ids[next_pub])};
      const auto rec = publication_json(rng, ids[next_pub], missing, next_pub, truth);
      out.write(rec.dump());
      out.write("\n");
      if (options.keep_records) m.publications.push_back(std::move(truth));
      ++next_pub;
    }
    m.publication_parts = parts.finish(m.publication_bytes);
  }

  // Relation kinds, exact counts, shuffled.
  enum Kind : std::uint8_t { Normal, DanglingRel, Duplicate, Other, Malformed };
  const auto n_cites = exact_count(config.cites_fraction, n_rel);
  const auto n_dangling = exact_count(config.dangling_fraction, n_cites);
  const auto n_dup = std::min(exact_count(config.duplicate_fraction, n_cites), n_cites - n_dangling);
  m.malformed_relation_lines = exact_count(config.malformed_fraction, n_rel);

  std::vector<Kind> kinds;
  kinds.reserve(n_rel + m.malformed_relation_lines);
  kinds.insert(kinds.end(), n_cites - n_dangling - n_dup, Normal);
  kinds.insert(kinds.end(), n_dangling, DanglingRel);
  kinds.insert(kinds.end(), n_dup, Duplicate);
  kinds.insert(kinds.end(), n_rel - n_cites, Other);
  kinds.insert(kinds.end(), m.malformed_relation_lines, Malformed);
  rng.shuffle(kinds);

  {
    const auto relation_parts = config.relation_parts_per_folder ? config.relation_parts_per_folder
                                                                 : config.parts_per_folder;
    PartSet parts(out_dir / "relation", out_dir, kinds.size(), relation_parts, config.compression_level);
    std::vector<std::pair<std::uint32_t, std::uint32_t>> resolved;  // emitted pub-index pairs
    std::string line;
    std::string fake_source;
    std::string fake_target;

    for (std::uint64_t i = 0; i < kinds.size(); ++i) {
      auto& out = parts.writer_for(i);
      Kind kind = kinds[i];
      if (kind == Malformed) {
        out.write(rng.pick(kMalformed));
        out.write("\n");
        continue;
      }
      if (n_pub == 0 && kind != Other) kind = DanglingRel;
      if (kind == Duplicate && resolved.empty()) kind = Normal;

      std::string_view source;
      std::string_view target;
      std::string_view name = kCitesName;
      std::string_view type = kCitationType;
      bool resolvable = false;

      switch (kind) {
        case Normal: {
          const auto s = static_cast<std::uint32_t>(rng.below(n_pub));
          const auto t = static_cast<std::uint32_t>(rng.below(n_pub));
          resolved.emplace_back(s, t);
          source = ids[s];
          target = ids[t];
          resolvable = true;
          break;
        }
        case Duplicate: {
          const auto& [s, t] = resolved[rng.below(resolved.size())];
          source = ids[s];
          target = ids[t];
          resolvable = true;
          break;
        }
        case DanglingRel: {
          const auto side = n_pub == 0 ? 2 : rng.below(3);  // 0 source, 1 target, 2 both
          fake_source = side != 1 ? "dedup_wf_002::" + hex32(rng) : ids[rng.below(n_pub)];
          fake_target = side != 0 ? "dedup_wf_002::" + hex32(rng) : ids[rng.below(n_pub)];
          source = fake_source;
          target = fake_target;
          break;
        }
        case Other: {
          const auto& other = rng.pick(kOtherRelations);
          name = other.name;
          type = other.type;
          if (n_pub == 0) {
            fake_source = "dedup_wf_002::" + hex32(rng);
            fake_target = "dedup_wf_002::" + hex32(rng);
            source = fake_source;
            target = fake_target;
          } else {
            source = ids[rng.below(n_pub)];
            target = ids[rng.below(n_pub)];
          }
          break;
        }
        case Malformed: break;
      }

      append_relation_line(line, rng, source, target, name, type);
      out.write(line);
      if (options.keep_records) {
        m.relations.push_back({std::string(source), std::string(target), std::string(name), std::string(type)});
        if (resolvable) m.expected_edges.emplace_back(std::string(source), std::string(target));
      }
    }
    m.relation_parts = parts.finish(m.relation_bytes);
  }

  if (options.write_manifest) {
    std::ofstream out(out_dir / kManifestFile, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(Errc::Io, "cannot create manifest in " + out_dir.string());
    write_manifest(m, out);
    if (!out) throw Error(Errc::Io, "failed writing manifest");
  }
  return m;
}

namespace {

ordered_json optional_json(const std::optional<std::string>& v) {
  return v ? ordered_json(*v) : ordered_json(nullptr);
}

std::optional<std::string> optional_from(const ordered_json& j, const char* key) {
  const auto& v = j.at(key);
  if (v.is_null()) return std::nullopt;
  return v.get<std::string>();
}

ordered_json parts_json(const std::vector<ManifestPart>& parts) {
  ordered_json a = ordered_json::array();
  for (const auto& p : parts) a.push_back({{"file", p.file}, {"lines", p.lines}});
  return a;
}

std::vector<ManifestPart> parts_from(const ordered_json& a) {
  std::vector<ManifestPart> parts;
  for (const auto& p : a) parts.push_back({p.at("file").get<std::string>(), p.at("lines").get<std::uint64_t>()});
  return parts;
}

}  // namespace

void write_manifest(const Manifest& m, std::ostream& out) {
  ordered_json j;
  j["config"] = config_json(m.config);
  j["malformedPublicationLines"] = m.malformed_publication_lines;
  j["malformedRelationLines"] = m.malformed_relation_lines;
  j["publicationBytes"] = m.publication_bytes;
  j["relationBytes"] = m.relation_bytes;
  j["parts"] = {{"publication", parts_json(m.publication_parts)}, {"relation", parts_json(m.relation_parts)}};

  ordered_json pubs = ordered_json::array();
  for (const auto& p : m.publications) {
    pubs.push_back({{"openaireId", p.openaire_id.str()},
                    {"doi", optional_json(p.doi)},
                    {"title", optional_json(p.title)},
                    {"authors", optional_json(p.authors)},
                    {"description", optional_json(p.description)},
                    {"date", optional_json(p.date)},
                    {"container", optional_json(p.container)},
                    {"language", optional_json(p.language)}});
  }
  j["publications"] = std::move(pubs);

  ordered_json rels = ordered_json::array();
  for (const auto& r : m.relations) {
    rels.push_back({{"source", r.source}, {"target", r.target}, {"relTypeName", r.rel_type_name},
                    {"relTypeType", r.rel_type_type}});
  }
  j["relations"] = std::move(rels);

  ordered_json edges = ordered_json::array();
  for (const auto& [s, t] : m.expected_edges) edges.push_back({s, t});
  j["expectedEdges"] = std::move(edges);

  out << j.dump(1) << '\n';
}

Manifest read_manifest(const fs::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw Error(Errc::FileNotFound, file.string());
  const auto j = ordered_json::parse(in, nullptr, false);
  if (j.is_discarded()) throw Error(Errc::Format, "manifest is not valid JSON: " + file.string());

  try {
    Manifest m;
    const auto& c = j.at("config");
    m.config.seed = c.at("seed").get<std::uint64_t>();
    m.config.n_publications = c.at("nPublications").get<std::uint64_t>();
    m.config.n_relations = c.at("nRelations").get<std::uint64_t>();
    m.config.cites_fraction = c.at("citesFraction").get<double>();
    m.config.dangling_fraction = c.at("danglingFraction").get<double>();
    m.config.duplicate_fraction = c.at("duplicateFraction").get<double>();
    m.config.malformed_fraction = c.at("malformedFraction").get<double>();
    c.at("missingFieldRates").get_to(m.config.missing_field_rates);
    m.config.parts_per_folder = c.at("partsPerFolder").get<std::uint32_t>();
    m.config.relation_parts_per_folder = c.at("relationPartsPerFolder").get<std::uint32_t>();
    m.config.compression_level = c.at("compressionLevel").get<int>();
    m.malformed_publication_lines = j.at("malformedPublicationLines").get<std::uint64_t>();
    m.malformed_relation_lines = j.at("malformedRelationLines").get<std::uint64_t>();
    m.publication_bytes = j.at("publicationBytes").get<std::uint64_t>();
    m.relation_bytes = j.at("relationBytes").get<std::uint64_t>();
    m.publication_parts = parts_from(j.at("parts").at("publication"));
    m.relation_parts = parts_from(j.at("parts").at("relation"));
    for (const auto& p : j.at("publications")) {
      PublicationFragment f{OpenAireId(p.at("openaireId").get<std::string>())};
      f.doi = optional_from(p, "doi");
      f.title = optional_from(p, "title");
      f.authors = optional_from(p, "authors");
      f.description = optional_from(p, "description");
      f.date = optional_from(p, "date");
      f.container = optional_from(p, "container");
      f.language = optional_from(p, "language");
      m.publications.push_back(std::move(f));
    }
    for (const auto& r : j.at("relations")) {
      m.relations.push_back({r.at("source").get<std::string>(), r.at("target").get<std::string>(),
                             r.at("relTypeName").get<std::string>(), r.at("relTypeType").get<std::string>()});
    }
    for (const auto& e : j.at("expectedEdges")) {
      m.expected_edges.emplace_back(e.at(0).get<std::string>(), e.at(1).get<std::string>());
    }
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::Format, std::string("manifest: ") + e.what());
  }
}

}  // namespace citedistill
