// citedistill: distill a scholarly-graph dump into a compact citation edge
// list and publication tables, generate synthetic dumps, and validate outputs.
//
// Exit codes: 0 success, 1 validation failure, 2 usage or I/O error.

#include <cstdio>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "citedistill/error.hpp"
#include "citedistill/pipeline.hpp"
#include "citedistill/report.hpp"
#include "citedistill/synthgen.hpp"
#include "citedistill/validate.hpp"

namespace fs = std::filesystem;
using namespace citedistill;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitUsage = 2;

void print_summary(const RunReport& r) {
  std::cerr << "publications: seen " << r.publications_seen << ", kept " << r.publications_kept << ", malformed "
            << r.publications_skipped_malformed << ", duplicate id " << r.publications_duplicate_id << "\n"
            << "relations:    seen " << r.relations_seen << ", cites " << r.relations_cites << ", other "
            << r.relations_other_type << ", malformed " << r.relations_skipped_malformed << "\n"
            << "edges:        emitted " << r.edges_emitted << ", dangling " << r.edges_dangling_dropped
            << ", duplicate " << r.edges_duplicate << (r.dedup_edges ? " (removed)" : " (kept)") << ", self-loop "
            << r.edges_self_loop << "\n"
            << "bytes:        in " << r.bytes_in_compressed << " compressed / " << r.bytes_in_uncompressed
            << " uncompressed (ratio " << r.compression_ratio() << "), out " << r.bytes_out << "\n";
  if (r.peak_rss_bytes) std::cerr << "peak rss:     " << *r.peak_rss_bytes << " bytes\n";
}

int run_distill(const DistillOptions& options, bool quiet) {
  DistillOptions opts = options;
  if (!quiet) opts.progress = [](const std::string& msg) { std::cerr << msg << "\n"; };
  const auto result = distill(opts);
  if (!quiet) print_summary(result.report);
  for (const auto& v : result.validation.violations) std::cerr << violation_json_line(v) << "\n";
  if (!result.validation.passed()) {
    std::cerr << "validation FAILED with " << result.validation.violations.size() << " violation(s)\n";
    return kExitValidation;
  }
  return kExitOk;
}

int run_generate(const SynthConfig& config, const fs::path& out, bool manifest, bool quiet) {
  GenerateOptions gopts;
  gopts.write_manifest = manifest;
  gopts.keep_records = manifest;
  const auto m = generate(config, out, gopts);
  if (!quiet) {
    std::cerr << "wrote " << m.publication_parts.size() << " publication part(s), " << m.relation_parts.size()
              << " relation part(s) to " << out.string() << " (" << m.publication_bytes << " + " << m.relation_bytes
              << " uncompressed bytes)\n";
  }
  return kExitOk;
}

int run_validate(const ValidateOptions& options) {
  const auto result = validate_outputs(options);
  for (const auto& c : result.completeness) {
    std::printf("{\"kind\":\"completeness\",\"column\":\"%s\",\"nonNull\":%llu,\"total\":%llu,\"ratio\":%.6f}\n",
                c.column.c_str(), static_cast<unsigned long long>(c.non_null),
                static_cast<unsigned long long>(c.total), c.ratio());
  }
  for (const auto& v : result.violations) std::cout << violation_json_line(v) << "\n";
  std::cout.flush();
  return result.passed() ? kExitOk : kExitValidation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Distill scholarly-graph dumps into a compact citation edge list"};
  app.require_subcommand(1);
  bool quiet = false;
  app.add_flag("-q,--quiet", quiet, "Suppress progress output");

  // distill
  DistillOptions dopts;
  std::string pub_format = "minimal";
  std::size_t sort_memory_mb = 64;
  auto* distill_cmd = app.add_subcommand("distill", "Run the full pipeline over a dump");
  distill_cmd->add_option("-i,--input", dopts.input, "Dump root directory")->required();
  distill_cmd->add_option("-o,--output", dopts.output, "Output directory")->required();
  distill_cmd->add_flag("--dedup-edges", dopts.dedup_edges, "Drop repeated (source,target) edges");
  distill_cmd->add_flag("--headers", dopts.headers, "Write header rows to citations.csv and publications.csv");
  distill_cmd->add_option("--publications-format", pub_format, "publications.csv columns")
      ->check(CLI::IsMember({"minimal", "with-citations"}));
  distill_cmd->add_option("--threads", dopts.threads, "Worker threads per pass")->check(CLI::PositiveNumber);
  distill_cmd->add_flag("--memory-report", dopts.memory_report, "Record peak RSS in report.json");
  distill_cmd->add_flag("--skip-large", dopts.skip_large, "Do not write publications_large.csv");
  distill_cmd->add_option("--tmpdir", dopts.tmpdir, "Scratch directory (default $CITEDISTILL_TMPDIR)");
  distill_cmd->add_option("--sort-memory-mb", sort_memory_mb, "Memory per sorted run in the duplicate scan")
      ->check(CLI::PositiveNumber);
  distill_cmd->add_option("--completeness-threshold", dopts.completeness_threshold,
                          "Flag columns whose completeness is below this ratio")
      ->check(CLI::Range(0.0, 1.0));
  distill_cmd->add_option("--publication-dir", dopts.layout.publication_match,
                          "Substring naming publication folders");
  distill_cmd->add_option("--relation-dir", dopts.layout.relation_match, "Substring naming relation folders");

  // generate
  SynthConfig gconfig;
  fs::path gen_out;
  bool no_manifest = false;
  std::vector<std::string> missing;
  auto* gen_cmd = app.add_subcommand("generate", "Write a synthetic dump with a ground-truth manifest");
  gen_cmd->add_option("-o,--output", gen_out, "Dump root to create")->required();
  gen_cmd->add_option("--seed", gconfig.seed);
  gen_cmd->add_option("--publications", gconfig.n_publications);
  gen_cmd->add_option("--relations", gconfig.n_relations);
  gen_cmd->add_option("--cites-fraction", gconfig.cites_fraction)->check(CLI::Range(0.0, 1.0));
  gen_cmd->add_option("--dangling-fraction", gconfig.dangling_fraction)->check(CLI::Range(0.0, 1.0));
  gen_cmd->add_option("--duplicate-fraction", gconfig.duplicate_fraction)->check(CLI::Range(0.0, 1.0));
  gen_cmd->add_option("--malformed-fraction", gconfig.malformed_fraction)->check(CLI::Range(0.0, 1.0));
  gen_cmd->add_option("--missing", missing, "Missing rate per column, e.g. --missing description=0.2");
  gen_cmd->add_option("--parts", gconfig.parts_per_folder, "Part files per folder")->check(CLI::PositiveNumber);
  gen_cmd->add_option("--relation-parts", gconfig.relation_parts_per_folder, "Relation part files (0: --parts)");
  gen_cmd->add_option("--compression-level", gconfig.compression_level)->check(CLI::Range(0, 9));
  gen_cmd->add_flag("--no-manifest", no_manifest, "Skip manifest.json (for very large dumps)");

  // validate
  ValidateOptions vopts;
  fs::path validate_input;
  auto* val_cmd = app.add_subcommand("validate", "Check an output directory for data loss and completeness");
  val_cmd->add_option("-o,--output", vopts.output_dir, "Output directory of a distill run")->required();
  val_cmd->add_option("-i,--input", validate_input, "Dump root; re-count its records against the report");
  val_cmd->add_option("--threshold", vopts.completeness_threshold, "Minimum column completeness")
      ->check(CLI::Range(0.0, 1.0));
  val_cmd->add_option("--publication-dir", vopts.layout.publication_match);
  val_cmd->add_option("--relation-dir", vopts.layout.relation_match);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*distill_cmd) {
      dopts.publications_format = *parse_publications_format(pub_format);
      dopts.sort_memory = sort_memory_mb << 20;
      return run_distill(dopts, quiet);
    }
    if (*gen_cmd) {
      for (const auto& item : missing) {
        const auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0) throw Error(Errc::InvalidArgument, "--missing expects column=rate: " + item);
        gconfig.missing_field_rates[item.substr(0, eq)] = std::stod(item.substr(eq + 1));
      }
      return run_generate(gconfig, gen_out, !no_manifest, quiet);
    }
    if (*val_cmd) {
      if (!validate_input.empty()) vopts.input_root = validate_input;
      return run_validate(vopts);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
