#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "qillume/sweep.hpp"

namespace {

int run_command(const std::string& target, std::string out_path, std::string format,
                int parallel, bool dump, bool refine, bool timings) {
  qillume::SweepConfig cfg;
  try {
    if (std::filesystem::exists(target)) {
      cfg = qillume::load_config(target);
    } else {
      cfg = qillume::preset(target);
    }
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  }

  if (parallel > 0) cfg.parallelism = parallel;
  if (refine) cfg.refine_pstar = true;
  if (!out_path.empty()) cfg.output_path = out_path;
  if (cfg.output_path.empty()) cfg.output_path = "-";
  if (dump) {
    cfg.dump_dir = cfg.output_path == "-" ? std::string("matrices")
                                          : cfg.output_path + ".matrices";
  }

  qillume::SweepResult result;
  try {
    result = qillume::run_sweep(cfg, timings);
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  }

  const std::string payload = format == "json" ? qillume::emit_json(result.rows)
                                               : qillume::emit_csv(result.rows);
  if (cfg.output_path == "-") {
    std::cout << payload;
  } else {
    std::ofstream out(cfg.output_path, std::ios::binary);
    if (!out) {
      std::cerr << "cannot write output file: " << cfg.output_path << "\n";
      return 1;
    }
    out << payload;
  }

  if (result.failed > 0) {
    std::cerr << result.failed << " of " << result.rows.size()
              << " grid points failed to converge\n";
    return 2;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quantum illumination sweeps over non-Gaussian probe states"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "evaluate a preset or a JSON config file");
  std::string target, out_path, format = "csv";
  int parallel = 0;
  bool dump = false, refine = false, timings = false;
  run->add_option("target", target, "preset name or config path")->required();
  run->add_option("--out", out_path, "output file (default stdout)");
  run->add_option("--format", format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  run->add_option("--parallel", parallel, "worker count (overrides QILLUME_WORKERS)");
  run->add_flag("--dump-matrices", dump, "dump hypothesis matrices as triplet CSVs");
  run->add_flag("--refine-pstar", refine, "bisection refinement of p* thresholds");
  run->add_flag("--timings", timings, "record per-row wall time (breaks byte stability)");

  auto* presets = app.add_subcommand("presets", "list built-in presets");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  if (presets->parsed()) {
    for (const auto& name : qillume::preset_names()) std::cout << name << "\n";
    return 0;
  }
  return run_command(target, out_path, format, parallel, dump, refine, timings);
}
