#include <CLI11.hpp>
#include <iostream>
#include <string>
#include <vector>

#include "qcbench/bench.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitPipeline = 3;

std::vector<qcb::ReportFormat> parse_formats(const std::string& spec) {
  std::vector<qcb::ReportFormat> out;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item == "json") out.push_back(qcb::ReportFormat::json);
    else if (item == "csv") out.push_back(qcb::ReportFormat::csv);
    else if (item == "table" || item == "table-text") out.push_back(qcb::ReportFormat::table_text);
    else throw qcb::ConfigError("unknown report format '" + item + "'");
  }
  return out;
}

qcb::BenchmarkConfig load_config(const std::string& path, const std::string& seed_override) {
  qcb::BenchmarkConfig cfg = qcb::parse_ini(path);
  if (!seed_override.empty()) cfg.seed = std::stoull(seed_override);
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum chemistry VQE benchmark runner"};
  app.require_subcommand(1);

  std::string config_path, out_dir = "bench-out", formats = "json,csv", points_path, seed;

  auto* run = app.add_subcommand("run", "Run one benchmark from an INI config");
  run->add_option("config", config_path, "benchmark INI file")->required();
  run->add_option("--out", out_dir, "output directory");
  run->add_option("--seed", seed, "override the config seed");
  run->add_option("--format", formats, "comma-separated: json,csv,table");

  auto* scan = app.add_subcommand("scan", "Dissociation scan over per-distance integral files");
  scan->add_option("config", config_path, "benchmark INI file")->required();
  scan->add_option("--points", points_path, "manifest: one '<R> <integral-file>' per line")
      ->required();
  scan->add_option("--out", out_dir, "output directory");
  scan->add_option("--seed", seed, "override the config seed");
  scan->add_option("--format", formats, "comma-separated: json,csv,table");

  auto* oracle = app.add_subcommand("oracle", "Print the FCI reference energy only");
  oracle->add_option("config", config_path, "benchmark INI file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (oracle->parsed()) {
      const qcb::BenchmarkConfig cfg = load_config(config_path, seed);
      std::cout.precision(12);
      std::cout << qcb::fci_reference(cfg) << "\n";
      return kExitOk;
    }

    const qcb::BenchmarkConfig cfg = load_config(config_path, seed);
    const qcb::BenchReport report = run->parsed()
                                        ? qcb::run_benchmark(cfg)
                                        : qcb::dissociation_scan(
                                              cfg, qcb::parse_scan_manifest(points_path));
    const auto written = qcb::emit_report(report, out_dir, parse_formats(formats));
    std::cout << qcb::format_console_table(report);
    for (const auto& f : written) std::cout << "wrote " << f.string() << "\n";
    return kExitOk;
  } catch (const qcb::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "pipeline error: " << e.what() << "\n";
    return kExitPipeline;
  }
}
