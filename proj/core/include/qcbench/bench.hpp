#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qcbench/vqe.hpp"

namespace qcb {

/// Invalid or unusable configuration; the CLI maps this to exit code 2
/// (pipeline failures exit 3).
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Parsed benchmark input. Sections and keys follow the INI layout
/// ([XACC], [Error Mitigation], [VQE], [Ansatz], [Molecule]) with artifact
/// extensions under [Extensions]; unknown keys warn on stderr and are kept
/// out of the run.
struct BenchmarkConfig {
  // [XACC]
  std::string accelerator = "sim:statevector";
  std::string algorithm = "vqe";
  // [Error Mitigation] + [Extensions] rdm-purification
  MitigationFlags mitigation;
  // [VQE]
  std::string optimizer = "cobyla";
  // [Ansatz]
  std::string ansatz;
  // [Molecule]
  std::string basis;
  std::string geometry;  // echoed into reports, never interpreted
  std::vector<int> frozen;
  std::vector<int> active;
  // [Extensions]
  std::filesystem::path integrals_path;
  long shots = 0;
  long calibration_shots = -1;  // -1: follow shots
  std::uint64_t seed = 0;
  int iterations = 30;
  int sweep_points = 25;
  bool z2_tapering = false;
  std::string mode;  // "sweep", "optimize" or "" for automatic
  int hwe_layers = 1;
  std::vector<double> warm_start;
  int repeats_at_optimum = 2;
  int scan_repeats = 5;
  std::string label;
  std::optional<double> reference_energy;

  // resolved backend
  bool density_backend = false;
  NoiseModel noise;

  std::string raw_text;  // exact file contents, hashed for provenance
  std::string config_hash() const;

  /// Checks everything needed to execute (backend scheme, ansatz name,
  /// mitigation combination, orbital lists, integral path present).
  void validate_for_run() const;
};

BenchmarkConfig parse_ini(const std::filesystem::path& path);

/// One result row; the first six fields follow the summary-table column
/// order (molecule, ansatz, tapering, backend, error mitigation, energy).
struct BenchRow {
  std::string molecule;
  std::string ansatz;
  bool z2_tapering = false;
  std::string backend;
  std::string em = "none";
  double energy = 0.0;
  double stderr_ = 0.0;
  double fci = 0.0;      // always from the exact-diagonalization oracle
  double accuracy = 0.0; // |energy - fci|
  bool chemical_accuracy = false;
  std::optional<double> reference_energy;  // config-supplied, if any
  std::optional<double> reference_delta;
  std::optional<double> linear_intercept, linear_sigma;
  std::optional<double> quadratic_intercept, quadratic_sigma;
  std::string r_label;  // dissociation distance label, empty otherwise
  long shots = 0;
  std::uint64_t seed = 0;
  std::string config_hash;
  std::string error;      // per-point failure in scans
  double runtime_seconds = 0.0;  // console table only, not serialized
};

struct CurvePoint {
  std::string r_label;
  double energy = 0.0;
  double sigma = 0.0;
  double fci = 0.0;
};

struct BenchReport {
  std::vector<BenchRow> rows;
  VqeTrace trace;                         // optimization trace (Fig. 5 analogue)
  std::vector<SweepSample> sweep;         // theta sweep samples (Fig. 3 analogue)
  std::vector<ExtrapolationFit> fits;     // linear + quadratic at the optimum
  std::vector<CurvePoint> curve;          // dissociation curve (Fig. 6 analogue)
  std::string hamiltonian_text;           // PauliSum cache/provenance
};

/// Chemical accuracy threshold in Hartree.
inline constexpr double kChemicalAccuracy = 0.0016;

/// Executes load -> freeze_core -> Jordan-Wigner -> (optional taper) ->
/// ansatz -> sweep/optimize -> mitigation, always diagonalizing the reduced
/// Hamiltonian for the FCI reference column.
BenchReport run_benchmark(const BenchmarkConfig& config);

/// The FCI reference alone: load, reduce, transform, diagonalize.
double fci_reference(const BenchmarkConfig& config);

struct ScanPoint {
  std::string label;
  std::filesystem::path integrals;
};

std::vector<ScanPoint> parse_scan_manifest(const std::filesystem::path& path);

/// Per-distance benchmark with scan_repeats repetitions and sample statistics;
/// per-point failures are recorded in the row and the scan continues.
BenchReport dissociation_scan(const BenchmarkConfig& config, const std::vector<ScanPoint>& points);

enum class ReportFormat { json, csv, table_text };

/// Writes report.<ext> plus the plot-data CSVs (sweep.csv, trace.jsonl,
/// extrapolation.csv, curve.csv) into out_dir. Output bytes are a pure
/// function of the report contents.
std::vector<std::filesystem::path> emit_report(const BenchReport& report,
                                               const std::filesystem::path& out_dir,
                                               const std::vector<ReportFormat>& formats);

/// Console summary including runtimes (not part of the deterministic files).
std::string format_console_table(const BenchReport& report);

}  // namespace qcb
