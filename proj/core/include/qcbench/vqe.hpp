#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "qcbench/circuit.hpp"
#include "qcbench/mitigate.hpp"
#include "qcbench/pauli.hpp"
#include "qcbench/sim.hpp"

namespace qcb {

struct SweepSample {
  double theta = 0.0;
  EnergyEstimate energy;
};

struct SweepResult {
  double theta_star = 0.0;
  double energy_star = 0.0;  // objective re-measured at theta_star
  std::vector<SweepSample> samples;
};

/// Evaluates the objective on a uniform n_points grid over [lo, hi], fits a
/// natural cubic spline, locates its minimizer by dense evaluation (1e4
/// points) and re-measures the objective there. Ties break toward the
/// smallest theta.
SweepResult sweep_minimize(const std::function<EnergyEstimate(double)>& objective, double lo,
                           double hi, int n_points);

struct VqeTraceEntry {
  int iteration = 0;
  std::vector<double> theta;
  EnergyEstimate energy;
};

struct VqeTrace {
  std::vector<VqeTraceEntry> entries;
  std::size_t best_index = 0;  // flagged optimum
  bool hit_max_iter = false;

  /// One JSON object per line, one line per evaluation.
  std::string to_json_lines() const;
};

/// Nelder-Mead simplex with adaptive coefficients; every evaluation is
/// recorded and the best-seen point is returned, never the last-evaluated.
/// Reaching max_iter flags the trace instead of throwing.
VqeTrace minimize_dfo(const std::function<EnergyEstimate(std::span<const double>)>& objective,
                      std::vector<double> theta0, int max_iter);

/// Minimum eigenvalue of the dense Hermitian matrix of h (guard: 14 qubits).
double exact_ground_energy(const PauliSum& h);

struct MitigationFlags {
  bool readout = false;
  bool extrapolation = false;
  bool rdm = false;

  /// Valid combinations: none | readout | readout+extrapolation | rdm.
  void validate() const;
  std::string label() const;  // "none", "ro", "ro+re", "rdm"
};

/// Rebuilds the bound ansatz (reference preparation included) for a
/// parameter vector.
using AnsatzFactory = std::function<Circuit(std::span<const double>)>;

struct VqeOptions {
  enum class Optimizer { sweep, dfo };
  Optimizer optimizer = Optimizer::dfo;
  int max_iter = 100;
  int sweep_points = 25;
  long shots = 0;  // 0 = exact expectations
  NoiseModel noise;
  MitigationFlags flags;
  std::uint64_t seed = 0;
  std::vector<double> initial;  // empty = zeros
  /// Reduced integral set backing the RDM energy functional; required when
  /// flags.rdm is set.
  const IntegralSet* rdm_integrals = nullptr;
  long calibration_shots = 0;  // 0 = use the model's true flip rates
};

struct VqeResult {
  VqeTrace trace;
  std::vector<double> best_theta;
  EnergyEstimate final_energy;  // re-measured at the optimum
};

/// Wires the simulator and the mitigation strategies into the chosen
/// optimizer. With the rdm flag the objective is
/// energy_from_rdm(mcweeny_purify(measure_rdm2(...))); with extrapolation
/// every evaluation measures r in {1,3,5} and takes the order-2 intercept.
VqeResult vqe_run(const PauliSum& h, const AnsatzFactory& ansatz, int n_params,
                  const VqeOptions& opts);

}  // namespace qcb
