#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qcbench/circuit.hpp"
#include "qcbench/pauli.hpp"
#include "qcbench/rdm.hpp"

namespace qcb {

/// Pure statevector or density matrix over n qubits; qubit q is bit q of the
/// basis index.
struct QuantumState {
  int n_qubits = 0;
  Eigen::VectorXcd statevector;  // empty when mixed
  Eigen::MatrixXcd density;      // empty when pure

  bool is_density() const { return density.size() > 0; }
  Eigen::VectorXd probabilities() const;
  /// <P> of the bare Pauli string; the term coefficient is not applied.
  std::complex<double> pauli_expectation(const PauliTerm& term) const;
  /// Density-matrix view regardless of representation.
  Eigen::MatrixXcd as_density() const;
};

/// Two-qubit white-noise strength per CNOT plus an optional per-qubit
/// readout bit-flip model (p(1|0), p(0|1)).
struct NoiseModel {
  double epsilon = 0.0;
  std::vector<std::pair<double, double>> readout;

  bool has_readout() const;
  bool is_noisy() const { return epsilon > 0.0 || has_readout(); }
  void validate() const;

  static NoiseModel ideal() { return {}; }
  static NoiseModel depolarizing(double eps);
  static NoiseModel uniform_readout(int n_qubits, double p10, double p01);
};

/// Shot-averaged energy with propagated uncertainty. shots == 0 marks the
/// exact-expectation path.
struct EnergyEstimate {
  double value = 0.0;
  double stderr_ = 0.0;
  long shots = 0;
  std::uint64_t seed = 0;
  int n_terms = 0;
  std::string mitigation = "none";

  std::string to_json() const;
};

/// Deterministic seed derivation (splitmix64 mix of seed and salt).
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt);

/// Exact statevector simulation. Throws on unbound parameters; guarded at
/// 24 qubits.
QuantumState run_statevector(const Circuit& c);

/// Density-matrix simulation; after every CNOT on (a,b) applies
/// rho <- (1-eps) rho + eps Tr_{ab}(rho) (x) I4/4. Guarded at 10 qubits.
QuantumState run_density(const Circuit& c, const NoiseModel& noise);

/// Multinomial sampling of the measurement distribution followed by
/// independent per-qubit readout flips. Character i of each bitstring is
/// qubit i. Deterministic under a fixed seed.
CountsHistogram sample_counts(const QuantumState& s, long shots, const NoiseModel& noise,
                              std::uint64_t seed);

/// Per-term (value, stderr) from measurement counts; defaults to the raw
/// parity average with a binomial error bar.
using TermEvaluator =
    std::function<std::pair<double, double>(const PauliTerm&, const CountsHistogram&)>;

/// Measures every non-identity term of h in its own rotated basis, scales by
/// the coefficients and sums. shots == 0 takes the exact Tr(rho O) path.
/// The evaluator hook lets readout-corrected estimators reuse the loop.
EnergyEstimate measure_pauli_sum(const Circuit& ansatz, const PauliSum& h, long shots_per_term,
                                 const NoiseModel& noise, std::uint64_t seed,
                                 const TermEvaluator& evaluator = nullptr);

/// Measures <a^_p a^_q a_s a_r> for every canonical index pair through the
/// Jordan-Wigner images and assembles the rank-4 tensor; the electron count
/// is recovered from the pair-matrix trace. Identical Pauli strings share one
/// measurement setting.
RDM2 measure_rdm2(const Circuit& ansatz, int n_active, long shots_per_term,
                  const NoiseModel& noise, std::uint64_t seed);

}  // namespace qcb
