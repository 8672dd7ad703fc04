#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "qcbench/integrals.hpp"
#include "qcbench/rdm.hpp"
#include "qcbench/sim.hpp"

namespace qcb {

/// Per-qubit readout flip probabilities estimated from calibration circuits.
struct ReadoutCal {
  std::vector<std::pair<double, double>> p;  // (p(1|0), p(0|1)) per qubit

  double p_plus(int q) const { return p[static_cast<std::size_t>(q)].second + p[static_cast<std::size_t>(q)].first; }
  double p_minus(int q) const { return p[static_cast<std::size_t>(q)].second - p[static_cast<std::size_t>(q)].first; }
  /// Requires 1 - p_plus > 0 on every qubit so the correction is defined.
  void validate() const;

  static ReadoutCal zero(int n_qubits);
  /// The model's true flip rates, bypassing calibration sampling.
  static ReadoutCal from_model(const NoiseModel& noise, int n_qubits);
};

/// Estimates p(1|0) and p(0|1) per qubit by sampling the all-zeros state and
/// each single-qubit-flipped state.
ReadoutCal calibrate_readout(int n_qubits, long shots, const NoiseModel& noise,
                             std::uint64_t seed);

/// Readout-corrected expectation
///   <Z...Z> = sum_x p(x) prod_{i in sites} [((-1)^{x_i} - p_i^-)/(1 - p_i^+)].
/// With an all-zero calibration this reproduces expectation_from_counts
/// bit for bit.
double corrected_expectation(const PauliTerm& term, const CountsHistogram& counts,
                             const ReadoutCal& cal);

/// measure_pauli_sum evaluator applying the readout correction; the error
/// bar is the sample deviation of the corrected weights.
TermEvaluator corrected_term_evaluator(const ReadoutCal& cal);

struct ExtrapolationPoint {
  int r = 1;  // odd CNOT replication factor
  double energy = 0.0;
  double sigma = 0.0;
};

struct ExtrapolationFit {
  std::vector<ExtrapolationPoint> points;
  int order = 1;
  double intercept = 0.0;
  double intercept_sigma = 0.0;
  std::vector<double> coefficients;  // ascending powers of r

  std::string to_json() const;
};

/// Weighted (1/sigma^2) polynomial least squares in r, evaluated at r = 0
/// with the covariance-propagated intercept uncertainty.
ExtrapolationFit richardson_extrapolate(const std::vector<ExtrapolationPoint>& points, int order);

/// One purification step 3 P^2 - 2 P^3 on the pair matrix.
Eigen::MatrixXcd mcweeny_step(const Eigen::MatrixXcd& p);

struct PurifyResult {
  RDM2 rdm;
  bool converged = false;
  int iterations = 0;
};

/// Iterates the purification map on the pair matrix rescaled so its dominant
/// eigenvalue is 1, until |Tr(P^2 - P)| < tol or max_iter, then restores the
/// electron-pair normalization. Only the 2-electron normalization is
/// defined; other electron counts throw.
PurifyResult mcweeny_purify(const RDM2& rdm, double tol = 1e-8, int max_iter = 100);

/// rho1(p,q) = 1/(M-1) sum_r rho(p,r,q,r); requires M >= 2.
Eigen::MatrixXcd rdm1_from_rdm2(const RDM2& rdm);

/// E = E0' + sum h(p,q) rho1(p,q) + 1/2 sum g(p,q,s,r) rho(p,q,r,s) over the
/// reduced integral set.
double energy_from_rdm(const IntegralSet& ints, const RDM2& rdm);

}  // namespace qcb
