#pragma once

#include <span>
#include <string>
#include <vector>

#include "qcbench/pauli.hpp"

namespace qcb {

enum class GateKind { X, H, RX, RY, RZ, CNOT };

bool is_rotation(GateKind k);
const char* gate_name(GateKind k);

/// One gate. Rotation gates either carry a literal angle (param < 0) or
/// reference a named circuit parameter, with the effective angle
/// angle * value(param).
struct Gate {
  GateKind kind;
  int q0 = 0;
  int q1 = -1;  // CNOT target
  double angle = 0.0;
  int param = -1;
};

/// Gate-list circuit IR with named parameters.
struct Circuit {
  int n_qubits = 0;
  std::vector<Gate> gates;
  std::vector<std::string> parameters;

  Circuit() = default;
  explicit Circuit(int nq) : n_qubits(nq) {}

  Circuit& x(int q);
  Circuit& h(int q);
  Circuit& rx(int q, double angle);
  Circuit& ry(int q, double angle);
  Circuit& rz(int q, double angle);
  Circuit& cnot(int control, int target);
  /// Parametric rotation: effective angle = scale * value(parameter name).
  Circuit& rotation(GateKind kind, int q, const std::string& name, double scale);

  bool is_bound() const;
  /// Resolves every named parameter; values follow the parameters order.
  Circuit bound(std::span<const double> values) const;
  /// This circuit followed by `next` (parameters concatenated).
  Circuit then(const Circuit& next) const;
  int cnot_count() const;

  /// One gate per line, e.g. "RZ 3 -0.6" or "RZ 3 -2*theta"; CNOT as
  /// "CNOT control target".
  std::string to_text() const;
};

/// X gates on the occupied spin orbitals: the lowest indices of each spin
/// block per the blocked up/down convention.
Circuit hartree_fock_reference(int n_qubits, int n_electrons);

/// Appends the decomposition of exp(i * angle * P) for one Pauli product:
/// basis changes (H for X, RX(pi/2) for Y), a CNOT ladder up the support,
/// RZ(-2*angle) on the top qubit, and the reverse.
void append_pauli_exponential(Circuit& c, const PauliTerm& p, double angle);

/// 4-qubit circuit whose unitary is exp(i theta Y0 X1 X2 X3) up to global
/// phase (the single-parameter reduced-UCC primitive).
Circuit build_ucc1(double theta);

/// ucc-1 with theta3 on the double excitation plus one single-excitation
/// Givens rotation per spin block: exp(theta/2 (a^_q a_p - a^_p a_q)) on
/// qubits (0,1) with theta1 and (2,3) with theta2.
Circuit build_ucc3(double theta1, double theta2, double theta3);

/// Hardware-efficient ansatz: an initial RX,RZ pair per qubit, then d layers
/// of entangling CNOTs along `connectivity` followed by RZ,RX,RZ per qubit.
/// Exactly n_qubits*(3d+2) named parameters t0..t{K-1}.
Circuit build_hwe(int n_qubits, int depth,
                  const std::vector<std::pair<int, int>>& connectivity);

/// First-order Trotter product of exp(i theta c_t P_t) over the generator's
/// terms in ascending canonical order. Identity terms contribute only global
/// phase and are skipped. Throws if the generator is not Hermitian.
Circuit trotter_circuit(const PauliSum& generator, double theta);

/// Replaces every CNOT with r identical CNOTs (r odd), leaving the noiseless
/// unitary unchanged.
Circuit insert_cnot_pairs(const Circuit& c, int r);

/// One Hermitian excitation generator, exponentiated as exp(i theta G).
struct ExcitationGenerator {
  std::string name;
  PauliSum generator;
};

/// Spin-conserving UCCSD generator pool for the blocked HF reference:
/// G = -i JW(T - T^) per single and double excitation.
std::vector<ExcitationGenerator> uccsd_generators(int n_qubits, int n_electrons);

}  // namespace qcb
