#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qcbench/integrals.hpp"

namespace qcb {

enum class Pauli : std::uint8_t { X, Y, Z };

char pauli_char(Pauli p);

/// One weighted Pauli tensor product. Identity qubits are absent from
/// `letters`, which is kept sorted by qubit index.
struct PauliTerm {
  std::complex<double> coefficient{1.0, 0.0};
  std::vector<std::pair<int, Pauli>> letters;

  bool is_identity() const { return letters.empty(); }
  /// Qubit indices the term acts on.
  std::vector<int> sites() const;
  bool commutes_with(const PauliTerm& other) const;
  std::string to_string() const;
};

/// Product of two terms, phases folded into the coefficient.
PauliTerm operator*(const PauliTerm& a, const PauliTerm& b);

/// Weighted sum of Pauli tensor products over n_qubits qubits.
struct PauliSum {
  std::vector<PauliTerm> terms;
  int n_qubits = 0;

  PauliSum() = default;
  explicit PauliSum(int nq) : n_qubits(nq) {}

  PauliSum& add(std::complex<double> coeff, std::vector<std::pair<int, Pauli>> letters);
  /// Combines duplicate letter sets and drops |coefficient| < 1e-12.
  PauliSum merged() const;
  /// Sum of identity-term coefficients.
  std::complex<double> identity_coefficient() const;
  /// True when all merged coefficients are real within tol.
  bool is_hermitian(double tol = 1e-9) const;

  std::string to_text() const;
  static PauliSum from_text(const std::string& text, int n_qubits);
};

PauliSum operator+(const PauliSum& a, const PauliSum& b);
PauliSum operator*(const PauliSum& a, const PauliSum& b);
PauliSum operator*(std::complex<double> c, const PauliSum& a);

/// Z2 tapering output. `found` is false when no symmetry exists, in which
/// case `reduced` echoes the input and the generator list is empty.
struct TaperingResult {
  PauliSum reduced;
  std::vector<PauliTerm> symmetry_generators;
  std::vector<int> sector;          // +1/-1 per generator
  std::vector<int> removed_qubits;  // original indices, ascending
  bool found = false;
};

/// Jordan-Wigner transform with the Z string on indices below p:
///   a^_p = 1/2 (X_p - i Y_p) Z_{p-1} ... Z_0.
PauliSum jordan_wigner(const FermionOp& op, int n_spin_orbitals);

/// Dense Kronecker expansion, qubit q <-> bit q of the basis index.
/// Guarded at 14 qubits.
Eigen::MatrixXcd pauli_matrix(const PauliSum& h);

/// Finds Pauli symmetries of h through the GF(2) kernel of the symplectic
/// check matrix, conjugates each generator onto a single-qubit Pauli and
/// fixes that qubit to the +-1 eigenvalue of the chosen sector.
///
/// Z-type generators are preferred; for them the sector follows from the
/// occupation bitstring (character i of `occupation_hint` is qubit i).
/// Non-Z generators are only tapered when `explicit_sector` is supplied,
/// otherwise the sector is ambiguous and taper_z2 throws.
TaperingResult taper_z2(const PauliSum& h, const std::string& occupation_hint,
                        const std::vector<int>* explicit_sector = nullptr);

/// Measurement counts. Character i of each bitstring is qubit i.
struct CountsHistogram {
  std::map<std::string, long> counts;
  long shots = 0;
};

/// Raw eigenvalue average sum_x p(x) (-1)^(parity of x on the term's sites).
/// The term coefficient is not applied. Letters are read as Z: the counts
/// must come from a circuit already rotated into the measurement basis.
double expectation_from_counts(const PauliTerm& term, const CountsHistogram& counts);

}  // namespace qcb
