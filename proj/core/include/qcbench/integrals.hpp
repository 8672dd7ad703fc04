#pragma once

#include <complex>
#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

namespace qcb {

/// Spin-orbital ordering used throughout: for N spin orbitals, indices
/// 0..N/2-1 are spin-up and N/2..N-1 are spin-down.
enum class SpinConvention { blocked_up_down };

inline bool is_spin_up(int p, int n_spin_orbitals) { return p < n_spin_orbitals / 2; }

/// Second-quantized molecular integrals over spin orbitals, all in Hartree.
///
/// g2[p][q][r][s] stores the repulsion integral <p,q|s,r>, so the two-body
/// Hamiltonian reads 1/2 * sum_{pqrs} g2(p,q,r,s) p^ q^ r s.
struct IntegralSet {
  int n_spin_orbitals = 0;
  int n_electrons = 0;
  double e_nuclear = 0.0;
  std::vector<double> h1;  // n^2, row-major
  std::vector<double> g2;  // n^4, strides (n^3, n^2, n, 1)
  SpinConvention spin_convention = SpinConvention::blocked_up_down;

  double h(int p, int q) const { return h1[static_cast<std::size_t>(p) * n_spin_orbitals + q]; }
  double& h(int p, int q) { return h1[static_cast<std::size_t>(p) * n_spin_orbitals + q]; }
  double g(int p, int q, int r, int s) const {
    const auto n = static_cast<std::size_t>(n_spin_orbitals);
    return g2[((static_cast<std::size_t>(p) * n + q) * n + r) * n + s];
  }
  double& g(int p, int q, int r, int s) {
    const auto n = static_cast<std::size_t>(n_spin_orbitals);
    return g2[((static_cast<std::size_t>(p) * n + q) * n + r) * n + s];
  }

  static IntegralSet zero(int n_spin_orbitals, int n_electrons);

  /// Checks Hermiticity of h1, the 8-fold permutation symmetry of g2 and the
  /// spin-block structure of h1 (tolerance 1e-10). Throws on violation.
  void validate() const;
};

/// Frozen/active partition of the spin orbitals. Orbitals in neither list are
/// inactive virtuals and are dropped by freeze_core.
struct ActiveSpaceSpec {
  std::vector<int> frozen;
  std::vector<int> active;

  void validate(const IntegralSet& ints) const;
};

/// One product of creation/annihilation operators with a coefficient.
struct FermionFactor {
  int orbital = 0;
  bool creation = false;
};

struct FermionTerm {
  std::complex<double> coefficient;
  std::vector<FermionFactor> factors;  // applied right-to-left, stored left-to-right
};

/// Linear combination of fermionic operator products. No normal ordering is
/// assumed.
struct FermionOp {
  std::vector<FermionTerm> terms;

  FermionOp& add(std::complex<double> coeff, std::vector<FermionFactor> factors);
};

/// Weight on the core mean-field fold into the effective one-body term.
/// `full` is the value the frozen-sector projection oracle confirms; `half`
/// is kept selectable for cross-checks.
enum class CoreFolding { full, half };

/// Reads the line-oriented text integral format (see README). Throws
/// std::runtime_error with a line number on parse errors and on symmetry
/// violations.
IntegralSet load_integrals(const std::filesystem::path& path);

/// Reads an FCIDUMP file (spatial orbitals, chemists' (ij|kl), 1-based
/// indices) and expands it to blocked spin orbitals.
IntegralSet load_fcidump(const std::filesystem::path& path);

void save_integrals(const IntegralSet& ints, const std::filesystem::path& path);

/// Antisymmetrized repulsion integral
///   gbar(p,q,r,s) = <p,q|s,r> - <p,q|r,s> = g2(p,q,r,s) - g2(p,q,s,r).
double antisymmetrize(const IntegralSet& ints, int p, int q, int r, int s);

/// Folds the frozen orbitals into a constant shift and an effective one-body
/// term, restricts everything to the active orbitals and relabels them
/// densely 0..|active|-1 preserving spin blocks:
///   E0' = E_nucl + sum_a [ h(a,a) + 1/2 sum_b (g(a,b,b,a) - g(a,b,a,b)) ]
///   h'(p,q) = h(p,q) + f * sum_a (g(a,p,q,a) - g(a,p,a,q))   (f = 1 or 1/2)
IntegralSet freeze_core(const IntegralSet& full, const ActiveSpaceSpec& spec,
                        CoreFolding folding = CoreFolding::full);

/// Assembles E_nucl + sum h(p,q) p^ q + 1/2 sum g2(p,q,r,s) p^ q^ r s,
/// skipping vanishing coefficients and terms that are zero by antisymmetry.
FermionOp build_fermion_hamiltonian(const IntegralSet& ints);

}  // namespace qcb
