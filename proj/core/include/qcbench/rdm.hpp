#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <vector>

namespace qcb {

/// Two-body reduced density matrix over active spin orbitals,
/// rho(p,q,r,s) = <a^_p a^_q a_s a_r>. Antisymmetric in (p,q) and in (r,s),
/// Hermitian as the pair matrix M[(p<q)][(r<s)] = rho(p,q,r,s), whose trace
/// is the electron-pair count C(n_electrons, 2).
struct RDM2 {
  int n_active = 0;
  int n_electrons = 0;
  std::vector<std::complex<double>> t;  // n^4, strides (n^3, n^2, n, 1)

  static RDM2 zero(int n_active, int n_electrons);

  std::complex<double> at(int p, int q, int r, int s) const {
    const auto n = static_cast<std::size_t>(n_active);
    return t[((static_cast<std::size_t>(p) * n + q) * n + r) * n + s];
  }
  std::complex<double>& at(int p, int q, int r, int s) {
    const auto n = static_cast<std::size_t>(n_active);
    return t[((static_cast<std::size_t>(p) * n + q) * n + r) * n + s];
  }

  /// Sets the canonical element (p<q, r<s) and its antisymmetric images.
  void set_canonical(int p, int q, int r, int s, std::complex<double> v);

  /// Canonical pair list (p<q) in lexicographic order.
  static std::vector<std::pair<int, int>> pairs(int n_active);

  Eigen::MatrixXcd pair_matrix() const;
  static RDM2 from_pair_matrix(const Eigen::MatrixXcd& m, int n_active, int n_electrons);

  /// Canonical pair-matrix elements as JSON (re/im per entry).
  std::string to_json() const;
};

}  // namespace qcb
