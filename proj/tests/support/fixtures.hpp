// Shared test fixtures and second-opinion implementations. Everything here
// is deliberately independent of the library's fast paths: circuit unitaries
// and Pauli matrices are assembled from explicit Kronecker products.
#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "qcbench/circuit.hpp"
#include "qcbench/integrals.hpp"
#include "qcbench/pauli.hpp"

namespace qcb::testing {

inline std::filesystem::path data_dir() { return QCBENCH_DATA_DIR; }

inline IntegralSet random_integral_set(int n, int n_electrons, std::uint64_t seed,
                                       double scale = 1.0) {
  std::mt19937_64 eng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  IntegralSet ints = IntegralSet::zero(n, n_electrons);
  ints.e_nuclear = u(eng);
  for (int p = 0; p < n; ++p)
    for (int q = p; q < n; ++q) {
      if (is_spin_up(p, n) != is_spin_up(q, n)) continue;
      const double v = scale * u(eng);
      ints.h(p, q) = v;
      ints.h(q, p) = v;
    }
  // fill then average over the 8-fold <pq|sr> orbit; spin-forbidden entries
  // (<pq|sr> needs spin p = spin s and spin q = spin r) stay zero
  for (auto& v : ints.g2) v = 0.3 * scale * u(eng);
  IntegralSet sym = ints;
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q)
      for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s) {
          if (is_spin_up(p, n) != is_spin_up(s, n) || is_spin_up(q, n) != is_spin_up(r, n)) {
            sym.g(p, q, r, s) = 0.0;
            continue;
          }
          const double v = (ints.g(p, q, r, s) + ints.g(s, q, r, p) + ints.g(p, r, q, s) +
                            ints.g(s, r, q, p) + ints.g(q, p, s, r) + ints.g(r, p, s, q) +
                            ints.g(q, s, p, r) + ints.g(r, s, p, q)) / 8.0;
          sym.g(p, q, r, s) = v;
        }
  sym.validate();
  return sym;
}

inline IntegralSet bundled_h2() { return load_integrals(data_dir() / "h2_sto3g_0.7414.ints"); }

// --- dense oracles ------------------------------------------------------

inline Eigen::Matrix2cd letter_matrix(Pauli p) {
  const std::complex<double> i{0.0, 1.0};
  Eigen::Matrix2cd m;
  switch (p) {
    case Pauli::X: m << 0, 1, 1, 0; break;
    case Pauli::Y: m << 0, -i, i, 0; break;
    default: m << 1, 0, 0, -1; break;
  }
  return m;
}

// Kronecker-product Pauli matrix (qubit 0 least significant): the dual-path
// check against qcb::pauli_matrix.
inline Eigen::MatrixXcd kron_pauli_matrix(const PauliSum& h) {
  const std::size_t dim = std::size_t{1} << h.n_qubits;
  Eigen::MatrixXcd total = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& term : h.terms) {
    // qubit 0 is the rightmost Kronecker factor
    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Identity(1, 1);
    for (int q = 0; q < h.n_qubits; ++q) {
      Eigen::Matrix2cd letter = Eigen::Matrix2cd::Identity();
      for (const auto& [tq, l] : term.letters)
        if (tq == q) letter = letter_matrix(l);
      Eigen::MatrixXcd next(acc.rows() * 2, acc.cols() * 2);
      next.topLeftCorner(acc.rows(), acc.cols()) = letter(0, 0) * acc;
      next.topRightCorner(acc.rows(), acc.cols()) = letter(0, 1) * acc;
      next.bottomLeftCorner(acc.rows(), acc.cols()) = letter(1, 0) * acc;
      next.bottomRightCorner(acc.rows(), acc.cols()) = letter(1, 1) * acc;
      acc = next;
    }
    total += term.coefficient * acc;
  }
  return total;
}

inline Eigen::Matrix2cd dense_gate_matrix(const Gate& g) {
  const std::complex<double> i{0.0, 1.0};
  const double h = g.angle / 2.0;
  Eigen::Matrix2cd m;
  switch (g.kind) {
    case GateKind::X: m << 0, 1, 1, 0; break;
    case GateKind::H: m << 1, 1, 1, -1; m /= std::sqrt(2.0); break;
    case GateKind::RX: m << std::cos(h), -i * std::sin(h), -i * std::sin(h), std::cos(h); break;
    case GateKind::RY: m << std::cos(h), -std::sin(h), std::sin(h), std::cos(h); break;
    case GateKind::RZ: m << std::exp(-i * h), 0.0, 0.0, std::exp(i * h); break;
    default: throw std::logic_error("dense_gate_matrix: CNOT handled separately");
  }
  return m;
}

// Full 2^n x 2^n unitary of a bound circuit, built gate by gate from
// explicitly embedded matrices.
inline Eigen::MatrixXcd circuit_unitary(const Circuit& c) {
  const std::size_t dim = std::size_t{1} << c.n_qubits;
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(dim, dim);
  for (const auto& g : c.gates) {
    Eigen::MatrixXcd full = Eigen::MatrixXcd::Zero(dim, dim);
    if (g.kind == GateKind::CNOT) {
      for (std::size_t j = 0; j < dim; ++j) {
        const bool ctrl = (j >> g.q0) & 1;
        full(ctrl ? j ^ (std::size_t{1} << g.q1) : j, j) = 1.0;
      }
    } else {
      const Eigen::Matrix2cd m = dense_gate_matrix(g);
      for (std::size_t j = 0; j < dim; ++j) {
        const bool bit = (j >> g.q0) & 1;
        full(j, j) = m(bit, bit);
        full(j ^ (std::size_t{1} << g.q0), j) = m(!bit, bit);
      }
    }
    u = full * u;
  }
  return u;
}

// exp(i * theta * M) for Hermitian M, by eigendecomposition.
inline Eigen::MatrixXcd expi_hermitian(const Eigen::MatrixXcd& m, double theta) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);
  const std::complex<double> i{0.0, 1.0};
  Eigen::VectorXcd phases(es.eigenvalues().size());
  for (Eigen::Index k = 0; k < phases.size(); ++k)
    phases(k) = std::exp(i * theta * es.eigenvalues()(k));
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

// max-norm distance after aligning the global phase on the largest entry
inline double phase_aligned_distance(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::Index r = 0, c = 0;
  b.cwiseAbs().maxCoeff(&r, &c);
  if (std::abs(b(r, c)) < 1e-14) return (a - b).cwiseAbs().maxCoeff();
  const std::complex<double> phase = a(r, c) / b(r, c);
  const double mag = std::abs(phase);
  if (mag < 1e-14) return (a - b).cwiseAbs().maxCoeff();
  return (a - (phase / mag) * b).cwiseAbs().maxCoeff();
}

}  // namespace qcb::testing
