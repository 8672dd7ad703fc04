#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <random>

#include "qcbench/pauli.hpp"
#include "support/fixtures.hpp"
#include "support/fock_oracle.hpp"

using namespace qcb;
using namespace qcb::testing;

namespace {

PauliSum random_pauli_sum(int n_qubits, int n_terms, std::uint64_t seed) {
  std::mt19937_64 eng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_int_distribution<int> letter(0, 3);
  PauliSum h(n_qubits);
  for (int t = 0; t < n_terms; ++t) {
    std::vector<std::pair<int, Pauli>> letters;
    for (int q = 0; q < n_qubits; ++q) {
      const int l = letter(eng);
      if (l < 3) letters.emplace_back(q, static_cast<Pauli>(l));
    }
    h.add(u(eng), std::move(letters));
  }
  return h;
}

FermionOp ladder(int p, bool creation) {
  FermionOp op;
  op.add(1.0, {{p, creation}});
  return op;
}

}  // namespace

TEST_CASE("jordan_wigner maps the number operator to (I - Z)/2") {
  FermionOp op;
  op.add(1.0, {{0, true}, {0, false}});
  const PauliSum h = jordan_wigner(op, 1);
  REQUIRE(h.terms.size() == 2);
  for (const auto& t : h.terms) {
    if (t.is_identity())
      CHECK(t.coefficient.real() == doctest::Approx(0.5));
    else {
      REQUIRE(t.letters.size() == 1);
      CHECK(t.letters[0].second == Pauli::Z);
      CHECK(t.coefficient.real() == doctest::Approx(-0.5));
    }
  }
}

TEST_CASE("jordan_wigner maps hopping to (XX + YY)/2") {
  FermionOp op;
  op.add(1.0, {{0, true}, {1, false}});
  op.add(1.0, {{1, true}, {0, false}});
  const PauliSum h = jordan_wigner(op, 2);
  const Eigen::MatrixXcd lhs = pauli_matrix(h);
  const Eigen::MatrixXcd rhs = fermion_matrix(op, 2);
  CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);
  // and the term structure is the textbook one
  REQUIRE(h.terms.size() == 2);
  for (const auto& t : h.terms) CHECK(t.coefficient.real() == doctest::Approx(0.5));
}

TEST_CASE("jordan_wigner of the bundled Hamiltonian equals the Fock matrix") {
  const IntegralSet ints = bundled_h2();
  const FermionOp op = build_fermion_hamiltonian(ints);
  const Eigen::MatrixXcd lhs = pauli_matrix(jordan_wigner(op, 4));
  CHECK((lhs - hamiltonian_matrix(ints)).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("jordan_wigner preserves the anticommutation relations") {
  const int n = 4;
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q) {
      const Eigen::MatrixXcd ap = pauli_matrix(jordan_wigner(ladder(p, false), n));
      const Eigen::MatrixXcd aqd = pauli_matrix(jordan_wigner(ladder(q, true), n));
      const Eigen::MatrixXcd anti = ap * aqd + aqd * ap;
      Eigen::MatrixXcd expect = Eigen::MatrixXcd::Zero(16, 16);
      if (p == q) expect.setIdentity();
      CHECK((anti - expect).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("jordan_wigner is linear") {
  std::mt19937_64 eng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  FermionOp a, b, combined;
  a.add(1.0, {{0, true}, {2, false}});
  a.add(0.5, {{1, true}, {1, false}});
  b.add(1.0, {{2, true}, {3, true}, {1, false}, {0, false}});
  const double alpha = u(eng), beta = u(eng);
  for (const auto& t : a.terms) combined.add(alpha * t.coefficient, t.factors);
  for (const auto& t : b.terms) combined.add(beta * t.coefficient, t.factors);
  const Eigen::MatrixXcd lhs = pauli_matrix(jordan_wigner(combined, 4));
  const Eigen::MatrixXcd rhs = alpha * pauli_matrix(jordan_wigner(a, 4)) +
                               beta * pauli_matrix(jordan_wigner(b, 4));
  CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("pauli_matrix basics") {
  SUBCASE("Z0 on one qubit") {
    PauliSum h(1);
    h.add(1.0, {{0, Pauli::Z}});
    const Eigen::MatrixXcd m = pauli_matrix(h);
    CHECK(m(0, 0) == std::complex<double>(1.0));
    CHECK(m(1, 1) == std::complex<double>(-1.0));
    CHECK(std::abs(m(0, 1)) == 0.0);
  }
  SUBCASE("pre-merge duplicates act like the merged sum") {
    PauliSum h(1);
    h.add(0.5, {{0, Pauli::X}});
    h.add(0.5, {{0, Pauli::X}});
    PauliSum merged(1);
    merged.add(1.0, {{0, Pauli::X}});
    CHECK((pauli_matrix(h) - pauli_matrix(merged)).cwiseAbs().maxCoeff() < 1e-15);
  }
  SUBCASE("size guard") {
    PauliSum h(15);
    h.add(1.0, {{0, Pauli::Z}});
    CHECK_THROWS_AS(pauli_matrix(h), std::invalid_argument);
  }
}

TEST_CASE("pauli_matrix agrees with the Kronecker-product construction") {
  for (std::uint64_t seed : {3u, 4u, 5u}) {
    const PauliSum h = random_pauli_sum(3, 6, seed);
    CHECK((pauli_matrix(h) - kron_pauli_matrix(h)).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("merging before or after pauli_matrix is equivalent") {
  const PauliSum h = random_pauli_sum(3, 10, 17);
  CHECK((pauli_matrix(h) - pauli_matrix(h.merged())).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("taper_z2 on Z0Z1 + X0X1 keeps the hinted sector") {
  PauliSum h(2);
  h.add(1.0, {{0, Pauli::Z}, {1, Pauli::Z}});
  h.add(1.0, {{0, Pauli::X}, {1, Pauli::X}});
  const TaperingResult res = taper_z2(h, "00");
  REQUIRE(res.found);
  REQUIRE(res.symmetry_generators.size() == 1);
  CHECK(res.symmetry_generators[0].letters ==
        std::vector<std::pair<int, Pauli>>{{0, Pauli::Z}, {1, Pauli::Z}});
  CHECK(res.reduced.n_qubits == 1);
  // spectrum of the reduced operator == eigenvalues of H restricted to the
  // even-parity sector span{|00>, |11>}
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> reduced(pauli_matrix(res.reduced),
                                                          Eigen::EigenvaluesOnly);
  Eigen::Matrix2cd restricted;
  const Eigen::MatrixXcd full = kron_pauli_matrix(h);
  restricted << full(0, 0), full(0, 3), full(3, 0), full(3, 3);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> sector(restricted, Eigen::EigenvaluesOnly);
  CHECK((reduced.eigenvalues() - sector.eigenvalues()).cwiseAbs().maxCoeff() < 1e-10);
  // every generator commutes with every input term
  for (const auto& g : res.symmetry_generators)
    for (const auto& t : h.terms) CHECK(g.commutes_with(t));
}

TEST_CASE("taper_z2 flags when no symmetry exists") {
  PauliSum h(1);
  h.add(0.3, {{0, Pauli::X}});
  h.add(0.4, {{0, Pauli::Y}});
  h.add(0.5, {{0, Pauli::Z}});
  const TaperingResult res = taper_z2(h, "0");
  CHECK_FALSE(res.found);
  CHECK(res.symmetry_generators.empty());
  CHECK(res.reduced.n_qubits == 1);
}

TEST_CASE("taper_z2 preserves the ground energy of the bundled Hamiltonian") {
  const IntegralSet ints = bundled_h2();
  const PauliSum h = jordan_wigner(build_fermion_hamiltonian(ints), 4);
  const TaperingResult res = taper_z2(h, "1010");  // HF occupation: qubits 0 and 2
  REQUIRE(res.found);
  CHECK(res.reduced.n_qubits < 4);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> before(pauli_matrix(h), Eigen::EigenvaluesOnly);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> after(pauli_matrix(res.reduced),
                                                        Eigen::EigenvaluesOnly);
  CHECK(after.eigenvalues().minCoeff() ==
        doctest::Approx(before.eigenvalues().minCoeff()).epsilon(1e-10));
}

TEST_CASE("taper_z2 keeps the hinted-sector spectrum on random fermionic instances") {
  // JW images of number-conserving Hamiltonians always commute with the
  // global parity string, so these fixtures are guaranteed to taper.
  for (std::uint64_t seed : {31u, 32u, 33u}) {
    const IntegralSet ints = random_integral_set(6, 2, seed, 0.7);
    const PauliSum h = jordan_wigner(build_fermion_hamiltonian(ints), 6);
    const std::string hint = "100100";  // one electron per spin block
    const TaperingResult res = taper_z2(h, hint);
    REQUIRE(res.found);
    CHECK(res.reduced.n_qubits < 6);

    // oracle: eigenvalues of H restricted to the simultaneous eigenspace of
    // all generators with the hinted eigenvalues
    const Eigen::MatrixXcd full = kron_pauli_matrix(h);
    std::vector<std::size_t> sector;
    for (std::size_t basis = 0; basis < 64; ++basis) {
      bool keep = true;
      for (std::size_t g = 0; g < res.symmetry_generators.size() && keep; ++g) {
        int parity = 0;
        for (const auto& [q, l] : res.symmetry_generators[g].letters)
          if ((basis >> q) & 1) ++parity;
        keep = (parity % 2 ? -1 : 1) == res.sector[g];
      }
      if (keep) sector.push_back(basis);
    }
    REQUIRE(sector.size() == (std::size_t{1} << res.reduced.n_qubits));
    Eigen::MatrixXcd restricted(sector.size(), sector.size());
    for (std::size_t a = 0; a < sector.size(); ++a)
      for (std::size_t b = 0; b < sector.size(); ++b)
        restricted(a, b) = full(sector[a], sector[b]);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> lhs(pauli_matrix(res.reduced),
                                                        Eigen::EigenvaluesOnly);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> rhs(restricted, Eigen::EigenvaluesOnly);
    CHECK((lhs.eigenvalues() - rhs.eigenvalues()).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("expectation_from_counts") {
  PauliTerm zz;
  zz.letters = {{0, Pauli::Z}, {1, Pauli::Z}};
  SUBCASE("all zeros") {
    CountsHistogram counts{{{"00", 100}}, 100};
    CHECK(expectation_from_counts(zz, counts) == doctest::Approx(1.0));
  }
  SUBCASE("odd parity") {
    CountsHistogram counts{{{"01", 50}, {"10", 50}}, 100};
    CHECK(expectation_from_counts(zz, counts) == doctest::Approx(-1.0));
  }
  SUBCASE("weighted single-qubit parity") {
    PauliTerm z0;
    z0.letters = {{0, Pauli::Z}};
    CountsHistogram counts{{{"00", 75}, {"11", 25}}, 100};
    CHECK(expectation_from_counts(z0, counts) == doctest::Approx(0.5));
  }
  SUBCASE("empty histogram") {
    CountsHistogram counts;
    CHECK_THROWS_AS(expectation_from_counts(zz, counts), std::invalid_argument);
  }
}

TEST_CASE("PauliSum text serialization round-trips") {
  const PauliSum h = random_pauli_sum(4, 8, 23).merged();
  const PauliSum back = PauliSum::from_text(h.to_text(), 4);
  CHECK((pauli_matrix(h) - pauli_matrix(back)).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("PauliTerm products track phases") {
  PauliTerm x, y, z;
  x.letters = {{0, Pauli::X}};
  y.letters = {{0, Pauli::Y}};
  z.letters = {{0, Pauli::Z}};
  CHECK((x * y).coefficient == std::complex<double>(0, 1));   // XY = iZ
  CHECK((y * x).coefficient == std::complex<double>(0, -1));  // YX = -iZ
  CHECK((x * y).letters == z.letters);
  CHECK((x * x).letters.empty());
  CHECK((y * z).coefficient == std::complex<double>(0, 1));  // YZ = iX
  CHECK((z * x).coefficient == std::complex<double>(0, 1));  // ZX = iY
}
