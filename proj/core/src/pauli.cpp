#include "qcbench/pauli.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <map>
#include <sstream>
#include <stdexcept>

namespace qcb {

namespace {

constexpr double kMergeTol = 1e-12;
constexpr std::complex<double> kI{0.0, 1.0};

// a*b = phase * letter (a, b non-identity)
std::pair<std::complex<double>, int> letter_product(Pauli a, Pauli b) {
  if (a == b) return {1.0, -1};  // identity
  const int ia = static_cast<int>(a), ib = static_cast<int>(b);
  // X,Y,Z cyclic: X*Y = iZ and anticyclic picks up the minus sign.
  const int ic = 3 - ia - ib;
  const bool cyclic = (ib - ia + 3) % 3 == 1;
  return {cyclic ? kI : -kI, ic};
}

}  // namespace

char pauli_char(Pauli p) {
  switch (p) {
    case Pauli::X: return 'X';
    case Pauli::Y: return 'Y';
    default: return 'Z';
  }
}

std::vector<int> PauliTerm::sites() const {
  std::vector<int> out;
  out.reserve(letters.size());
  for (const auto& [q, l] : letters) out.push_back(q);
  return out;
}

bool PauliTerm::commutes_with(const PauliTerm& other) const {
  int anticommuting = 0;
  auto it = other.letters.begin();
  for (const auto& [q, l] : letters) {
    while (it != other.letters.end() && it->first < q) ++it;
    if (it != other.letters.end() && it->first == q && it->second != l) ++anticommuting;
  }
  return anticommuting % 2 == 0;
}

std::string PauliTerm::to_string() const {
  std::ostringstream ss;
  ss.precision(12);
  ss << (coefficient.real() < 0 ? "" : "+") << coefficient.real();
  if (std::abs(coefficient.imag()) > 0) ss << (coefficient.imag() < 0 ? "" : "+") << coefficient.imag() << "i";
  for (auto it = letters.rbegin(); it != letters.rend(); ++it)
    ss << " " << pauli_char(it->second) << it->first;
  return ss.str();
}

PauliTerm operator*(const PauliTerm& a, const PauliTerm& b) {
  PauliTerm out;
  out.coefficient = a.coefficient * b.coefficient;
  out.letters.reserve(a.letters.size() + b.letters.size());
  auto ia = a.letters.begin();
  auto ib = b.letters.begin();
  while (ia != a.letters.end() || ib != b.letters.end()) {
    if (ib == b.letters.end() || (ia != a.letters.end() && ia->first < ib->first)) {
      out.letters.push_back(*ia++);
    } else if (ia == a.letters.end() || ib->first < ia->first) {
      out.letters.push_back(*ib++);
    } else {
      auto [phase, letter] = letter_product(ia->second, ib->second);
      out.coefficient *= phase;
      if (letter >= 0) out.letters.emplace_back(ia->first, static_cast<Pauli>(letter));
      ++ia;
      ++ib;
    }
  }
  return out;
}

PauliSum& PauliSum::add(std::complex<double> coeff, std::vector<std::pair<int, Pauli>> letters) {
  std::sort(letters.begin(), letters.end());
  for (const auto& [q, l] : letters)
    if (q < 0 || q >= n_qubits)
      throw std::out_of_range("PauliSum::add: qubit " + std::to_string(q) + " out of range");
  terms.push_back({coeff, std::move(letters)});
  return *this;
}

PauliSum PauliSum::merged() const {
  std::map<std::vector<std::pair<int, Pauli>>, std::complex<double>> acc;
  for (const auto& t : terms) acc[t.letters] += t.coefficient;
  PauliSum out(n_qubits);
  for (auto& [letters, coeff] : acc) {
    if (std::abs(coeff) < kMergeTol) continue;
    out.terms.push_back({coeff, letters});
  }
  return out;
}

std::complex<double> PauliSum::identity_coefficient() const {
  std::complex<double> c = 0.0;
  for (const auto& t : terms)
    if (t.is_identity()) c += t.coefficient;
  return c;
}

bool PauliSum::is_hermitian(double tol) const {
  for (const auto& t : merged().terms)
    if (std::abs(t.coefficient.imag()) > tol) return false;
  return true;
}

std::string PauliSum::to_text() const {
  std::ostringstream ss;
  for (const auto& t : merged().terms) ss << t.to_string() << "\n";
  return ss.str();
}

PauliSum PauliSum::from_text(const std::string& text, int n_qubits) {
  PauliSum out(n_qubits);
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    std::istringstream ss(line);
    std::string tok;
    if (!(ss >> tok)) continue;
    double coeff = 0.0;
    std::complex<double> c;
    // coefficient: real, optionally followed by +imag i glued on (rare)
    std::size_t pos = 0;
    coeff = std::stod(tok, &pos);
    if (pos < tok.size() && tok.back() == 'i') {
      c = {coeff, std::stod(tok.substr(pos, tok.size() - pos - 1))};
    } else {
      c = coeff;
    }
    std::vector<std::pair<int, Pauli>> letters;
    while (ss >> tok) {
      if (tok.size() < 2) throw std::runtime_error("PauliSum::from_text: bad letter '" + tok + "'");
      Pauli p;
      switch (tok[0]) {
        case 'X': p = Pauli::X; break;
        case 'Y': p = Pauli::Y; break;
        case 'Z': p = Pauli::Z; break;
        default: throw std::runtime_error("PauliSum::from_text: bad letter '" + tok + "'");
      }
      letters.emplace_back(std::stoi(tok.substr(1)), p);
    }
    out.add(c, std::move(letters));
  }
  return out.merged();
}

PauliSum operator+(const PauliSum& a, const PauliSum& b) {
  PauliSum out(std::max(a.n_qubits, b.n_qubits));
  out.terms = a.terms;
  out.terms.insert(out.terms.end(), b.terms.begin(), b.terms.end());
  return out.merged();
}

PauliSum operator*(const PauliSum& a, const PauliSum& b) {
  PauliSum out(std::max(a.n_qubits, b.n_qubits));
  for (const auto& ta : a.terms)
    for (const auto& tb : b.terms) out.terms.push_back(ta * tb);
  return out.merged();
}

PauliSum operator*(std::complex<double> c, const PauliSum& a) {
  PauliSum out = a;
  for (auto& t : out.terms) t.coefficient *= c;
  return out;
}

PauliSum jordan_wigner(const FermionOp& op, int n_spin_orbitals) {
  // Image of a single ladder operator: 1/2 (X_p -+ i Y_p) Z_{p-1}...Z_0.
  const auto ladder = [&](int p, bool creation) {
    PauliSum img(n_spin_orbitals);
    std::vector<std::pair<int, Pauli>> zs;
    for (int q = 0; q < p; ++q) zs.emplace_back(q, Pauli::Z);
    auto with = [&](Pauli letter) {
      auto l = zs;
      l.emplace_back(p, letter);
      return l;
    };
    img.add(0.5, with(Pauli::X));
    img.add(creation ? -0.5 * kI : 0.5 * kI, with(Pauli::Y));
    return img;
  };

  PauliSum total(n_spin_orbitals);
  for (const auto& term : op.terms) {
    PauliSum acc(n_spin_orbitals);
    acc.add(term.coefficient, {});
    for (const auto& f : term.factors) {
      if (f.orbital < 0 || f.orbital >= n_spin_orbitals)
        throw std::out_of_range("jordan_wigner: orbital " + std::to_string(f.orbital) +
                                " out of range");
      acc = acc * ladder(f.orbital, f.creation);
    }
    total.terms.insert(total.terms.end(), acc.terms.begin(), acc.terms.end());
  }
  return total.merged();
}

Eigen::MatrixXcd pauli_matrix(const PauliSum& h) {
  if (h.n_qubits > 14)
    throw std::invalid_argument("pauli_matrix: qubit count " + std::to_string(h.n_qubits) +
                                " exceeds the dense-matrix guard (14)");
  const std::size_t dim = std::size_t{1} << h.n_qubits;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& t : h.terms) {
    std::uint64_t xmask = 0, zmask = 0, ymask = 0;
    for (const auto& [q, l] : t.letters) {
      if (l != Pauli::Z) xmask |= std::uint64_t{1} << q;
      if (l != Pauli::X) zmask |= std::uint64_t{1} << q;
      if (l == Pauli::Y) ymask |= std::uint64_t{1} << q;
    }
    const int ny = std::popcount(ymask);
    for (std::size_t j = 0; j < dim; ++j) {
      // phase: each Z or Y letter contributes (-1)^bit; each Y adds a factor i
      // from Y = i X Z acting before the flip.
      std::complex<double> phase = t.coefficient;
      const int parity = std::popcount(j & zmask);
      if (parity % 2) phase = -phase;
      switch (ny % 4) {
        case 1: phase *= kI; break;
        case 2: phase = -phase; break;
        case 3: phase *= -kI; break;
        default: break;
      }
      m(j ^ xmask, j) += phase;
    }
  }
  return m;
}

namespace {

// GF(2) row vector over 2n columns: bit q = x_q, bit n+q = z_q.
using Gf2Row = std::uint64_t;

std::vector<Gf2Row> gf2_kernel(std::vector<Gf2Row> rows, int n_cols) {
  // Gaussian elimination; pivots marked per column.
  std::vector<int> pivot_row(n_cols, -1);
  int rank = 0;
  for (auto& row : rows) {
    for (int c = 0; c < n_cols; ++c) {
      if (!((row >> c) & 1)) continue;
      if (pivot_row[c] >= 0) {
        row ^= rows[pivot_row[c]];
      } else {
        pivot_row[c] = static_cast<int>(&row - rows.data());
        ++rank;
        break;
      }
    }
  }
  // Back-substitute free columns.
  std::vector<Gf2Row> kernel;
  for (int free = 0; free < n_cols; ++free) {
    if (pivot_row[free] >= 0) continue;
    Gf2Row v = Gf2Row{1} << free;
    // solve for pivot variables, highest column first
    for (int c = n_cols - 1; c >= 0; --c) {
      if (pivot_row[c] < 0) continue;
      const Gf2Row r = rows[pivot_row[c]];
      if (std::popcount(r & v) % 2) v ^= Gf2Row{1} << c;
    }
    kernel.push_back(v);
  }
  return kernel;
}

// Reduced row echelon form, used so each generator owns a pivot column no
// other generator touches.
void gf2_rref(std::vector<Gf2Row>& rows, int n_cols) {
  int lead = 0;
  for (std::size_t r = 0; r < rows.size() && lead < n_cols; ++r) {
    std::size_t i = r;
    while (i < rows.size() && !((rows[i] >> lead) & 1)) ++i;
    if (i == rows.size()) {
      --r;
      ++lead;
      continue;
    }
    std::swap(rows[i], rows[r]);
    for (std::size_t k = 0; k < rows.size(); ++k)
      if (k != r && ((rows[k] >> lead) & 1)) rows[k] ^= rows[r];
    ++lead;
  }
  rows.erase(std::remove(rows.begin(), rows.end(), Gf2Row{0}), rows.end());
}

PauliTerm term_from_row(Gf2Row v, int n) {
  PauliTerm t;
  t.coefficient = 1.0;
  for (int q = 0; q < n; ++q) {
    const bool x = (v >> q) & 1;
    const bool z = (v >> (n + q)) & 1;
    if (x && z) t.letters.emplace_back(q, Pauli::Y);
    else if (x) t.letters.emplace_back(q, Pauli::X);
    else if (z) t.letters.emplace_back(q, Pauli::Z);
  }
  return t;
}

Pauli letter_at(const PauliTerm& t, int q, bool* present) {
  for (const auto& [qq, l] : t.letters)
    if (qq == q) {
      *present = true;
      return l;
    }
  *present = false;
  return Pauli::Z;
}

bool anticommutes_single(Pauli single, const PauliTerm& t, int q) {
  bool present = false;
  const Pauli l = letter_at(t, q, &present);
  return present && l != single;
}

}  // namespace

TaperingResult taper_z2(const PauliSum& h, const std::string& occupation_hint,
                        const std::vector<int>* explicit_sector) {
  const int n = h.n_qubits;
  if (n > 63) throw std::invalid_argument("taper_z2: qubit count exceeds 63");
  const PauliSum hm = h.merged();
  if (!hm.is_hermitian()) throw std::invalid_argument("taper_z2: input is not Hermitian");

  TaperingResult result;
  result.reduced = hm;

  // Symplectic check rows (z_t | x_t): a Pauli s = (x_s|z_s) commutes with
  // every term iff all rows are orthogonal to it.
  std::vector<Gf2Row> check;
  std::vector<Gf2Row> term_rows;
  for (const auto& t : hm.terms) {
    Gf2Row x = 0, z = 0;
    for (const auto& [q, l] : t.letters) {
      if (l != Pauli::Z) x |= Gf2Row{1} << q;
      if (l != Pauli::X) z |= Gf2Row{1} << q;
    }
    term_rows.push_back(x | (z << n));
    check.push_back(z | (x << n));
  }

  std::vector<Gf2Row> kernel = gf2_kernel(check, 2 * n);
  kernel.erase(std::remove(kernel.begin(), kernel.end(), Gf2Row{0}), kernel.end());
  if (kernel.empty()) return result;  // flagged: no symmetry

  // Prefer Z-type generators: kernel vectors with empty x part. RREF over the
  // z bits gives each one a private pivot qubit.
  std::vector<Gf2Row> zgen;
  {
    std::vector<Gf2Row> zrows;
    const Gf2Row xmask_all = (n == 63) ? ~Gf2Row{0} >> 1 : (Gf2Row{1} << n) - 1;
    std::vector<Gf2Row> xparts;
    for (const auto& t : term_rows) xparts.push_back(t & xmask_all);
    // Z-type symmetries: z vectors orthogonal to every term's x part.
    zrows = gf2_kernel(xparts, n);
    zrows.erase(std::remove(zrows.begin(), zrows.end(), Gf2Row{0}), zrows.end());
    gf2_rref(zrows, n);
    for (Gf2Row z : zrows) zgen.push_back(z << n);
  }

  std::vector<Gf2Row> generators = zgen;
  bool z_type = true;
  if (generators.empty()) {
    gf2_rref(kernel, 2 * n);
    generators = kernel;
    z_type = false;
  }

  std::vector<PauliTerm> gens;
  for (Gf2Row g : generators) gens.push_back(term_from_row(g, n));

  // Sector eigenvalues.
  std::vector<int> sector;
  if (explicit_sector) {
    if (explicit_sector->size() != gens.size())
      throw std::invalid_argument("taper_z2: explicit sector size mismatch");
    sector = *explicit_sector;
  } else if (z_type) {
    if (static_cast<int>(occupation_hint.size()) != n)
      throw std::invalid_argument("taper_z2: occupation hint length must equal qubit count");
    for (const auto& g : gens) {
      int parity = 0;
      for (const auto& [q, l] : g.letters)
        if (occupation_hint[q] == '1') ++parity;
      sector.push_back(parity % 2 ? -1 : 1);
    }
  } else {
    throw std::invalid_argument(
        "taper_z2: non-Z symmetry generators found; the occupation hint does not "
        "determine a sector, pass one explicitly");
  }

  // Pair each generator with a single-qubit Pauli it anticommutes with, on a
  // qubit where every other generator acts trivially or compatibly.
  struct Pairing {
    int qubit;
    Pauli single;
  };
  std::vector<Pairing> pairings;
  std::vector<bool> used(n, false);
  for (std::size_t i = 0; i < gens.size(); ++i) {
    bool done = false;
    for (const auto& [q, l] : gens[i].letters) {
      if (used[q]) continue;
      for (Pauli cand : {Pauli::X, Pauli::Z, Pauli::Y}) {
        if (cand == l) continue;  // must anticommute with gens[i] at q
        bool ok = true;
        for (std::size_t j = 0; j < gens.size() && ok; ++j)
          if (j != i && anticommutes_single(cand, gens[j], q)) ok = false;
        if (!ok) continue;
        pairings.push_back({q, cand});
        used[q] = true;
        done = true;
        break;
      }
      if (done) break;
    }
    if (!done) return result;  // cannot realize the reduction; flagged identity
  }

  // Conjugate every Hamiltonian term by U_i = (sigma_i + tau_i)/sqrt(2).
  PauliSum transformed = hm;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    PauliTerm sigma;
    sigma.letters.emplace_back(pairings[i].qubit, pairings[i].single);
    const PauliTerm& tau = gens[i];
    for (auto& t : transformed.terms) {
      const bool cs = t.commutes_with(sigma);
      const bool ct = t.commutes_with(tau);
      if (cs && ct) continue;
      if (!cs && !ct) {
        t.coefficient = -t.coefficient;
      } else if (cs) {
        t = t * (sigma * tau);
      } else {
        t = (sigma * tau) * t;
      }
    }
  }

  // Substitute the sector eigenvalue on each paired qubit and drop it.
  std::vector<int> removed;
  for (const auto& p : pairings) removed.push_back(p.qubit);
  std::sort(removed.begin(), removed.end());
  std::vector<int> relabel(n, -1);
  int next = 0;
  for (int q = 0; q < n; ++q)
    if (!std::binary_search(removed.begin(), removed.end(), q)) relabel[q] = next++;

  PauliSum reduced(n - static_cast<int>(removed.size()));
  for (const auto& t : transformed.terms) {
    PauliTerm out;
    out.coefficient = t.coefficient;
    for (const auto& [q, l] : t.letters) {
      bool dropped = false;
      for (std::size_t i = 0; i < pairings.size(); ++i) {
        if (pairings[i].qubit != q) continue;
        if (l != pairings[i].single)
          throw std::logic_error("taper_z2: residual anticommuting letter after conjugation");
        out.coefficient *= static_cast<double>(sector[i]);
        dropped = true;
        break;
      }
      if (!dropped) out.letters.emplace_back(relabel[q], l);
    }
    reduced.terms.push_back(std::move(out));
  }

  result.reduced = reduced.merged();
  result.symmetry_generators = gens;
  result.sector = sector;
  result.removed_qubits = removed;
  result.found = true;
  return result;
}

double expectation_from_counts(const PauliTerm& term, const CountsHistogram& counts) {
  if (counts.shots <= 0 || counts.counts.empty())
    throw std::invalid_argument("expectation_from_counts: empty histogram");
  double acc = 0.0;
  for (const auto& [bits, c] : counts.counts) {
    int parity = 0;
    for (const auto& [q, l] : term.letters) {
      if (q < 0 || q >= static_cast<int>(bits.size()))
        throw std::out_of_range("expectation_from_counts: qubit beyond bitstring length");
      if (bits[q] == '1') ++parity;
    }
    acc += (parity % 2 ? -1.0 : 1.0) * static_cast<double>(c);
  }
  return acc / static_cast<double>(counts.shots);
}

}  // namespace qcb
