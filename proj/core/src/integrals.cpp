#include "qcbench/integrals.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace qcb {

namespace {

constexpr double kSymTol = 1e-10;

[[noreturn]] void fail(const std::string& msg) { throw std::runtime_error(msg); }

[[noreturn]] void fail_at(const std::filesystem::path& path, int line, const std::string& msg) {
  fail(path.string() + ":" + std::to_string(line) + ": " + msg);
}

}  // namespace

IntegralSet IntegralSet::zero(int n_spin_orbitals, int n_electrons) {
  IntegralSet ints;
  ints.n_spin_orbitals = n_spin_orbitals;
  ints.n_electrons = n_electrons;
  const auto n = static_cast<std::size_t>(n_spin_orbitals);
  ints.h1.assign(n * n, 0.0);
  ints.g2.assign(n * n * n * n, 0.0);
  return ints;
}

void IntegralSet::validate() const {
  const int n = n_spin_orbitals;
  if (n <= 0) fail("IntegralSet: orbital count must be positive");
  if (n_electrons < 0 || n_electrons > n) fail("IntegralSet: bad electron count");
  for (int p = 0; p < n; ++p)
    for (int q = p; q < n; ++q) {
      if (std::abs(h(p, q) - h(q, p)) > kSymTol)
        fail("h1 not symmetric at (" + std::to_string(p) + "," + std::to_string(q) + ")");
      if (is_spin_up(p, n) != is_spin_up(q, n) && std::abs(h(p, q)) > kSymTol)
        fail("h1 mixes spin blocks at (" + std::to_string(p) + "," + std::to_string(q) + ")");
    }
  // 8-fold symmetry of <pq|sr>: the three generators suffice.
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q)
      for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s) {
          const double v = g(p, q, r, s);
          const auto bad = [&](double w) { return std::abs(v - w) > kSymTol; };
          if (bad(g(s, q, r, p)) || bad(g(p, r, q, s)) || bad(g(q, p, s, r)))
            fail("g2 violates permutation symmetry at (" + std::to_string(p) + "," +
                 std::to_string(q) + "," + std::to_string(r) + "," + std::to_string(s) + ")");
        }
}

void ActiveSpaceSpec::validate(const IntegralSet& ints) const {
  const int n = ints.n_spin_orbitals;
  std::set<int> seen;
  int n_up = 0, n_down = 0;
  for (int a : frozen) {
    if (a < 0 || a >= n) fail("frozen orbital " + std::to_string(a) + " out of range");
    if (!seen.insert(a).second) fail("frozen orbital " + std::to_string(a) + " repeated");
    (is_spin_up(a, n) ? n_up : n_down)++;
  }
  if (n_up != n_down) fail("frozen set is spin-imbalanced");
  for (int p : active) {
    if (p < 0 || p >= n) fail("active orbital " + std::to_string(p) + " out of range");
    if (seen.count(p)) fail("orbital " + std::to_string(p) + " is both frozen and active");
    if (!seen.insert(p).second) fail("active orbital " + std::to_string(p) + " repeated");
  }
  if (active.empty()) fail("active space is empty");
}

FermionOp& FermionOp::add(std::complex<double> coeff, std::vector<FermionFactor> factors) {
  terms.push_back({coeff, std::move(factors)});
  return *this;
}

IntegralSet load_integrals(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open integral file " + path.string());

  IntegralSet ints;
  bool sized = false;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ss(line);
    std::string tag;
    if (!(ss >> tag)) continue;

    const auto want_index = [&](int& out) {
      if (!(ss >> out)) fail_at(path, lineno, "expected an orbital index");
      if (!sized) fail_at(path, lineno, "norb must appear before integral entries");
      if (out < 0 || out >= ints.n_spin_orbitals)
        fail_at(path, lineno, "orbital index " + std::to_string(out) + " out of range");
    };
    const auto want_value = [&](double& out) {
      if (!(ss >> out)) fail_at(path, lineno, "expected a value");
    };

    if (tag == "norb") {
      int n = 0;
      if (!(ss >> n) || n <= 0) fail_at(path, lineno, "bad orbital count");
      ints = IntegralSet::zero(n, ints.n_electrons);
      sized = true;
    } else if (tag == "nelec") {
      if (!(ss >> ints.n_electrons) || ints.n_electrons < 0)
        fail_at(path, lineno, "bad electron count");
    } else if (tag == "enuc") {
      want_value(ints.e_nuclear);
    } else if (tag == "h") {
      int p, q;
      double v;
      want_index(p);
      want_index(q);
      want_value(v);
      ints.h(p, q) = v;
    } else if (tag == "g") {
      int p, q, r, s;
      double v;
      want_index(p);
      want_index(q);
      want_index(r);
      want_index(s);
      want_value(v);
      ints.g(p, q, r, s) = v;
    } else {
      fail_at(path, lineno, "unknown tag '" + tag + "'");
    }
  }
  if (!sized) fail(path.string() + ": missing norb header");
  try {
    ints.validate();
  } catch (const std::exception& e) {
    fail(path.string() + ": " + e.what());
  }
  return ints;
}

IntegralSet load_fcidump(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open FCIDUMP file " + path.string());

  std::string header;
  std::string line;
  int lineno = 0;
  // Header runs until the &END / / terminator line.
  while (std::getline(in, line)) {
    ++lineno;
    header += line + "\n";
    std::string upper = line;
    std::transform(upper.begin(), upper.end(), upper.begin(), ::toupper);
    if (upper.find("&END") != std::string::npos ||
        upper.find('/') != std::string::npos)
      break;
  }
  const auto grab_int = [&](const std::string& key) {
    std::string upper = header;
    std::transform(upper.begin(), upper.end(), upper.begin(), ::toupper);
    auto pos = upper.find(key);
    if (pos == std::string::npos) fail(path.string() + ": FCIDUMP header lacks " + key);
    pos = upper.find('=', pos);
    if (pos == std::string::npos) fail(path.string() + ": malformed " + key);
    return std::stoi(upper.substr(pos + 1));
  };
  const int norb = grab_int("NORB");
  const int nelec = grab_int("NELEC");
  const int n = 2 * norb;

  // Spatial chemists' integrals with 8-fold completion.
  std::vector<double> hs(static_cast<std::size_t>(norb) * norb, 0.0);
  std::vector<double> cs(static_cast<std::size_t>(norb) * norb * norb * norb, 0.0);
  const auto cidx = [&](int i, int j, int k, int l) {
    return ((static_cast<std::size_t>(i) * norb + j) * norb + k) * norb + l;
  };
  double enuc = 0.0;

  double v;
  int i, j, k, l;
  while (in >> v >> i >> j >> k >> l) {
    ++lineno;
    if (i > norb || j > norb || k > norb || l > norb || i < 0 || j < 0 || k < 0 || l < 0)
      fail_at(path, lineno, "orbital index out of range");
    if (i == 0) {
      enuc = v;
    } else if (k == 0) {
      hs[static_cast<std::size_t>(i - 1) * norb + (j - 1)] = v;
      hs[static_cast<std::size_t>(j - 1) * norb + (i - 1)] = v;
    } else {
      const int a = i - 1, b = j - 1, c = k - 1, d = l - 1;
      for (auto [w, x, y, z] : {std::array{a, b, c, d}, std::array{b, a, c, d},
                                std::array{a, b, d, c}, std::array{b, a, d, c},
                                std::array{c, d, a, b}, std::array{d, c, a, b},
                                std::array{c, d, b, a}, std::array{d, c, b, a}})
        cs[cidx(w, x, y, z)] = v;
    }
  }

  IntegralSet ints = IntegralSet::zero(n, nelec);
  ints.e_nuclear = enuc;
  const auto spatial = [&](int p) { return p % norb; };
  const auto up = [&](int p) { return p < norb; };
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q)
      if (up(p) == up(q)) ints.h(p, q) = hs[static_cast<std::size_t>(spatial(p)) * norb + spatial(q)];
  // g2(p,q,r,s) = <pq|sr> = (ps|qr) with spin(p)=spin(s), spin(q)=spin(r).
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q)
      for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s) {
          if (up(p) != up(s) || up(q) != up(r)) continue;
          ints.g(p, q, r, s) = cs[cidx(spatial(p), spatial(s), spatial(q), spatial(r))];
        }
  ints.validate();
  return ints;
}

void save_integrals(const IntegralSet& ints, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) fail("cannot write integral file " + path.string());
  out.precision(17);
  const int n = ints.n_spin_orbitals;
  out << "norb " << n << "\n";
  out << "nelec " << ints.n_electrons << "\n";
  out << "enuc " << ints.e_nuclear << "\n";
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q)
      if (ints.h(p, q) != 0.0) out << "h " << p << " " << q << " " << ints.h(p, q) << "\n";
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q)
      for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s)
          if (ints.g(p, q, r, s) != 0.0)
            out << "g " << p << " " << q << " " << r << " " << s << " " << ints.g(p, q, r, s)
                << "\n";
}

double antisymmetrize(const IntegralSet& ints, int p, int q, int r, int s) {
  const int n = ints.n_spin_orbitals;
  for (int idx : {p, q, r, s})
    if (idx < 0 || idx >= n)
      throw std::out_of_range("antisymmetrize: orbital index " + std::to_string(idx) +
                              " out of range");
  return ints.g(p, q, r, s) - ints.g(p, q, s, r);
}

IntegralSet freeze_core(const IntegralSet& full, const ActiveSpaceSpec& spec,
                        CoreFolding folding) {
  spec.validate(full);
  const int n = full.n_spin_orbitals;
  const int n_act = static_cast<int>(spec.active.size());

  // Active relabeling must preserve the up/down block split.
  std::vector<int> active = spec.active;
  std::stable_sort(active.begin(), active.end(), [&](int a, int b) {
    const bool au = is_spin_up(a, n), bu = is_spin_up(b, n);
    if (au != bu) return au;
    return a < b;
  });
  int n_up_act = 0;
  for (int p : active)
    if (is_spin_up(p, n)) ++n_up_act;
  if (2 * n_up_act != n_act)
    fail("active space is spin-imbalanced; blocked relabeling impossible");

  const double fold = folding == CoreFolding::full ? 1.0 : 0.5;

  IntegralSet out = IntegralSet::zero(n_act, full.n_electrons - static_cast<int>(spec.frozen.size()));
  // gbar upper (a,b), lower (a,b): lower indices fill the (s,r) slots.
  double e0 = full.e_nuclear;
  for (int a : spec.frozen) {
    double two_body = 0.0;
    for (int b : spec.frozen) two_body += antisymmetrize(full, a, b, b, a);
    e0 += full.h(a, a) + 0.5 * two_body;
  }
  out.e_nuclear = e0;

  for (int p = 0; p < n_act; ++p)
    for (int q = 0; q < n_act; ++q) {
      double v = full.h(active[p], active[q]);
      for (int a : spec.frozen) v += fold * antisymmetrize(full, a, active[p], active[q], a);
      out.h(p, q) = v;
    }
  for (int p = 0; p < n_act; ++p)
    for (int q = 0; q < n_act; ++q)
      for (int r = 0; r < n_act; ++r)
        for (int s = 0; s < n_act; ++s)
          out.g(p, q, r, s) = full.g(active[p], active[q], active[r], active[s]);
  return out;
}

FermionOp build_fermion_hamiltonian(const IntegralSet& ints) {
  const int n = ints.n_spin_orbitals;
  FermionOp op;
  if (ints.e_nuclear != 0.0) op.add(ints.e_nuclear, {});
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q)
      if (ints.h(p, q) != 0.0) op.add(ints.h(p, q), {{p, true}, {q, false}});
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q) {
      if (p == q) continue;  // p^ q^ vanishes
      for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s) {
          if (r == s) continue;
          const double v = ints.g(p, q, r, s);
          if (v == 0.0) continue;
          op.add(0.5 * v, {{p, true}, {q, true}, {r, false}, {s, false}});
        }
    }
  return op;
}

}  // namespace qcb
