#include "qcbench/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace qcb {

namespace {
constexpr double kHalfPi = std::numbers::pi / 2.0;
}

bool is_rotation(GateKind k) {
  return k == GateKind::RX || k == GateKind::RY || k == GateKind::RZ;
}

const char* gate_name(GateKind k) {
  switch (k) {
    case GateKind::X: return "X";
    case GateKind::H: return "H";
    case GateKind::RX: return "RX";
    case GateKind::RY: return "RY";
    case GateKind::RZ: return "RZ";
    default: return "CNOT";
  }
}

namespace {
void check_qubit(const Circuit& c, int q) {
  if (q < 0 || q >= c.n_qubits)
    throw std::out_of_range("circuit: qubit " + std::to_string(q) + " out of range");
}
}  // namespace

Circuit& Circuit::x(int q) {
  check_qubit(*this, q);
  gates.push_back({GateKind::X, q});
  return *this;
}
Circuit& Circuit::h(int q) {
  check_qubit(*this, q);
  gates.push_back({GateKind::H, q});
  return *this;
}
Circuit& Circuit::rx(int q, double angle) {
  check_qubit(*this, q);
  gates.push_back({GateKind::RX, q, -1, angle});
  return *this;
}
Circuit& Circuit::ry(int q, double angle) {
  check_qubit(*this, q);
  gates.push_back({GateKind::RY, q, -1, angle});
  return *this;
}
Circuit& Circuit::rz(int q, double angle) {
  check_qubit(*this, q);
  gates.push_back({GateKind::RZ, q, -1, angle});
  return *this;
}
Circuit& Circuit::cnot(int control, int target) {
  check_qubit(*this, control);
  check_qubit(*this, target);
  if (control == target) throw std::invalid_argument("circuit: CNOT control equals target");
  gates.push_back({GateKind::CNOT, control, target});
  return *this;
}

Circuit& Circuit::rotation(GateKind kind, int q, const std::string& name, double scale) {
  if (!is_rotation(kind)) throw std::invalid_argument("circuit: not a rotation gate");
  check_qubit(*this, q);
  int idx = -1;
  for (std::size_t i = 0; i < parameters.size(); ++i)
    if (parameters[i] == name) idx = static_cast<int>(i);
  if (idx < 0) {
    idx = static_cast<int>(parameters.size());
    parameters.push_back(name);
  }
  gates.push_back({kind, q, -1, scale, idx});
  return *this;
}

bool Circuit::is_bound() const {
  return std::all_of(gates.begin(), gates.end(), [](const Gate& g) { return g.param < 0; });
}

Circuit Circuit::bound(std::span<const double> values) const {
  if (values.size() != parameters.size())
    throw std::invalid_argument("circuit: expected " + std::to_string(parameters.size()) +
                                " parameter values, got " + std::to_string(values.size()));
  Circuit out(n_qubits);
  out.gates = gates;
  for (auto& g : out.gates) {
    if (g.param < 0) continue;
    g.angle = g.angle * values[static_cast<std::size_t>(g.param)];
    g.param = -1;
  }
  return out;
}

Circuit Circuit::then(const Circuit& next) const {
  if (next.n_qubits != n_qubits)
    throw std::invalid_argument("circuit: qubit count mismatch in composition");
  Circuit out = *this;
  const int offset = static_cast<int>(parameters.size());
  for (const auto& name : next.parameters) out.parameters.push_back(name);
  for (Gate g : next.gates) {
    if (g.param >= 0) g.param += offset;
    out.gates.push_back(g);
  }
  return out;
}

int Circuit::cnot_count() const {
  return static_cast<int>(
      std::count_if(gates.begin(), gates.end(), [](const Gate& g) { return g.kind == GateKind::CNOT; }));
}

std::string Circuit::to_text() const {
  std::ostringstream ss;
  ss.precision(12);
  for (const auto& g : gates) {
    ss << gate_name(g.kind) << " " << g.q0;
    if (g.kind == GateKind::CNOT) ss << " " << g.q1;
    if (is_rotation(g.kind)) {
      ss << " ";
      if (g.param >= 0)
        ss << g.angle << "*" << parameters[static_cast<std::size_t>(g.param)];
      else
        ss << g.angle;
    }
    ss << "\n";
  }
  return ss.str();
}

Circuit hartree_fock_reference(int n_qubits, int n_electrons) {
  if (n_electrons > n_qubits)
    throw std::invalid_argument("hartree_fock_reference: more electrons than qubits");
  if (n_electrons < 0) throw std::invalid_argument("hartree_fock_reference: negative electron count");
  Circuit c(n_qubits);
  const int n_up = (n_electrons + 1) / 2;
  const int n_down = n_electrons / 2;
  for (int i = 0; i < n_up; ++i) c.x(i);
  for (int i = 0; i < n_down; ++i) c.x(n_qubits / 2 + i);
  return c;
}

void append_pauli_exponential(Circuit& c, const PauliTerm& p, double angle) {
  if (p.letters.empty()) return;  // global phase
  std::vector<std::pair<int, Pauli>> letters = p.letters;
  std::sort(letters.begin(), letters.end());

  const auto basis_in = [&] {
    for (const auto& [q, l] : letters) {
      if (l == Pauli::X) c.h(q);
      if (l == Pauli::Y) c.rx(q, kHalfPi);
    }
  };
  const auto basis_out = [&] {
    for (const auto& [q, l] : letters) {
      if (l == Pauli::X) c.h(q);
      if (l == Pauli::Y) c.rx(q, -kHalfPi);
    }
  };

  basis_in();
  for (std::size_t i = 0; i + 1 < letters.size(); ++i)
    c.cnot(letters[i].first, letters[i + 1].first);
  c.rz(letters.back().first, -2.0 * angle);
  for (std::size_t i = letters.size() - 1; i-- > 0;)
    c.cnot(letters[i].first, letters[i + 1].first);
  basis_out();
}

Circuit build_ucc1(double theta) {
  Circuit c(4);
  PauliTerm yxxx;
  yxxx.letters = {{0, Pauli::Y}, {1, Pauli::X}, {2, Pauli::X}, {3, Pauli::X}};
  append_pauli_exponential(c, yxxx, theta);
  return c;
}

namespace {

// exp(theta/2 (a^_q a_p - a^_p a_q)) for adjacent p < q, which JW-maps to
// exp(i theta/4 (Y_p X_q - X_p Y_q)); the two factors commute.
void append_single_excitation(Circuit& c, int p, int q, double theta) {
  PauliTerm yx, xy;
  yx.letters = {{p, Pauli::Y}, {q, Pauli::X}};
  xy.letters = {{p, Pauli::X}, {q, Pauli::Y}};
  append_pauli_exponential(c, yx, theta / 4.0);
  append_pauli_exponential(c, xy, -theta / 4.0);
}

}  // namespace

Circuit build_ucc3(double theta1, double theta2, double theta3) {
  Circuit c = build_ucc1(theta3);
  append_single_excitation(c, 0, 1, theta1);
  append_single_excitation(c, 2, 3, theta2);
  return c;
}

Circuit build_hwe(int n_qubits, int depth,
                  const std::vector<std::pair<int, int>>& connectivity) {
  Circuit c(n_qubits);
  for (const auto& [a, b] : connectivity) {
    check_qubit(c, a);
    check_qubit(c, b);
    if (a == b) throw std::invalid_argument("build_hwe: connectivity pair repeats a qubit");
  }
  int next_param = 0;
  const auto fresh = [&] { return "t" + std::to_string(next_param++); };
  for (int q = 0; q < n_qubits; ++q) {
    c.rotation(GateKind::RX, q, fresh(), 1.0);
    c.rotation(GateKind::RZ, q, fresh(), 1.0);
  }
  for (int layer = 0; layer < depth; ++layer) {
    for (const auto& [a, b] : connectivity) c.cnot(a, b);
    for (int q = 0; q < n_qubits; ++q) {
      c.rotation(GateKind::RZ, q, fresh(), 1.0);
      c.rotation(GateKind::RX, q, fresh(), 1.0);
      c.rotation(GateKind::RZ, q, fresh(), 1.0);
    }
  }
  return c;
}

Circuit trotter_circuit(const PauliSum& generator, double theta) {
  if (!generator.is_hermitian())
    throw std::invalid_argument("trotter_circuit: generator must be Hermitian");
  Circuit c(generator.n_qubits);
  for (const auto& t : generator.merged().terms) {
    if (t.is_identity()) continue;
    append_pauli_exponential(c, t, theta * t.coefficient.real());
  }
  return c;
}

Circuit insert_cnot_pairs(const Circuit& c, int r) {
  if (r < 1 || r % 2 == 0)
    throw std::invalid_argument("insert_cnot_pairs: r must be odd and positive");
  Circuit out(c.n_qubits);
  out.parameters = c.parameters;
  for (const auto& g : c.gates) {
    const int copies = g.kind == GateKind::CNOT ? r : 1;
    for (int i = 0; i < copies; ++i) out.gates.push_back(g);
  }
  return out;
}

std::vector<ExcitationGenerator> uccsd_generators(int n_qubits, int n_electrons) {
  const int n_up = (n_electrons + 1) / 2;
  const int n_down = n_electrons / 2;
  const int half = n_qubits / 2;
  std::vector<int> occ, virt;
  for (int i = 0; i < half; ++i) (i < n_up ? occ : virt).push_back(i);
  for (int i = 0; i < half; ++i) (i < n_down ? occ : virt).push_back(half + i);

  const auto spin = [&](int p) { return p < half ? 0 : 1; };
  std::vector<ExcitationGenerator> pool;
  constexpr std::complex<double> minus_i{0.0, -1.0};

  for (int i : occ)
    for (int a : virt) {
      if (spin(i) != spin(a)) continue;
      FermionOp op;
      op.add(1.0, {{a, true}, {i, false}});
      op.add(-1.0, {{i, true}, {a, false}});
      pool.push_back({"s_" + std::to_string(i) + "_" + std::to_string(a),
                      (minus_i * jordan_wigner(op, n_qubits)).merged()});
    }
  for (std::size_t ii = 0; ii < occ.size(); ++ii)
    for (std::size_t jj = ii + 1; jj < occ.size(); ++jj)
      for (std::size_t aa = 0; aa < virt.size(); ++aa)
        for (std::size_t bb = aa + 1; bb < virt.size(); ++bb) {
          const int i = occ[ii], j = occ[jj], a = virt[aa], b = virt[bb];
          if (spin(i) + spin(j) != spin(a) + spin(b)) continue;
          FermionOp op;
          op.add(1.0, {{a, true}, {b, true}, {j, false}, {i, false}});
          op.add(-1.0, {{i, true}, {j, true}, {b, false}, {a, false}});
          pool.push_back({"d_" + std::to_string(i) + "_" + std::to_string(j) + "_" +
                              std::to_string(a) + "_" + std::to_string(b),
                          (minus_i * jordan_wigner(op, n_qubits)).merged()});
        }
  return pool;
}

}  // namespace qcb
