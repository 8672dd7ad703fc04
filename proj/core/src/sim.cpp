#include "qcbench/sim.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace qcb {

namespace {

using Mat2 = Eigen::Matrix2cd;
constexpr std::complex<double> kI{0.0, 1.0};

Mat2 gate_matrix(const Gate& g) {
  Mat2 m;
  const double half = g.angle / 2.0;
  switch (g.kind) {
    case GateKind::X:
      m << 0, 1, 1, 0;
      break;
    case GateKind::H:
      m << 1, 1, 1, -1;
      m /= std::sqrt(2.0);
      break;
    case GateKind::RX:
      m << std::cos(half), -kI * std::sin(half), -kI * std::sin(half), std::cos(half);
      break;
    case GateKind::RY:
      m << std::cos(half), -std::sin(half), std::sin(half), std::cos(half);
      break;
    case GateKind::RZ:
      m << std::exp(-kI * half), 0, 0, std::exp(kI * half);
      break;
    default:
      throw std::logic_error("gate_matrix: CNOT has no 2x2 matrix");
  }
  return m;
}

void apply_single(Eigen::Ref<Eigen::VectorXcd> psi, const Mat2& m, int q) {
  const std::size_t dim = psi.size();
  const std::size_t bit = std::size_t{1} << q;
  for (std::size_t i = 0; i < dim; ++i) {
    if (i & bit) continue;
    const std::size_t j = i | bit;
    const auto a0 = psi(i), a1 = psi(j);
    psi(i) = m(0, 0) * a0 + m(0, 1) * a1;
    psi(j) = m(1, 0) * a0 + m(1, 1) * a1;
  }
}

void apply_cnot(Eigen::Ref<Eigen::VectorXcd> psi, int control, int target) {
  const std::size_t dim = psi.size();
  const std::size_t cbit = std::size_t{1} << control;
  const std::size_t tbit = std::size_t{1} << target;
  for (std::size_t i = 0; i < dim; ++i)
    if ((i & cbit) && !(i & tbit)) std::swap(psi(i), psi(i | tbit));
}

void apply_gate_vec(Eigen::Ref<Eigen::VectorXcd> psi, const Gate& g) {
  if (g.kind == GateKind::CNOT)
    apply_cnot(psi, g.q0, g.q1);
  else
    apply_single(psi, gate_matrix(g), g.q0);
}

// rho <- U rho U^, by columns then by columns of the adjoint.
void apply_gate_density(Eigen::MatrixXcd& rho, const Gate& g) {
  for (Eigen::Index j = 0; j < rho.cols(); ++j) apply_gate_vec(rho.col(j), g);
  Eigen::MatrixXcd tmp = rho.adjoint();
  for (Eigen::Index j = 0; j < tmp.cols(); ++j) apply_gate_vec(tmp.col(j), g);
  rho = tmp.adjoint();
}

// rho <- (1-eps) rho + eps Tr_{ab}(rho) (x) I4/4 on the pair (a,b).
void apply_depolarizing(Eigen::MatrixXcd& rho, int a, int b, double eps) {
  if (eps <= 0.0) return;
  const std::size_t dim = rho.rows();
  const std::size_t abit = std::size_t{1} << a;
  const std::size_t bbit = std::size_t{1} << b;

  const auto rest_of = [&](std::size_t i) {
    std::size_t r = 0;
    int pos = 0;
    for (std::size_t q = 0; (std::size_t{1} << q) < dim; ++q) {
      if (static_cast<int>(q) == a || static_cast<int>(q) == b) continue;
      r |= ((i >> q) & 1) << pos++;
    }
    return r;
  };
  const auto sub_of = [&](std::size_t i) {
    return static_cast<int>(((i & abit) ? 1 : 0) | ((i & bbit) ? 2 : 0));
  };

  const std::size_t rdim = dim / 4;
  Eigen::MatrixXcd traced = Eigen::MatrixXcd::Zero(rdim, rdim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j)
      if (sub_of(i) == sub_of(j)) traced(rest_of(i), rest_of(j)) += rho(i, j);

  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) {
      std::complex<double> v = (1.0 - eps) * rho(i, j);
      if (sub_of(i) == sub_of(j)) v += (eps / 4.0) * traced(rest_of(i), rest_of(j));
      rho(i, j) = v;
    }
}

void require_bound(const Circuit& c) {
  if (!c.is_bound()) throw std::invalid_argument("simulator: circuit has unbound parameters");
}

double next_uniform(std::mt19937_64& eng) {
  return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

std::uint64_t letters_salt(const std::vector<std::pair<int, Pauli>>& letters) {
  std::uint64_t h = 1469598103934665603ull;
  for (const auto& [q, l] : letters) {
    h = (h ^ static_cast<std::uint64_t>(q)) * 1099511628211ull;
    h = (h ^ static_cast<std::uint64_t>(l)) * 1099511628211ull;
  }
  return h;
}

// Rotates each letter's qubit into the Z basis for measurement.
Circuit with_measurement_basis(const Circuit& ansatz, const PauliTerm& term) {
  Circuit c = ansatz;
  for (const auto& [q, l] : term.letters) {
    if (l == Pauli::X) c.h(q);
    if (l == Pauli::Y) c.rx(q, std::numbers::pi / 2.0);
  }
  return c;
}

std::pair<double, double> raw_term_estimate(const PauliTerm& term, const CountsHistogram& counts) {
  const double mean = expectation_from_counts(term, counts);
  const double var = std::max(0.0, 1.0 - mean * mean) / static_cast<double>(counts.shots);
  return {mean, std::sqrt(var)};
}

}  // namespace

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (salt + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

Eigen::VectorXd QuantumState::probabilities() const {
  if (is_density()) return density.diagonal().real().cwiseMax(0.0);
  return statevector.cwiseAbs2();
}

Eigen::MatrixXcd QuantumState::as_density() const {
  if (is_density()) return density;
  return statevector * statevector.adjoint();
}

std::complex<double> QuantumState::pauli_expectation(const PauliTerm& term) const {
  std::uint64_t xmask = 0, zmask = 0;
  int ny = 0;
  for (const auto& [q, l] : term.letters) {
    if (q >= n_qubits) throw std::out_of_range("pauli_expectation: qubit out of range");
    if (l != Pauli::Z) xmask |= std::uint64_t{1} << q;
    if (l != Pauli::X) zmask |= std::uint64_t{1} << q;
    if (l == Pauli::Y) ++ny;
  }
  std::complex<double> yphase = 1.0;
  switch (ny % 4) {
    case 1: yphase = kI; break;
    case 2: yphase = -1.0; break;
    case 3: yphase = -kI; break;
    default: break;
  }
  const std::size_t dim = std::size_t{1} << n_qubits;
  std::complex<double> acc = 0.0;
  for (std::size_t j = 0; j < dim; ++j) {
    std::complex<double> phase = yphase;
    if (std::popcount(j & zmask) % 2) phase = -phase;
    // P|j> = phase |j ^ xmask>
    if (is_density())
      acc += phase * density(j, j ^ xmask);
    else
      acc += std::conj(statevector(j ^ xmask)) * phase * statevector(j);
  }
  return acc;
}

bool NoiseModel::has_readout() const {
  return std::any_of(readout.begin(), readout.end(),
                     [](const auto& p) { return p.first > 0.0 || p.second > 0.0; });
}

void NoiseModel::validate() const {
  if (epsilon < 0.0 || epsilon > 1.0)
    throw std::invalid_argument("NoiseModel: epsilon outside [0,1]");
  for (const auto& [p10, p01] : readout)
    if (p10 < 0 || p10 > 1 || p01 < 0 || p01 > 1)
      throw std::invalid_argument("NoiseModel: readout probability outside [0,1]");
}

NoiseModel NoiseModel::depolarizing(double eps) {
  NoiseModel n;
  n.epsilon = eps;
  n.validate();
  return n;
}

NoiseModel NoiseModel::uniform_readout(int n_qubits, double p10, double p01) {
  NoiseModel n;
  n.readout.assign(n_qubits, {p10, p01});
  n.validate();
  return n;
}

std::string EnergyEstimate::to_json() const {
  nlohmann::ordered_json j;
  j["value"] = value;
  j["stderr"] = stderr_;
  j["shots"] = shots;
  j["seed"] = seed;
  j["terms"] = n_terms;
  j["mitigation"] = mitigation;
  return j.dump();
}

QuantumState run_statevector(const Circuit& c) {
  if (c.n_qubits > 24) throw std::invalid_argument("run_statevector: more than 24 qubits");
  require_bound(c);
  QuantumState s;
  s.n_qubits = c.n_qubits;
  s.statevector = Eigen::VectorXcd::Zero(std::size_t{1} << c.n_qubits);
  s.statevector(0) = 1.0;
  for (const auto& g : c.gates) apply_gate_vec(s.statevector, g);
  return s;
}

QuantumState run_density(const Circuit& c, const NoiseModel& noise) {
  if (c.n_qubits > 10) throw std::invalid_argument("run_density: more than 10 qubits");
  require_bound(c);
  noise.validate();
  QuantumState s;
  s.n_qubits = c.n_qubits;
  const std::size_t dim = std::size_t{1} << c.n_qubits;
  s.density = Eigen::MatrixXcd::Zero(dim, dim);
  s.density(0, 0) = 1.0;
  for (const auto& g : c.gates) {
    apply_gate_density(s.density, g);
    if (g.kind == GateKind::CNOT) apply_depolarizing(s.density, g.q0, g.q1, noise.epsilon);
  }
  return s;
}

CountsHistogram sample_counts(const QuantumState& s, long shots, const NoiseModel& noise,
                              std::uint64_t seed) {
  if (shots < 1) throw std::invalid_argument("sample_counts: shots must be >= 1");
  noise.validate();
  if (!noise.readout.empty() && static_cast<int>(noise.readout.size()) != s.n_qubits)
    throw std::invalid_argument("sample_counts: readout model size mismatch");

  const Eigen::VectorXd probs = s.probabilities();
  std::vector<double> cdf(probs.size());
  double acc = 0.0;
  for (Eigen::Index i = 0; i < probs.size(); ++i) {
    acc += probs(i);
    cdf[static_cast<std::size_t>(i)] = acc;
  }
  const double total = acc;

  std::mt19937_64 eng(seed);
  CountsHistogram hist;
  hist.shots = shots;
  std::string bits(static_cast<std::size_t>(s.n_qubits), '0');
  for (long shot = 0; shot < shots; ++shot) {
    const double u = next_uniform(eng) * total;
    const auto it = std::lower_bound(cdf.begin(), cdf.end(), u);
    std::size_t idx = static_cast<std::size_t>(it - cdf.begin());
    if (idx >= cdf.size()) idx = cdf.size() - 1;
    for (int q = 0; q < s.n_qubits; ++q) {
      bool bit = (idx >> q) & 1;
      if (!noise.readout.empty()) {
        const auto& [p10, p01] = noise.readout[static_cast<std::size_t>(q)];
        const double flip = bit ? p01 : p10;
        if (flip > 0.0 && next_uniform(eng) < flip) bit = !bit;
      }
      bits[static_cast<std::size_t>(q)] = bit ? '1' : '0';
    }
    ++hist.counts[bits];
  }
  return hist;
}

EnergyEstimate measure_pauli_sum(const Circuit& ansatz, const PauliSum& h, long shots_per_term,
                                 const NoiseModel& noise, std::uint64_t seed,
                                 const TermEvaluator& evaluator) {
  if (h.n_qubits != ansatz.n_qubits)
    throw std::invalid_argument("measure_pauli_sum: qubit count mismatch");
  const PauliSum hm = h.merged();
  if (!hm.is_hermitian()) throw std::invalid_argument("measure_pauli_sum: observable not Hermitian");

  EnergyEstimate est;
  est.shots = shots_per_term;
  est.seed = seed;
  est.value = hm.identity_coefficient().real();

  std::vector<const PauliTerm*> measured;
  for (const auto& t : hm.terms)
    if (!t.is_identity()) measured.push_back(&t);
  est.n_terms = static_cast<int>(measured.size());
  if (measured.empty()) return est;

  if (shots_per_term == 0) {
    const QuantumState state =
        noise.epsilon > 0.0 ? run_density(ansatz, noise) : run_statevector(ansatz);
    for (const auto* t : measured)
      est.value += t->coefficient.real() * state.pauli_expectation(*t).real();
    return est;
  }

  const TermEvaluator eval = evaluator ? evaluator : raw_term_estimate;
  double var = 0.0;
  for (std::size_t k = 0; k < measured.size(); ++k) {
    const PauliTerm& t = *measured[k];
    const Circuit c = with_measurement_basis(ansatz, t);
    const QuantumState state = noise.epsilon > 0.0 ? run_density(c, noise) : run_statevector(c);
    const CountsHistogram counts =
        sample_counts(state, shots_per_term, noise, mix_seed(seed, letters_salt(t.letters)));
    const auto [mean, se] = eval(t, counts);
    est.value += t.coefficient.real() * mean;
    var += t.coefficient.real() * t.coefficient.real() * se * se;
  }
  est.stderr_ = std::sqrt(var);
  return est;
}

RDM2 measure_rdm2(const Circuit& ansatz, int n_active, long shots_per_term,
                  const NoiseModel& noise, std::uint64_t seed) {
  if (n_active != ansatz.n_qubits)
    throw std::invalid_argument("measure_rdm2: active orbital count must match ansatz qubits");

  const auto pr = RDM2::pairs(n_active);
  const std::size_t npairs = pr.size();

  // One simulation serves the exact path; sampled settings are cached by
  // Pauli string so identical strings share counts.
  std::optional<QuantumState> exact_state;
  if (shots_per_term == 0)
    exact_state = noise.epsilon > 0.0 ? run_density(ansatz, noise) : run_statevector(ansatz);
  std::map<std::vector<std::pair<int, Pauli>>, double> cache;

  const auto term_mean = [&](const PauliTerm& t) {
    const auto it = cache.find(t.letters);
    if (it != cache.end()) return it->second;
    double mean;
    if (exact_state) {
      mean = exact_state->pauli_expectation(t).real();
    } else {
      const Circuit c = with_measurement_basis(ansatz, t);
      const QuantumState state = noise.epsilon > 0.0 ? run_density(c, noise) : run_statevector(c);
      const CountsHistogram counts =
          sample_counts(state, shots_per_term, noise, mix_seed(seed, letters_salt(t.letters)));
      mean = expectation_from_counts(t, counts);
    }
    cache.emplace(t.letters, mean);
    return mean;
  };

  Eigen::MatrixXcd pm = Eigen::MatrixXcd::Zero(npairs, npairs);
  for (std::size_t a = 0; a < npairs; ++a)
    for (std::size_t b = a; b < npairs; ++b) {
      const auto [p, q] = pr[a];
      const auto [r, s] = pr[b];
      // rho(p,q,r,s) = <a^_p a^_q a_s a_r>
      FermionOp op;
      op.add(1.0, {{p, true}, {q, true}, {s, false}, {r, false}});
      const PauliSum img = jordan_wigner(op, n_active);
      std::complex<double> v = 0.0;
      for (const auto& t : img.terms) {
        if (t.is_identity()) {
          v += t.coefficient;
          continue;
        }
        v += t.coefficient * term_mean(t);
      }
      pm(a, b) = v;
      if (b != a) pm(b, a) = std::conj(v);
    }

  // Recover the electron count from the pair trace C(M,2).
  const double pair_trace = pm.trace().real();
  int m_elec = 0;
  if (1.0 + 8.0 * pair_trace >= 0.0)
    m_elec = static_cast<int>(std::lround((1.0 + std::sqrt(1.0 + 8.0 * pair_trace)) / 2.0));
  return RDM2::from_pair_matrix(pm, n_active, m_elec);
}

}  // namespace qcb
