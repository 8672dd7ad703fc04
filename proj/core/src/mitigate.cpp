#include "qcbench/mitigate.hpp"

#include <cmath>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace qcb {

void ReadoutCal::validate() const {
  for (std::size_t q = 0; q < p.size(); ++q) {
    const auto& [p10, p01] = p[q];
    if (p10 < 0 || p10 > 1 || p01 < 0 || p01 > 1)
      throw std::invalid_argument("ReadoutCal: probability outside [0,1]");
    if (1.0 - (p10 + p01) <= 0.0)
      throw std::invalid_argument("ReadoutCal: 1 - p+ not positive on qubit " + std::to_string(q));
  }
}

ReadoutCal ReadoutCal::zero(int n_qubits) {
  ReadoutCal cal;
  cal.p.assign(static_cast<std::size_t>(n_qubits), {0.0, 0.0});
  return cal;
}

ReadoutCal ReadoutCal::from_model(const NoiseModel& noise, int n_qubits) {
  ReadoutCal cal = ReadoutCal::zero(n_qubits);
  if (!noise.readout.empty()) {
    if (static_cast<int>(noise.readout.size()) != n_qubits)
      throw std::invalid_argument("ReadoutCal::from_model: size mismatch");
    cal.p = noise.readout;
  }
  cal.validate();
  return cal;
}

ReadoutCal calibrate_readout(int n_qubits, long shots, const NoiseModel& noise,
                             std::uint64_t seed) {
  if (shots < 1) throw std::invalid_argument("calibrate_readout: shots must be >= 1");
  ReadoutCal cal = ReadoutCal::zero(n_qubits);

  const auto one_rate = [&](const Circuit& c, std::uint64_t salt) {
    const QuantumState s = run_statevector(c);
    const CountsHistogram hist = sample_counts(s, shots, noise, mix_seed(seed, salt));
    std::vector<double> rate(static_cast<std::size_t>(n_qubits), 0.0);
    for (const auto& [bits, count] : hist.counts)
      for (int q = 0; q < n_qubits; ++q)
        if (bits[static_cast<std::size_t>(q)] == '1') rate[static_cast<std::size_t>(q)] += count;
    for (auto& r : rate) r /= static_cast<double>(shots);
    return rate;
  };

  const auto zeros = one_rate(Circuit(n_qubits), 0);
  for (int q = 0; q < n_qubits; ++q) cal.p[static_cast<std::size_t>(q)].first = zeros[static_cast<std::size_t>(q)];
  for (int q = 0; q < n_qubits; ++q) {
    Circuit c(n_qubits);
    c.x(q);
    const auto rate = one_rate(c, static_cast<std::uint64_t>(q) + 1);
    cal.p[static_cast<std::size_t>(q)].second = 1.0 - rate[static_cast<std::size_t>(q)];
  }
  cal.validate();
  return cal;
}

namespace {

double corrected_weight(const PauliTerm& term, const std::string& bits, const ReadoutCal& cal) {
  double w = 1.0;
  for (const auto& [q, l] : term.letters) {
    if (q < 0 || q >= static_cast<int>(bits.size()))
      throw std::out_of_range("corrected_expectation: qubit beyond bitstring length");
    const double sign = bits[static_cast<std::size_t>(q)] == '1' ? -1.0 : 1.0;
    w *= (sign - cal.p_minus(q)) / (1.0 - cal.p_plus(q));
  }
  return w;
}

}  // namespace

double corrected_expectation(const PauliTerm& term, const CountsHistogram& counts,
                             const ReadoutCal& cal) {
  if (counts.shots <= 0 || counts.counts.empty())
    throw std::invalid_argument("corrected_expectation: empty histogram");
  cal.validate();
  double acc = 0.0;
  for (const auto& [bits, c] : counts.counts)
    acc += corrected_weight(term, bits, cal) * static_cast<double>(c);
  return acc / static_cast<double>(counts.shots);
}

TermEvaluator corrected_term_evaluator(const ReadoutCal& cal) {
  return [cal](const PauliTerm& term, const CountsHistogram& counts) {
    double acc = 0.0, acc2 = 0.0;
    for (const auto& [bits, c] : counts.counts) {
      const double w = corrected_weight(term, bits, cal);
      acc += w * static_cast<double>(c);
      acc2 += w * w * static_cast<double>(c);
    }
    const double n = static_cast<double>(counts.shots);
    const double mean = acc / n;
    const double var = std::max(0.0, acc2 / n - mean * mean) / n;
    return std::make_pair(mean, std::sqrt(var));
  };
}

std::string ExtrapolationFit::to_json() const {
  nlohmann::ordered_json j;
  j["order"] = order;
  j["intercept"] = intercept;
  j["intercept_sigma"] = intercept_sigma;
  j["coefficients"] = coefficients;
  nlohmann::ordered_json pts = nlohmann::ordered_json::array();
  for (const auto& p : points)
    pts.push_back({{"r", p.r}, {"energy", p.energy}, {"sigma", p.sigma}});
  j["points"] = pts;
  return j.dump();
}

ExtrapolationFit richardson_extrapolate(const std::vector<ExtrapolationPoint>& points,
                                        int order) {
  if (order < 1 || order > 2) throw std::invalid_argument("richardson_extrapolate: order must be 1 or 2");
  const int n = static_cast<int>(points.size());
  if (n < order + 1)
    throw std::invalid_argument("richardson_extrapolate: need at least order+1 points");
  for (int i = 0; i < n; ++i) {
    if (points[static_cast<std::size_t>(i)].sigma <= 0.0)
      throw std::invalid_argument("richardson_extrapolate: sigmas must be positive");
    for (int j = i + 1; j < n; ++j)
      if (points[static_cast<std::size_t>(i)].r == points[static_cast<std::size_t>(j)].r)
        throw std::invalid_argument("richardson_extrapolate: duplicate r values");
  }

  const int k = order + 1;
  Eigen::MatrixXd a(n, k);
  Eigen::VectorXd y(n);
  Eigen::VectorXd w(n);
  for (int i = 0; i < n; ++i) {
    const auto& p = points[static_cast<std::size_t>(i)];
    double pw = 1.0;
    for (int j = 0; j < k; ++j) {
      a(i, j) = pw;
      pw *= static_cast<double>(p.r);
    }
    y(i) = p.energy;
    w(i) = 1.0 / (p.sigma * p.sigma);
  }
  const Eigen::MatrixXd ata = a.transpose() * w.asDiagonal() * a;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(ata);
  if (!lu.isInvertible())
    throw std::invalid_argument("richardson_extrapolate: degenerate design matrix");
  const Eigen::MatrixXd cov = lu.inverse();
  const Eigen::VectorXd coeff = cov * (a.transpose() * w.asDiagonal() * y);

  ExtrapolationFit fit;
  fit.points = points;
  fit.order = order;
  fit.coefficients.assign(coeff.data(), coeff.data() + k);
  fit.intercept = coeff(0);
  fit.intercept_sigma = std::sqrt(std::max(0.0, cov(0, 0)));
  return fit;
}

Eigen::MatrixXcd mcweeny_step(const Eigen::MatrixXcd& p) {
  const Eigen::MatrixXcd p2 = p * p;
  return 3.0 * p2 - 2.0 * (p2 * p);
}

PurifyResult mcweeny_purify(const RDM2& rdm, double tol, int max_iter) {
  if (tol <= 0.0) throw std::invalid_argument("mcweeny_purify: tol must be positive");
  if (rdm.n_electrons != 2)
    throw std::invalid_argument(
        "mcweeny_purify: pair normalization is only defined for 2 electrons (got " +
        std::to_string(rdm.n_electrons) + ")");

  Eigen::MatrixXcd p = rdm.pair_matrix();
  if ((p - p.adjoint()).cwiseAbs().maxCoeff() > 1e-8)
    throw std::invalid_argument("mcweeny_purify: pair matrix is not Hermitian");
  p = (p + Eigen::MatrixXcd(p.adjoint())) / 2.0;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(p);
  const double lead = es.eigenvalues().maxCoeff();
  if (lead <= 0.0)
    throw std::invalid_argument("mcweeny_purify: dominant eigenvalue is not positive");
  p /= lead;

  PurifyResult out;
  for (out.iterations = 0; out.iterations < max_iter; ++out.iterations) {
    const double residual = std::abs(((p * p).trace() - p.trace()).real());
    if (residual < tol) {
      out.converged = true;
      break;
    }
    p = mcweeny_step(p);
    p = (p + Eigen::MatrixXcd(p.adjoint())) / 2.0;
  }
  if (!out.converged)
    out.converged = std::abs(((p * p).trace() - p.trace()).real()) < tol;

  // pair count C(2,2) = 1
  const double tr = p.trace().real();
  if (std::abs(tr) > 1e-12) p /= tr;
  out.rdm = RDM2::from_pair_matrix(p, rdm.n_active, rdm.n_electrons);
  return out;
}

Eigen::MatrixXcd rdm1_from_rdm2(const RDM2& rdm) {
  if (rdm.n_electrons < 2)
    throw std::invalid_argument("rdm1_from_rdm2: need at least 2 electrons");
  const int n = rdm.n_active;
  Eigen::MatrixXcd one = Eigen::MatrixXcd::Zero(n, n);
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q) {
      std::complex<double> acc = 0.0;
      for (int r = 0; r < n; ++r) acc += rdm.at(p, r, q, r);
      one(p, q) = acc / static_cast<double>(rdm.n_electrons - 1);
    }
  return one;
}

double energy_from_rdm(const IntegralSet& ints, const RDM2& rdm) {
  if (ints.n_spin_orbitals != rdm.n_active)
    throw std::invalid_argument("energy_from_rdm: dimension mismatch");
  const int n = rdm.n_active;
  const Eigen::MatrixXcd one = rdm1_from_rdm2(rdm);
  std::complex<double> e = ints.e_nuclear;
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q) e += ints.h(p, q) * one(p, q);
  std::complex<double> e2 = 0.0;
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q)
      for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s) e2 += ints.g(p, q, s, r) * rdm.at(p, q, r, s);
  e += 0.5 * e2;
  return e.real();
}

}  // namespace qcb
