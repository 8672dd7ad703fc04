#include "qcbench/rdm.hpp"

#include <stdexcept>

#include <nlohmann/json.hpp>

namespace qcb {

RDM2 RDM2::zero(int n_active, int n_electrons) {
  RDM2 r;
  r.n_active = n_active;
  r.n_electrons = n_electrons;
  const auto n = static_cast<std::size_t>(n_active);
  r.t.assign(n * n * n * n, {0.0, 0.0});
  return r;
}

void RDM2::set_canonical(int p, int q, int r, int s, std::complex<double> v) {
  if (!(p < q && r < s)) throw std::invalid_argument("RDM2::set_canonical: indices not canonical");
  at(p, q, r, s) = v;
  at(q, p, r, s) = -v;
  at(p, q, s, r) = -v;
  at(q, p, s, r) = v;
}

std::vector<std::pair<int, int>> RDM2::pairs(int n_active) {
  std::vector<std::pair<int, int>> out;
  for (int p = 0; p < n_active; ++p)
    for (int q = p + 1; q < n_active; ++q) out.emplace_back(p, q);
  return out;
}

Eigen::MatrixXcd RDM2::pair_matrix() const {
  const auto pr = pairs(n_active);
  const auto k = static_cast<Eigen::Index>(pr.size());
  Eigen::MatrixXcd m(k, k);
  for (Eigen::Index a = 0; a < k; ++a)
    for (Eigen::Index b = 0; b < k; ++b)
      m(a, b) = at(pr[a].first, pr[a].second, pr[b].first, pr[b].second);
  return m;
}

std::string RDM2::to_json() const {
  nlohmann::ordered_json j;
  j["n_active"] = n_active;
  j["n_electrons"] = n_electrons;
  nlohmann::ordered_json entries = nlohmann::ordered_json::array();
  const auto pr = pairs(n_active);
  for (const auto& [p, q] : pr)
    for (const auto& [r, s] : pr) {
      const std::complex<double> v = at(p, q, r, s);
      if (std::abs(v) < 1e-14) continue;
      entries.push_back({{"p", p}, {"q", q}, {"r", r}, {"s", s},
                         {"re", v.real()}, {"im", v.imag()}});
    }
  j["elements"] = entries;
  return j.dump();
}

RDM2 RDM2::from_pair_matrix(const Eigen::MatrixXcd& m, int n_active, int n_electrons) {
  const auto pr = pairs(n_active);
  if (m.rows() != static_cast<Eigen::Index>(pr.size()) || m.cols() != m.rows())
    throw std::invalid_argument("RDM2::from_pair_matrix: dimension mismatch");
  RDM2 out = RDM2::zero(n_active, n_electrons);
  for (std::size_t a = 0; a < pr.size(); ++a)
    for (std::size_t b = 0; b < pr.size(); ++b)
      out.set_canonical(pr[a].first, pr[a].second, pr[b].first, pr[b].second,
                        m(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)));
  return out;
}

}  // namespace qcb
