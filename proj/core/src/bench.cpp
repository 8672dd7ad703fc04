#include "qcbench/bench.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

namespace qcb {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::string strip_quotes(const std::string& s) {
  std::string out;
  for (char c : s)
    if (c != '\'' && c != '"') out += c;
  return out;
}

bool parse_bool(const std::string& key, const std::string& raw) {
  std::string v = trim(raw);
  std::transform(v.begin(), v.end(), v.begin(), ::tolower);
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError("config: key '" + key + "' expects a boolean, got '" + raw + "'");
}

template <typename T>
std::vector<T> parse_list(const std::string& key, const std::string& raw) {
  std::string v = raw;
  std::replace(v.begin(), v.end(), '[', ' ');
  std::replace(v.begin(), v.end(), ']', ' ');
  std::replace(v.begin(), v.end(), ',', ' ');
  std::istringstream ss(v);
  std::vector<T> out;
  T x;
  while (ss >> x) out.push_back(x);
  if (!ss.eof()) throw ConfigError("config: malformed list for key '" + key + "'");
  return out;
}

// Raw (section, key, value) triples in file order.
struct IniEntries {
  std::vector<std::tuple<std::string, std::string, std::string>> entries;
  std::set<std::string> sections;
};

IniEntries read_ini(const std::filesystem::path& path, std::string* raw_text) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  *raw_text = buffer.str();

  IniEntries out;
  std::string section;
  std::string pending_key, pending_value;
  bool continuing = false;

  const auto open_ended = [](const std::string& value) {
    const auto quotes = std::count(value.begin(), value.end(), '\'');
    if (quotes % 2 == 1) return true;
    const auto opens = std::count(value.begin(), value.end(), '[');
    const auto closes = std::count(value.begin(), value.end(), ']');
    return opens > closes;
  };
  const auto flush = [&] {
    if (!pending_key.empty()) out.entries.emplace_back(section, pending_key, trim(pending_value));
    pending_key.clear();
    pending_value.clear();
    continuing = false;
  };

  std::istringstream lines(*raw_text);
  std::string line;
  int lineno = 0;
  while (std::getline(lines, line)) {
    ++lineno;
    if (continuing) {
      pending_value += "\n" + line;
      if (!open_ended(pending_value)) flush();
      continue;
    }
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#' || t[0] == ';') continue;
    if (t.front() == '[' && t.back() == ']') {
      section = trim(t.substr(1, t.size() - 2));
      out.sections.insert(section);
      continue;
    }
    const auto colon = t.find(':');
    if (colon == std::string::npos)
      throw ConfigError("config: " + path.string() + ":" + std::to_string(lineno) +
                        ": expected 'key: value'");
    pending_key = trim(t.substr(0, colon));
    pending_value = trim(t.substr(colon + 1));
    if (open_ended(pending_value))
      continuing = true;
    else
      flush();
  }
  flush();
  return out;
}

void resolve_accelerator(BenchmarkConfig& cfg) {
  std::string uri = cfg.accelerator;
  std::string query;
  if (const auto qm = uri.find('?'); qm != std::string::npos) {
    query = uri.substr(qm + 1);
    uri = uri.substr(0, qm);
  }
  if (uri == "sim:statevector") {
    cfg.density_backend = false;
  } else if (uri == "sim:density") {
    cfg.density_backend = true;
  } else {
    throw ConfigError("config: unsupported accelerator '" + cfg.accelerator +
                      "' (hardware backends are out of scope; use sim:statevector or "
                      "sim:density[?epsilon=..])");
  }
  std::istringstream qs(query);
  std::string kv;
  double p10 = 0.0, p01 = 0.0;
  while (std::getline(qs, kv, '&')) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw ConfigError("config: malformed accelerator query '" + kv + "'");
    const std::string key = kv.substr(0, eq);
    const double value = std::stod(kv.substr(eq + 1));
    if (key == "epsilon")
      cfg.noise.epsilon = value;
    else if (key == "p10")
      p10 = value;
    else if (key == "p01")
      p01 = value;
    else
      throw ConfigError("config: unknown accelerator parameter '" + key + "'");
  }
  if (p10 > 0.0 || p01 > 0.0) {
    // sized later, once the active space is known
    cfg.noise.readout.assign(1, {p10, p01});
  }
}

}  // namespace

std::string BenchmarkConfig::config_hash() const {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : raw_text) h = (h ^ c) * 1099511628211ull;
  h = mix_seed(h, seed);
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

void BenchmarkConfig::validate_for_run() const {
  if (algorithm != "vqe")
    throw ConfigError("config: unsupported algorithm '" + algorithm + "'");
  const std::set<std::string> ansaetze{"ucc-1", "ucc-3", "hwe", "uccsd-trotter"};
  if (!ansaetze.count(ansatz))
    throw ConfigError("config: unknown ansatz '" + ansatz + "'");
  const std::set<std::string> optimizers{"cobyla", "nelder-mead"};
  if (!optimizers.count(optimizer))
    throw ConfigError("config: unknown optimizer '" + optimizer + "'");
  try {
    mitigation.validate();
    noise.validate();
  } catch (const std::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  if (!density_backend && noise.epsilon > 0.0)
    throw ConfigError("config: epsilon requires the sim:density backend");
  if (integrals_path.empty())
    throw ConfigError("config: [Extensions] integrals path is required to run");
  if (z2_tapering && ansatz != "hwe")
    throw ConfigError("config: z2-tapering is only supported with the hwe ansatz");
  if (mitigation.rdm && z2_tapering)
    throw ConfigError("config: rdm purification needs the untapered orbital space");
  std::set<int> seen(frozen.begin(), frozen.end());
  for (int a : active)
    if (seen.count(a))
      throw ConfigError("config: orbital " + std::to_string(a) + " is both frozen and active");
  if (!(mode.empty() || mode == "sweep" || mode == "optimize"))
    throw ConfigError("config: mode must be sweep or optimize");
}

BenchmarkConfig parse_ini(const std::filesystem::path& path) {
  BenchmarkConfig cfg;
  const IniEntries ini = read_ini(path, &cfg.raw_text);

  if (!ini.sections.count("Molecule"))
    throw ConfigError("config: " + path.string() + ": missing required section [Molecule]");

  for (const auto& [section, key, value] : ini.entries) {
    const auto unknown = [&] {
      std::cerr << "warning: " << path.filename().string() << ": unknown key '" << key
                << "' in section [" << section << "] ignored\n";
    };
    if (section == "XACC") {
      if (key == "accelerator") cfg.accelerator = strip_quotes(value);
      else if (key == "algorithm") cfg.algorithm = value;
      else unknown();
    } else if (section == "Error Mitigation") {
      if (key == "readout-error") cfg.mitigation.readout = parse_bool(key, value);
      else if (key == "richardson-extrapolation") cfg.mitigation.extrapolation = parse_bool(key, value);
      else unknown();
    } else if (section == "VQE") {
      if (key == "optimizer") cfg.optimizer = value;
      else unknown();
    } else if (section == "Ansatz") {
      if (key == "name") cfg.ansatz = value;
      else unknown();
    } else if (section == "Molecule") {
      if (key == "basis") cfg.basis = value;
      else if (key == "geometry") cfg.geometry = strip_quotes(value);
      else if (key == "frozen-spin-orbitals") cfg.frozen = parse_list<int>(key, value);
      else if (key == "active-spin-orbitals") cfg.active = parse_list<int>(key, value);
      else unknown();
    } else if (section == "Extensions") {
      if (key == "integrals") cfg.integrals_path = strip_quotes(value);
      else if (key == "shots") cfg.shots = std::stol(value);
      else if (key == "calibration-shots") cfg.calibration_shots = std::stol(value);
      else if (key == "seed") cfg.seed = std::stoull(value);
      else if (key == "rdm-purification") cfg.mitigation.rdm = parse_bool(key, value);
      else if (key == "epsilon") cfg.noise.epsilon = std::stod(value);
      else if (key == "iterations") cfg.iterations = std::stoi(value);
      else if (key == "sweep-points") cfg.sweep_points = std::stoi(value);
      else if (key == "z2-tapering") cfg.z2_tapering = parse_bool(key, value);
      else if (key == "mode") cfg.mode = value;
      else if (key == "hwe-layers") cfg.hwe_layers = std::stoi(value);
      else if (key == "warm-start") cfg.warm_start = parse_list<double>(key, value);
      else if (key == "repeats-at-optimum") cfg.repeats_at_optimum = std::stoi(value);
      else if (key == "scan-repeats") cfg.scan_repeats = std::stoi(value);
      else if (key == "label") cfg.label = value;
      else if (key == "reference-energy") cfg.reference_energy = std::stod(value);
      else if (key == "readout-p10") {
        if (cfg.noise.readout.empty()) cfg.noise.readout.assign(1, {0.0, 0.0});
        cfg.noise.readout[0].first = std::stod(value);
      } else if (key == "readout-p01") {
        if (cfg.noise.readout.empty()) cfg.noise.readout.assign(1, {0.0, 0.0});
        cfg.noise.readout[0].second = std::stod(value);
      } else unknown();
    } else {
      std::cerr << "warning: " << path.filename().string() << ": unknown section [" << section
                << "] ignored\n";
    }
  }

  resolve_accelerator(cfg);
  if (cfg.ansatz.empty()) throw ConfigError("config: [Ansatz] name is required");
  return cfg;
}

namespace {

std::string molecule_label(const BenchmarkConfig& cfg) {
  if (!cfg.label.empty()) return cfg.label;
  if (!cfg.integrals_path.empty()) return cfg.integrals_path.stem().string();
  return "molecule";
}

bool looks_like_fcidump(const std::filesystem::path& path) {
  std::ifstream in(path);
  std::string first;
  std::getline(in, first);
  return first.find("&FCI") != std::string::npos;
}

struct Pipeline {
  IntegralSet reduced;
  PauliSum hamiltonian;  // possibly tapered; what the ansatz runs against
  PauliSum untapered;
  double fci = 0.0;
  int n_electrons = 0;
  bool tapered = false;
  AnsatzFactory factory;
  int n_params = 0;
  bool sweep_mode = false;
  NoiseModel noise;
};

std::string hf_occupation_string(int n_qubits, int n_electrons) {
  std::string bits(static_cast<std::size_t>(n_qubits), '0');
  const int n_up = (n_electrons + 1) / 2;
  const int n_down = n_electrons / 2;
  for (int i = 0; i < n_up; ++i) bits[static_cast<std::size_t>(i)] = '1';
  for (int i = 0; i < n_down; ++i) bits[static_cast<std::size_t>(n_qubits / 2 + i)] = '1';
  return bits;
}

Pipeline build_pipeline(const BenchmarkConfig& cfg) {
  Pipeline p;
  const IntegralSet full = looks_like_fcidump(cfg.integrals_path)
                               ? load_fcidump(cfg.integrals_path)
                               : load_integrals(cfg.integrals_path);

  if (cfg.active.empty() && cfg.frozen.empty()) {
    p.reduced = full;
  } else {
    ActiveSpaceSpec spec;
    spec.frozen = cfg.frozen;
    spec.active = cfg.active;
    if (spec.active.empty()) {
      const std::set<int> frozen(cfg.frozen.begin(), cfg.frozen.end());
      for (int i = 0; i < full.n_spin_orbitals; ++i)
        if (!frozen.count(i)) spec.active.push_back(i);
    }
    p.reduced = freeze_core(full, spec);
  }
  p.n_electrons = p.reduced.n_electrons;

  const FermionOp fop = build_fermion_hamiltonian(p.reduced);
  p.untapered = jordan_wigner(fop, p.reduced.n_spin_orbitals);
  p.fci = exact_ground_energy(p.untapered);
  p.hamiltonian = p.untapered;

  if (cfg.z2_tapering) {
    const TaperingResult taper =
        taper_z2(p.untapered, hf_occupation_string(p.untapered.n_qubits, p.n_electrons));
    if (taper.found) {
      p.hamiltonian = taper.reduced;
      p.tapered = true;
    } else {
      std::cerr << "warning: no Z2 symmetry found; running untapered\n";
    }
  }

  p.noise = cfg.noise;
  if (!p.noise.readout.empty())
    p.noise.readout.assign(static_cast<std::size_t>(p.hamiltonian.n_qubits),
                           cfg.noise.readout.front());

  const int nq = p.hamiltonian.n_qubits;
  const int ne = p.n_electrons;
  if (cfg.ansatz == "ucc-1") {
    if (nq != 4) throw std::runtime_error("pipeline: ucc-1 needs a 4-qubit active space");
    p.n_params = 1;
    p.factory = [ne](std::span<const double> th) {
      return hartree_fock_reference(4, ne).then(build_ucc1(th[0]));
    };
  } else if (cfg.ansatz == "ucc-3") {
    if (nq != 4) throw std::runtime_error("pipeline: ucc-3 needs a 4-qubit active space");
    p.n_params = 3;
    p.factory = [ne](std::span<const double> th) {
      return hartree_fock_reference(4, ne).then(build_ucc3(th[0], th[1], th[2]));
    };
  } else if (cfg.ansatz == "uccsd-trotter") {
    const auto pool = uccsd_generators(nq, ne);
    if (pool.empty()) throw std::runtime_error("pipeline: empty UCCSD excitation pool");
    p.n_params = static_cast<int>(pool.size());
    p.factory = [nq, ne, pool](std::span<const double> th) {
      Circuit c = hartree_fock_reference(nq, ne);
      for (std::size_t k = 0; k < pool.size(); ++k)
        c = c.then(trotter_circuit(pool[k].generator, th[k]));
      return c;
    };
  } else {  // hwe
    std::vector<std::pair<int, int>> chain;
    for (int q = 0; q + 1 < nq; ++q) chain.emplace_back(q, q + 1);
    const Circuit hwe = build_hwe(nq, cfg.hwe_layers, chain);
    p.n_params = static_cast<int>(hwe.parameters.size());
    p.factory = [hwe](std::span<const double> th) { return hwe.bound(th); };
  }

  p.sweep_mode = cfg.mode == "sweep" || (cfg.mode.empty() && p.n_params == 1);
  if (p.sweep_mode && p.n_params != 1)
    throw std::runtime_error("pipeline: sweep mode needs a 1-parameter ansatz");
  return p;
}

EnergyEstimate combine_repeats(const std::vector<EnergyEstimate>& reps) {
  EnergyEstimate out = reps.front();
  if (reps.size() == 1) return out;
  double sum = 0.0, var = 0.0;
  for (const auto& e : reps) {
    sum += e.value;
    var += e.stderr_ * e.stderr_;
  }
  const double n = static_cast<double>(reps.size());
  out.value = sum / n;
  out.stderr_ = std::sqrt(var) / n;
  out.shots = reps.front().shots * static_cast<long>(reps.size());
  return out;
}

}  // namespace

double fci_reference(const BenchmarkConfig& cfg) {
  cfg.validate_for_run();
  return build_pipeline(cfg).fci;
}

BenchReport run_benchmark(const BenchmarkConfig& cfg) {
  cfg.validate_for_run();
  const auto t_start = std::chrono::steady_clock::now();
  Pipeline p = [&] {
    try {
      return build_pipeline(cfg);
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception& e) {
      throw std::runtime_error(std::string("pipeline stage hamiltonian-setup: ") + e.what());
    }
  }();

  VqeOptions opts;
  opts.optimizer = p.sweep_mode ? VqeOptions::Optimizer::sweep : VqeOptions::Optimizer::dfo;
  opts.max_iter = cfg.iterations;
  opts.sweep_points = cfg.sweep_points;
  opts.shots = cfg.shots;
  opts.noise = p.noise;
  opts.flags = cfg.mitigation;
  opts.seed = cfg.seed;
  opts.initial = cfg.warm_start;
  opts.rdm_integrals = &p.reduced;
  opts.calibration_shots = cfg.calibration_shots >= 0 ? cfg.calibration_shots : cfg.shots;

  const VqeResult res = [&] {
    try {
      return vqe_run(p.hamiltonian, p.factory, p.n_params, opts);
    } catch (const std::exception& e) {
      throw std::runtime_error(std::string("pipeline stage vqe: ") + e.what());
    }
  }();

  BenchReport report;
  report.trace = res.trace;
  report.hamiltonian_text = p.untapered.to_text();
  if (p.sweep_mode)
    for (std::size_t i = 0; i + 1 < res.trace.entries.size(); ++i)
      report.sweep.push_back({res.trace.entries[i].theta[0], res.trace.entries[i].energy});

  BenchRow row;
  row.molecule = molecule_label(cfg);
  row.ansatz = cfg.ansatz;
  row.z2_tapering = p.tapered;
  row.backend = cfg.accelerator;
  row.em = cfg.mitigation.label();
  row.fci = p.fci;
  row.shots = cfg.shots;
  row.seed = cfg.seed;
  row.config_hash = cfg.config_hash();
  row.energy = res.final_energy.value;
  row.stderr_ = res.final_energy.stderr_;

  if (cfg.mitigation.extrapolation) {
    // Re-measure at the optimum for r in {1,3,5}, repeats_at_optimum times
    // each, then fit both polynomial orders.
    const Circuit at_opt = p.factory(res.best_theta);
    ReadoutCal cal = opts.calibration_shots > 0
                         ? calibrate_readout(p.hamiltonian.n_qubits, opts.calibration_shots,
                                             p.noise, mix_seed(cfg.seed, 0xCA11))
                         : ReadoutCal::from_model(p.noise, p.hamiltonian.n_qubits);
    std::vector<ExtrapolationPoint> pts;
    for (int r : {1, 3, 5}) {
      std::vector<EnergyEstimate> reps;
      for (int rep = 0; rep < std::max(1, cfg.repeats_at_optimum); ++rep) {
        const std::uint64_t s = mix_seed(cfg.seed, 0xF170000ull + 16ull * r + rep);
        reps.push_back(measure_pauli_sum(
            insert_cnot_pairs(at_opt, r), p.hamiltonian, cfg.shots, p.noise, s,
            cfg.shots > 0 ? corrected_term_evaluator(cal) : TermEvaluator{}));
      }
      const EnergyEstimate combined = combine_repeats(reps);
      pts.push_back({r, combined.value, combined.stderr_ > 0.0 ? combined.stderr_ : 1.0});
    }
    const ExtrapolationFit lin = richardson_extrapolate(pts, 1);
    const ExtrapolationFit quad = richardson_extrapolate(pts, 2);
    report.fits = {lin, quad};
    row.linear_intercept = lin.intercept;
    row.linear_sigma = lin.intercept_sigma;
    row.quadratic_intercept = quad.intercept;
    row.quadratic_sigma = quad.intercept_sigma;
    row.energy = quad.intercept;
    row.stderr_ = cfg.shots > 0 ? quad.intercept_sigma : 0.0;
  }

  row.accuracy = std::abs(row.energy - row.fci);
  row.chemical_accuracy = row.accuracy < kChemicalAccuracy;
  row.reference_energy = cfg.reference_energy;
  if (cfg.reference_energy) row.reference_delta = row.energy - *cfg.reference_energy;
  row.runtime_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
  report.rows.push_back(std::move(row));
  return report;
}

std::vector<ScanPoint> parse_scan_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("scan: cannot open manifest " + path.string());
  std::vector<ScanPoint> points;
  std::string line;
  while (std::getline(in, line)) {
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    std::istringstream ss(t);
    ScanPoint pt;
    std::string file;
    if (!(ss >> pt.label >> file))
      throw ConfigError("scan: manifest lines must be '<label> <integral-file>'");
    pt.integrals = file;
    points.push_back(std::move(pt));
  }
  if (points.empty()) throw ConfigError("scan: manifest lists no points");
  return points;
}

BenchReport dissociation_scan(const BenchmarkConfig& cfg, const std::vector<ScanPoint>& points) {
  cfg.validate_for_run();
  const int repeats = std::max(1, cfg.scan_repeats);

  // Points are independent pure computations; run them in a worker pool and
  // merge in manifest order.
  const auto run_point = [&](std::size_t i) -> BenchRow {
    BenchmarkConfig pt_cfg = cfg;
    pt_cfg.integrals_path = points[i].integrals;
    try {
      std::vector<double> energies;
      BenchRow row;
      for (int rep = 0; rep < repeats; ++rep) {
        pt_cfg.seed = mix_seed(cfg.seed, 1000 * i + static_cast<std::size_t>(rep));
        const BenchReport one = run_benchmark(pt_cfg);
        energies.push_back(one.rows.front().energy);
        row = one.rows.front();
      }
      double mean = 0.0;
      for (double e : energies) mean += e;
      mean /= static_cast<double>(energies.size());
      double sigma = 0.0;
      if (energies.size() > 1) {
        double ss = 0.0;
        for (double e : energies) ss += (e - mean) * (e - mean);
        sigma = std::sqrt(ss / (static_cast<double>(energies.size()) *
                                (static_cast<double>(energies.size()) - 1.0)));
      }
      row.r_label = points[i].label;
      row.energy = mean;
      row.stderr_ = sigma;
      row.accuracy = std::abs(mean - row.fci);
      row.chemical_accuracy = row.accuracy < kChemicalAccuracy;
      row.seed = cfg.seed;
      row.config_hash = cfg.config_hash();
      return row;
    } catch (const std::exception& e) {
      BenchRow failed;
      failed.molecule = molecule_label(cfg);
      failed.ansatz = cfg.ansatz;
      failed.backend = cfg.accelerator;
      failed.em = cfg.mitigation.label();
      failed.r_label = points[i].label;
      failed.seed = cfg.seed;
      failed.config_hash = cfg.config_hash();
      failed.error = e.what();
      return failed;
    }
  };

  std::vector<std::future<BenchRow>> futures;
  futures.reserve(points.size());
  for (std::size_t i = 0; i < points.size(); ++i)
    futures.push_back(std::async(std::launch::async, run_point, i));

  BenchReport report;
  for (auto& f : futures) {
    BenchRow row = f.get();
    if (row.error.empty())
      report.curve.push_back({row.r_label, row.energy, row.stderr_, row.fci});
    report.rows.push_back(std::move(row));
  }
  return report;
}

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string fmt_opt(const std::optional<double>& v) { return v ? fmt(*v) : ""; }

nlohmann::ordered_json row_json(const BenchRow& r) {
  nlohmann::ordered_json j;
  j["molecule"] = r.molecule;
  j["ansatz"] = r.ansatz;
  j["z2_tapering"] = r.z2_tapering;
  j["backend"] = r.backend;
  j["em"] = r.em;
  j["energy"] = r.energy;
  j["stderr"] = r.stderr_;
  j["fci"] = r.fci;
  j["accuracy"] = r.accuracy;
  j["chemical_accuracy"] = r.chemical_accuracy;
  if (r.reference_energy) {
    j["reference_energy"] = *r.reference_energy;
    j["reference_delta"] = *r.reference_delta;
  }
  if (r.linear_intercept) {
    j["linear_intercept"] = *r.linear_intercept;
    j["linear_sigma"] = *r.linear_sigma;
    j["quadratic_intercept"] = *r.quadratic_intercept;
    j["quadratic_sigma"] = *r.quadratic_sigma;
  }
  if (!r.r_label.empty()) j["r"] = r.r_label;
  if (!r.error.empty()) j["error"] = r.error;
  j["shots"] = r.shots;
  j["seed"] = r.seed;
  j["config_hash"] = r.config_hash;
  return j;
}

constexpr const char* kCsvHeader =
    "molecule,ansatz,z2_tapering,backend,em,energy,stderr,fci,accuracy,chemical_accuracy,"
    "reference_energy,reference_delta,linear_intercept,linear_sigma,quadratic_intercept,"
    "quadratic_sigma,r,shots,seed,config_hash,error";

std::string row_csv(const BenchRow& r) {
  std::ostringstream ss;
  ss << r.molecule << ',' << r.ansatz << ',' << (r.z2_tapering ? "yes" : "no") << ','
     << r.backend << ',' << r.em << ',' << fmt(r.energy) << ',' << fmt(r.stderr_) << ','
     << fmt(r.fci) << ',' << fmt(r.accuracy) << ',' << (r.chemical_accuracy ? "PASS" : "FAIL")
     << ',' << fmt_opt(r.reference_energy) << ',' << fmt_opt(r.reference_delta) << ','
     << fmt_opt(r.linear_intercept) << ',' << fmt_opt(r.linear_sigma) << ','
     << fmt_opt(r.quadratic_intercept) << ',' << fmt_opt(r.quadratic_sigma) << ',' << r.r_label
     << ',' << r.shots << ',' << r.seed << ',' << r.config_hash << ',' << r.error;
  return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& contents,
                std::vector<std::filesystem::path>& written) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("emit_report: cannot write " + path.string());
  out << contents;
  written.push_back(path);
}

}  // namespace

std::vector<std::filesystem::path> emit_report(const BenchReport& report,
                                               const std::filesystem::path& out_dir,
                                               const std::vector<ReportFormat>& formats) {
  std::filesystem::create_directories(out_dir);
  std::vector<std::filesystem::path> written;

  for (const ReportFormat f : formats) {
    if (f == ReportFormat::json) {
      nlohmann::ordered_json j;
      j["rows"] = nlohmann::ordered_json::array();
      for (const auto& r : report.rows) j["rows"].push_back(row_json(r));
      if (!report.curve.empty()) {
        j["curve"] = nlohmann::ordered_json::array();
        for (const auto& c : report.curve)
          j["curve"].push_back(
              {{"r", c.r_label}, {"energy", c.energy}, {"sigma", c.sigma}, {"fci", c.fci}});
      }
      if (!report.fits.empty()) {
        j["extrapolation"] = nlohmann::ordered_json::array();
        for (const auto& fit : report.fits)
          j["extrapolation"].push_back(nlohmann::ordered_json::parse(fit.to_json()));
      }
      write_file(out_dir / "report.json", j.dump(2) + "\n", written);
    } else if (f == ReportFormat::csv) {
      std::ostringstream ss;
      ss << kCsvHeader << "\n";
      for (const auto& r : report.rows) ss << row_csv(r) << "\n";
      write_file(out_dir / "report.csv", ss.str(), written);
    } else {
      std::ostringstream ss;
      ss << "molecule | ansatz | Z2 | backend | EM | E | stderr | E_FCI | |E-E_FCI| | verdict\n";
      for (const auto& r : report.rows) {
        ss << r.molecule << " | " << r.ansatz << " | " << (r.z2_tapering ? "yes" : "no") << " | "
           << r.backend << " | " << r.em << " | " << fmt(r.energy) << " | " << fmt(r.stderr_)
           << " | " << fmt(r.fci) << " | " << fmt(r.accuracy) << " | "
           << (r.chemical_accuracy ? "PASS" : "FAIL") << "\n";
      }
      write_file(out_dir / "report.txt", ss.str(), written);
    }
  }

  if (!report.sweep.empty()) {
    std::ostringstream ss;
    ss << "theta,energy,stderr\n";
    for (const auto& s : report.sweep)
      ss << fmt(s.theta) << ',' << fmt(s.energy.value) << ',' << fmt(s.energy.stderr_) << "\n";
    write_file(out_dir / "sweep.csv", ss.str(), written);
  }
  if (!report.trace.entries.empty())
    write_file(out_dir / "trace.jsonl", report.trace.to_json_lines(), written);
  if (!report.fits.empty()) {
    std::ostringstream ss;
    ss << "order,r,energy,sigma,intercept,intercept_sigma\n";
    for (const auto& fit : report.fits)
      for (const auto& pt : fit.points)
        ss << fit.order << ',' << pt.r << ',' << fmt(pt.energy) << ',' << fmt(pt.sigma) << ','
           << fmt(fit.intercept) << ',' << fmt(fit.intercept_sigma) << "\n";
    write_file(out_dir / "extrapolation.csv", ss.str(), written);
  }
  if (!report.curve.empty()) {
    std::ostringstream ss;
    ss << "r,energy,sigma,fci\n";
    for (const auto& c : report.curve)
      ss << c.r_label << ',' << fmt(c.energy) << ',' << fmt(c.sigma) << ',' << fmt(c.fci) << "\n";
    write_file(out_dir / "curve.csv", ss.str(), written);
  }
  if (!report.hamiltonian_text.empty())
    write_file(out_dir / "hamiltonian.txt", report.hamiltonian_text, written);
  return written;
}

std::string format_console_table(const BenchReport& report) {
  std::ostringstream ss;
  for (const auto& r : report.rows) {
    ss << r.molecule << "  " << r.ansatz << "  taper=" << (r.z2_tapering ? "yes" : "no") << "  "
       << r.backend << "  em=" << r.em;
    if (!r.r_label.empty()) ss << "  R=" << r.r_label;
    if (!r.error.empty()) {
      ss << "  ERROR: " << r.error << "\n";
      continue;
    }
    ss << "  E=" << fmt(r.energy);
    if (r.stderr_ > 0.0) ss << " +- " << fmt(r.stderr_);
    ss << "  FCI=" << fmt(r.fci) << "  |dE|=" << fmt(r.accuracy) << "  "
       << (r.chemical_accuracy ? "PASS" : "FAIL") << "  (" << fmt(r.runtime_seconds) << " s)\n";
  }
  return ss.str();
}

}  // namespace qcb
