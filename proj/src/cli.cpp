// Copyright 2026 The dualkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dualkit/cli.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include <CLI11.hpp>

#include "dualkit/circuit_sim.hpp"
#include "dualkit/haar_mc.hpp"
#include "dualkit/invariants.hpp"
#include "dualkit/io.hpp"
#include "dualkit/qubit_exact.hpp"

namespace dualkit {

namespace {

struct Context {
  explicit Context(CliStreams& s) : io(s) {}
  CliStreams& io;
  std::uint64_t seed = 0;
  int workers = 1;
  RunManifest manifest;
  Json inputs = Json::object();
};

std::string read_input(Context& c, const std::string& path) {
  std::string text;
  if (path == "-")
    text.assign(std::istreambuf_iterator<char>(*c.io.in), std::istreambuf_iterator<char>());
  else
    text = read_text(path);
  c.inputs[path] = sha256_hex(text);
  return text;
}

void emit(Context& c, const std::string& path, const std::string& bytes) {
  c.io.outputs[path] = bytes;
  c.manifest.digests[path] = sha256_hex(bytes);
  if (c.io.capture) return;
  if (path == "-") {
    *c.io.out << bytes;
    c.io.out->flush();
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorKind::Usage, "cannot write " + path);
  f << bytes;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Gate load_gate(Context& c, const std::string& path) {
  return gate_from_json(parse_json(read_input(c, path)));
}

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error(ErrorKind::Usage, "expected a comma-separated integer list, got '" + s + "'");
    }
  }
  return out;
}

std::vector<double> parse_grid(const std::string& s) {
  double a = 0, b = 0;
  int n = 0;
  char c1 = 0, c2 = 0;
  std::stringstream ss(s);
  if (!(ss >> a >> c1 >> b >> c2 >> n) || c1 != ':' || c2 != ':' || n < 1)
    throw Error(ErrorKind::Usage, "grid must look like start:stop:count");
  std::vector<double> g;
  for (int k = 0; k < n; ++k) g.push_back(n == 1 ? a : a + (b - a) * k / (n - 1));
  return g;
}

CMat local_from_json(const Json& j, int q) {
  if (!j.is_object() || !j.contains("re") || !j.contains("im"))
    throw Error(ErrorKind::Usage, "local JSON needs re/im arrays");
  CMat u(q, q);
  try {
    for (int r = 0; r < q; ++r)
      for (int c = 0; c < q; ++c) u(r, c) = cplx(j["re"].at(r).at(c).get<double>(),
                                                 j["im"].at(r).at(c).get<double>());
  } catch (const nlohmann::json::exception&) {
    throw Error(ErrorKind::Usage, "local JSON must hold q x q numeric arrays");
  }
  if (unitarity_defect(u) > kUnitarityTol) throw Error(ErrorKind::Validation, "local is not unitary");
  return u;
}

std::vector<int> one_indexed_map(const std::string& s, int q) {
  auto m = parse_int_list(s);
  if (static_cast<int>(m.size()) != q * q)
    throw Error(ErrorKind::Usage, "permutation map must list q^2 entries");
  for (auto& v : m) {
    if (v < 1 || v > q * q) throw Error(ErrorKind::Usage, "permutation map entries lie in 1..q^2");
    --v;
  }
  return m;
}

Gate permutation_matrix_gate(int q, const std::vector<int>& map) {
  return permutation_gate(permutation_spec_from_map(q, map));
}

// ------------------------------------------------------------------ gate --

struct MakeArgs {
  std::string family, output = "-", side = "ds", mult, map, spec, name, stop = "gap";
  int q = 3, max_iter = 10000;
  double J = 0.0, eps = 1.0, b = 1.0, tol = 1e-10;
  bool latin = false, enphase = false, dress = false;
};

Gate make_gate(Context& c, const MakeArgs& a) {
  const Stream root(c.seed, "cli/gate-make/" + a.family);
  Gate g;
  if (a.family == "block") {
    auto mult = a.mult.empty() ? std::vector<int>(a.q, 1) : parse_int_list(a.mult);
    if (a.side != "ds" && a.side != "sd") throw Error(ErrorKind::Usage, "--side is ds or sd");
    g = block_diagonal_gate(
        random_block_spec(a.q, mult, root, a.side == "ds" ? BlockSide::DS : BlockSide::SD));
  } else if (a.family == "diag") {
    g = diagonal_dual_sample(a.q, a.eps, root);
  } else if (a.family == "perm") {
    PermutationSpec spec;
    if (!a.spec.empty())
      spec = permutation_from_json(parse_json(read_input(c, a.spec)));
    else if (a.latin)
      spec = orthogonal_latin_square_spec(a.q);
    else if (!a.map.empty())
      spec = permutation_spec_from_map(a.q, one_indexed_map(a.map, a.q));
    else
      throw Error(ErrorKind::Usage, "perm needs --spec, --latin or --map");
    if (a.enphase) {
      std::mt19937_64 eng = root.child("phases").engine();
      std::uniform_real_distribution<double> phase(0.0, 2.0 * 3.141592653589793);
      std::vector<std::vector<double>> th(spec.q, std::vector<double>(spec.q));
      for (auto& row : th)
        for (auto& v : row) v = phase(eng);
      spec = enphase(spec, th);
    }
    g = permutation_gate(spec);
  } else if (a.family == "cat") {
    g = a.b == 1.0 ? cat_map(a.q) : cat_family(a.q, a.b);
  } else if (a.family == "cartan") {
    g = cartan_gate(a.J);
  } else if (a.family == "mr" || a.family == "mrt") {
    Gate u0;
    if (!a.map.empty())
      u0 = permutation_matrix_gate(a.q, one_indexed_map(a.map, a.q));
    else if (a.family == "mrt" && a.q == 3)
      u0 = permutation_matrix_gate(3, mrt_permutation_seed());
    else
      u0 = Gate(a.q, sample_haar(a.q * a.q, root.child("seed-gate")));
    if (a.stop != "gap" && a.stop != "defect")
      throw Error(ErrorKind::Usage, "--stop is gap or defect");
    const MRStop stop = a.stop == "gap" ? MRStop::EntanglementGap : MRStop::DualDefect;
    const MRResult r = a.family == "mr" ? mr_iterate(u0, a.max_iter, a.tol, stop)
                                        : mrt_iterate(u0, a.max_iter, a.tol, stop);
    if (!r.trace.converged)
      throw Error(ErrorKind::NonConvergence,
                  a.family + " did not converge within " + std::to_string(a.max_iter) +
                      " iterations");
    g = r.gate;
  } else if (a.family == "fixture") {
    g = fixture(a.name);
  } else {
    throw Error(ErrorKind::Usage, "unknown family '" + a.family + "'");
  }
  if (a.dress) {
    const Stream d = root.child("dress");
    g = sandwich_locals(g, sample_haar(g.q, d.at(0)), sample_haar(g.q, d.at(1)),
                        sample_haar(g.q, d.at(2)), sample_haar(g.q, d.at(3)));
  }
  return g;
}

Json classify_json(const Gate& g) {
  const InvariantReport r = invariant_report(g);
  Json j;
  j["q"] = g.q;
  j["e_p"] = r.e_p;
  j["E_U"] = r.E_U;
  j["E_US"] = r.E_US;
  j["gamma"] = r.schmidt.gamma;
  j["duality"] = {{"dual", r.duality.is_dual},
                  {"t_dual", r.duality.is_t_dual},
                  {"two_unitary", r.duality.is_2unitary},
                  {"residuals",
                   {{"unitarity", r.duality.unitarity_residual},
                    {"dual", r.duality.dual_residual},
                    {"t_dual", r.duality.t_dual_residual}}}};
  j["threshold"] = {{"first_certified_mode", r.threshold.first_certified_mode},
                    {"boundary", r.threshold.boundary}};
  if (r.duality.is_dual) {
    const auto plus = channel_spectrum(build_m_plus(g));
    const auto minus = channel_spectrum(build_m_minus(g));
    j["ergodic_class"] = to_string(classify_ergodicity(plus, minus).cls);
    j["lambda1_plus"] = plus.spectral_radius();
    j["lambda1_minus"] = minus.spectral_radius();
  } else {
    j["ergodic_class"] = nullptr;
  }
  return j;
}

// --------------------------------------------------------------- circuit --

struct CircuitJob {
  CircuitConfig cfg;
  int t_max = 0;
  bool two_site = false;
};

CircuitJob parse_circuit(const Json& j) {
  CircuitJob job;
  try {
    job.cfg.q = j.at("q").get<int>();
    job.cfg.L = j.at("L").get<int>();
    if (j.contains("gate"))
      job.cfg.gate = gate_from_json(j["gate"]);
    else if (j.contains("fixture"))
      job.cfg.gate = fixture(j["fixture"].get<std::string>());
    else if (j.contains("cat"))
      job.cfg.gate = cat_map(j["cat"].get<int>());
    else if (j.contains("cartan"))
      job.cfg.gate = cartan_gate(j["cartan"].get<double>());
    else
      throw Error(ErrorKind::Usage, "circuit config needs one of gate, fixture, cat, cartan");
    job.t_max = j.value("t_max", job.cfg.L / 2);
    job.cfg.allow_beyond_window = j.value("allow_beyond_window", false);
    job.two_site = j.value("two_site", false);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Usage, std::string("circuit config: ") + e.what());
  }
  if (job.cfg.gate.q != job.cfg.q) throw Error(ErrorKind::Usage, "circuit config: gate q mismatch");
  return job;
}

// ------------------------------------------------------------------ main --

int dispatch(const std::vector<std::string>& args, Context& c);

int replay(Context& c, const std::string& path) {
  const RunManifest m = RunManifest::from_json(parse_json(read_input(c, path)));
  std::vector<std::string> args = {"--seed", std::to_string(m.seed)};
  if (m.flags.contains("workers")) {
    args.push_back("--workers");
    args.push_back(std::to_string(m.flags["workers"].get<int>()));
  }
  args.insert(args.end(), m.argv.begin(), m.argv.end());
  std::ostringstream sink;
  CliStreams inner{c.io.in, &sink, c.io.err, true, {}};
  const int status = run_cli(args, inner);
  Json rep;
  rep["exit_code"] = status;
  bool same = status == 0;
  Json outs = Json::array();
  for (const auto& [p, digest] : m.digests) {
    const auto it = inner.outputs.find(p);
    const std::string got = it == inner.outputs.end() ? "" : sha256_hex(it->second);
    same = same && got == digest;
    outs.push_back({{"path", p}, {"recorded", digest}, {"replayed", got}});
  }
  rep["reproduced"] = same;
  rep["outputs"] = outs;
  emit(c, "-", dump(rep));
  return same ? 0 : static_cast<int>(ErrorKind::Validation);
}

int dispatch(const std::vector<std::string>& args, Context& c) {
  CLI::App app{"dualkit: dual-unitary circuit toolkit"};
  app.fallthrough();
  app.require_subcommand(1);
  std::string manifest_path;
  app.add_option("--seed", c.seed, "Root seed for all randomness")
      ->envname("DUALKIT_SEED")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.add_option("--workers", c.workers, "Worker threads for sampling")
      ->envname("DUALKIT_WORKERS")
      ->check(CLI::PositiveNumber)
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.add_option("--manifest", manifest_path, "Where to write the run manifest");

  // gate
  auto* gate = app.add_subcommand("gate", "Build and classify gates")->require_subcommand(1);
  MakeArgs mk;
  auto* make = gate->add_subcommand("make", "Build a gate from a family");
  make->add_option("family", mk.family, "block|diag|perm|cat|cartan|mr|mrt|fixture")->required();
  make->add_option("-q", mk.q, "Local dimension");
  make->add_option("--J", mk.J, "Cartan coupling");
  make->add_option("--eps", mk.eps, "Diagonal-phase spread");
  make->add_option("--b", mk.b, "Cat-map family parameter");
  make->add_option("--mult", mk.mult, "Block multiplicities, e.g. 1,2");
  make->add_option("--side", mk.side, "Block side: ds or sd");
  make->add_option("--map", mk.map, "1-indexed permutation of the q^2 basis states");
  make->add_option("--spec", mk.spec, "Permutation (K, L) JSON");
  make->add_flag("--latin", mk.latin, "Orthogonal Latin-square permutation");
  make->add_flag("--enphase", mk.enphase, "Random phases on a permutation");
  make->add_option("--name", mk.name, "Fixture name");
  make->add_option("--max-iter", mk.max_iter, "MR/MRT iteration cap");
  make->add_option("--tol", mk.tol, "MR/MRT stopping tolerance");
  make->add_option("--stop", mk.stop, "MR/MRT stopping rule: gap (entanglement gap) or defect");
  make->add_flag("--dress", mk.dress, "Apply random local unitaries");
  make->add_option("-o,--output", mk.output, "Output gate JSON");
  std::string classify_in;
  auto* classify = gate->add_subcommand("classify", "Invariants and duality report");
  classify->add_option("gate", classify_in, "Gate JSON or -")->required();

  // channel
  auto* channel = app.add_subcommand("channel", "Correlation channels")->require_subcommand(1);
  std::string spec_in, spec_side = "plus", spec_locals, spec_out = "-";
  auto* spectrum = channel->add_subcommand("spectrum", "Nontrivial channel spectrum as CSV");
  spectrum->add_option("gate", spec_in, "Gate JSON or -")->required();
  spectrum->add_option("--side", spec_side, "plus or minus");
  spectrum->add_option("--locals", spec_locals, "Seed or JSON file for a dressing local u");
  spectrum->add_option("-o,--output", spec_out, "Output CSV");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Monte-Carlo sweeps")->require_subcommand(1);
  std::string haar_in, haar_out = "-";
  std::size_t haar_n = 10000;
  int haar_refine = 200;
  auto* haar = sweep->add_subcommand("haar", "Local-unitary averages for one gate");
  haar->add_option("gate", haar_in, "Gate JSON or -")->required();
  haar->add_option("-N", haar_n, "Samples");
  haar->add_option("--refine", haar_refine, "Hill-climb steps for the maximal rate");
  haar->add_option("-o,--output", haar_out, "Output CSV");
  std::string fam_name, fam_grid = "0:1:11", fam_out = "-";
  std::size_t fam_n = 2000;
  int fam_q = 3, fam_count = 20;
  auto* family = sweep->add_subcommand("family", "Rate scans over a gate family");
  family->add_option("family", fam_name, "cartan|diag|cat|dual-cue")->required();
  family->add_option("--grid", fam_grid, "start:stop:count");
  family->add_option("-q", fam_q, "Local dimension");
  family->add_option("-N", fam_n, "Samples per grid point");
  family->add_option("--count", fam_count, "Gates for dual-cue");
  family->add_option("-o,--output", fam_out, "Output CSV");

  // circuit
  auto* circuit = app.add_subcommand("circuit", "Brute-force circuit checks")->require_subcommand(1);
  std::string corr_in, corr_out = "-", verify_in;
  auto* corr = circuit->add_subcommand("corr", "Single-site correlation grid");
  corr->add_option("config", corr_in, "Circuit config JSON")->required();
  corr->add_option("-o,--output", corr_out, "Output CSV");
  auto* verify = circuit->add_subcommand("verify", "Circuit-versus-channel residuals");
  verify->add_option("config", verify_in, "Circuit config JSON")->required();

  // oracle
  auto* oracle = app.add_subcommand("oracle", "Independent numerical oracles")->require_subcommand(1);
  int hi_q = 2, ri_q = 2, ri_count = 10;
  std::size_t hi_n = 100000;
  auto* haar_id = oracle->add_subcommand("haar-identity", "Haar monomial identity by MC");
  haar_id->add_option("-q", hi_q, "Local dimension");
  haar_id->add_option("-N", hi_n, "Samples");
  auto* reshuffle = oracle->add_subcommand("reshuffle-identities", "Reshuffle algebra residuals");
  reshuffle->add_option("-q", ri_q, "Local dimension");
  reshuffle->add_option("--count", ri_count, "Random matrices");

  // perm
  auto* perm = app.add_subcommand("perm", "Permutation gates")->require_subcommand(1);
  int enum_q = 3;
  std::string enum_out = "-";
  auto* enumerate = perm->add_subcommand("enumerate", "Scan all permutation gates");
  enumerate->add_option("-q", enum_q, "Local dimension (2 or 3)");
  enumerate->add_option("-o,--output", enum_out, "Output CSV");

  // manifest
  auto* manifest = app.add_subcommand("manifest", "Run manifests")->require_subcommand(1);
  std::string replay_in;
  auto* replay_cmd = manifest->add_subcommand("replay", "Re-run a manifest and compare digests");
  replay_cmd->add_option("manifest", replay_in, "Manifest JSON")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, *c.io.out, *c.io.err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, *c.io.out, *c.io.err);
  } catch (const CLI::ParseError& e) {
    throw Error(ErrorKind::Usage, e.what());
  }

  const auto start = std::chrono::steady_clock::now();
  CLI::App* leaf = nullptr;
  int status = 0;
  const SamplingOptions sampling{c.workers, false, {}};

  if (make->parsed()) {
    leaf = make;
    emit(c, mk.output, dump(gate_to_json(make_gate(c, mk))));
  } else if (classify->parsed()) {
    leaf = classify;
    emit(c, "-", dump(classify_json(load_gate(c, classify_in))));
  } else if (spectrum->parsed()) {
    leaf = spectrum;
    if (spec_side != "plus" && spec_side != "minus")
      throw Error(ErrorKind::Usage, "--side is plus or minus");
    const Gate g = load_gate(c, spec_in);
    const ChannelMatrix m = build_channel(g, spec_side == "plus" ? Side::Plus : Side::Minus);
    ChannelSpectrum s;
    if (spec_locals.empty()) {
      s = channel_spectrum(m);
    } else {
      CMat u;
      const bool numeric = spec_locals.find_first_not_of("0123456789") == std::string::npos;
      if (numeric)
        u = sample_haar(g.q, Stream(std::stoull(spec_locals), "cli/channel-locals"));
      else
        u = local_from_json(parse_json(read_input(c, spec_locals)), g.q);
      s = dressed_spectrum(deflate_trivial(m), u);
    }
    CsvWriter csv({"k", "re", "im", "modulus", "rate"});
    for (std::size_t k = 0; k < s.eigenvalues.size(); ++k)
      csv.row({std::to_string(k + 1), format_double(s.eigenvalues[k].real()),
               format_double(s.eigenvalues[k].imag()), format_double(std::abs(s.eigenvalues[k])),
               format_double(s.rates[k])});
    emit(c, spec_out, csv.str());
  } else if (haar->parsed()) {
    leaf = haar;
    const Gate g = load_gate(c, haar_in);
    const MCEstimate l1 = avg_spectral_radius(g, haar_n, c.seed, sampling);
    const MCEstimate mu = avg_mixing_rate(g, haar_n, c.seed, sampling);
    const MaxRateResult nu = max_mixing_rate(g, haar_n, haar_refine, c.seed);
    CsvWriter csv({"e_p", "mean_lambda1", "stderr", "mu_plus", "nu_plus", "N", "seed"});
    csv.row({format_double(entangling_power(g)), format_double(l1.mean), format_double(l1.stderr_),
             format_double(mu.mean), format_double(nu.value), std::to_string(haar_n),
             std::to_string(c.seed)});
    emit(c, haar_out, csv.str());
  } else if (family->parsed()) {
    leaf = family;
    std::string text;
    if (fam_name == "cartan") {
      CsvWriter csv({"J", "e_p", "nu_prime", "nu_prime_sampled", "mu_prime", "mu_prime_sampled",
                     "mu_prime_stderr", "nu_plus", "nu_plus_sampled"});
      for (double J : parse_grid(fam_grid)) {
        const auto mu = sampled_mu_w(J, fam_n, c.seed);
        csv.row({format_double(J), format_double(entangling_power(cartan_gate(J))),
                 format_double(nu_prime(J)), format_double(sampled_nu_w(J)),
                 format_double(mu_prime(J)), format_double(mu.mean), format_double(mu.stderr_),
                 format_double(nu_plus_exact(J)),
                 format_double(-std::log(general_cubic_min_radius(J)))});
      }
      text = csv.str();
    } else if (fam_name == "diag" || fam_name == "cat") {
      CsvWriter csv({fam_name == "diag" ? "eps" : "b", "e_p", "lambda1_bare", "mean_lambda1",
                     "stderr", "mu_plus"});
      const Stream root(c.seed, "cli/sweep-family/" + fam_name);
      std::uint64_t k = 0;
      for (double p : parse_grid(fam_grid)) {
        const Gate g = fam_name == "diag" ? diagonal_dual_sample(fam_q, p, root.at(k++))
                                          : cat_family(fam_q, p);
        const auto l1 = avg_spectral_radius(g, fam_n, c.seed, sampling);
        const auto mu = avg_mixing_rate(g, fam_n, c.seed, sampling);
        csv.row({format_double(p), format_double(entangling_power(g)),
                 format_double(channel_spectrum(build_m_plus(g)).spectral_radius()),
                 format_double(l1.mean), format_double(l1.stderr_), format_double(mu.mean)});
      }
      text = csv.str();
    } else if (fam_name == "dual-cue") {
      CsvWriter csv({"index", "e_p", "lambda1_bare", "mean_lambda1", "stderr", "mu_plus",
                     "iterations"});
      const Stream root(c.seed, "cli/sweep-family/dual-cue");
      for (int k = 0; k < fam_count; ++k) {
        const auto r = mr_iterate(Gate(fam_q, sample_haar(fam_q * fam_q, root.at(k))));
        if (!r.trace.converged) throw Error(ErrorKind::NonConvergence, "MR did not converge");
        const auto l1 = avg_spectral_radius(r.gate, fam_n, c.seed, sampling);
        const auto mu = avg_mixing_rate(r.gate, fam_n, c.seed, sampling);
        csv.row({std::to_string(k), format_double(entangling_power(r.gate)),
                 format_double(channel_spectrum(build_m_plus(r.gate)).spectral_radius()),
                 format_double(l1.mean), format_double(l1.stderr_), format_double(mu.mean),
                 std::to_string(r.trace.iterations)});
      }
      text = csv.str();
    } else {
      throw Error(ErrorKind::Usage, "unknown family '" + fam_name + "'");
    }
    emit(c, fam_out, text);
  } else if (corr->parsed()) {
    leaf = corr;
    const CircuitJob job = parse_circuit(parse_json(read_input(c, corr_in)));
    const LightconeReport r = lightcone_scan(job.cfg, job.t_max);
    CsvWriter csv({"y", "x", "t", "i", "j", "value_re", "value_im"});
    for (const auto& cell : r.cells)
      csv.row({format_double(cell.y), format_double(cell.x), std::to_string(cell.t),
               std::to_string(cell.i), std::to_string(cell.j), format_double(cell.value.real()),
               format_double(cell.value.imag())});
    emit(c, corr_out, csv.str());
  } else if (verify->parsed()) {
    leaf = verify;
    const CircuitJob job = parse_circuit(parse_json(read_input(c, verify_in)));
    const LightconeReport r = lightcone_scan(job.cfg, job.t_max);
    Json j;
    j["q"] = job.cfg.q;
    j["L"] = job.cfg.L;
    j["t_max"] = job.t_max;
    j["e_p"] = entangling_power(job.cfg.gate);
    j["dual"] = classify_duality(job.cfg.gate).is_dual;
    j["floquet_unitarity_defect"] = unitarity_defect(build_floquet(job.cfg));
    j["translation_residual"] = r.translation_residual;
    j["interior_max"] = r.interior_max;
    j["exterior_max"] = r.exterior_max;
    j["cone_max"] = r.cone_max;
    j["cone_residual"] = r.cone_residual;
    if (job.two_site) {
      j["two_site_shared_gate"] = two_site_scan(job.cfg, job.t_max, 0.0).max_abs;
      j["two_site_straddling"] = two_site_scan(job.cfg, job.t_max, 0.5).max_abs;
    }
    emit(c, "-", dump(j));
  } else if (haar_id->parsed()) {
    leaf = haar_id;
    const Stream root(c.seed, "cli/oracle/haar-identity");
    const long d = static_cast<long>(hi_q) * hi_q;
    auto gaussian = [&](const Stream& s) {
      std::mt19937_64 eng = s.engine();
      std::normal_distribution<double> n(0.0, 1.0);
      CMat m(d, d);
      for (long i = 0; i < d; ++i)
        for (long k = 0; k < d; ++k) m(i, k) = cplx(n(eng), n(eng));
      return m;
    };
    const Gate x(hi_q, gaussian(root.at(0))), y(hi_q, gaussian(root.at(1)));
    const auto r = haar_monomial_oracle(x, y, hi_n, c.seed);
    Json j;
    j["q"] = hi_q;
    j["N"] = hi_n;
    j["closed_form"] = {{"re", r.closed_form.real()}, {"im", r.closed_form.imag()}};
    j["monte_carlo"] = {{"re", r.re.mean}, {"re_stderr", r.re.stderr_},
                        {"im", r.im.mean}, {"im_stderr", r.im.stderr_}};
    j["sigmas"] = r.sigmas;
    emit(c, "-", dump(j));
  } else if (reshuffle->parsed()) {
    leaf = reshuffle;
    const Stream root(c.seed, "cli/oracle/reshuffle");
    std::map<std::string, double> worst;
    for (int k = 0; k < ri_count; ++k) {
      const Stream s = root.at(k);
      std::mt19937_64 eng = s.engine();
      std::normal_distribution<double> n(0.0, 1.0);
      auto gauss = [&](long d) {
        CMat m(d, d);
        for (long i = 0; i < d; ++i)
          for (long l = 0; l < d; ++l) m(i, l) = cplx(n(eng), n(eng));
        return m;
      };
      const Gate x(ri_q, gauss(static_cast<long>(ri_q) * ri_q));
      const std::array<CMat, 4> l = {gauss(ri_q), gauss(ri_q), gauss(ri_q), gauss(ri_q)};
      for (const auto& item : verify_reshuffle_identities(x, l).items)
        worst[item.name] = std::max(worst[item.name], item.residual);
    }
    Json j;
    j["q"] = ri_q;
    j["count"] = ri_count;
    double mx = 0.0;
    Json res = Json::object();
    for (const auto& [name, v] : worst) {
      res[name] = v;
      mx = std::max(mx, v);
    }
    j["residuals"] = res;
    j["max_residual"] = mx;
    j["pass"] = mx < 1e-12;
    emit(c, "-", dump(j));
    if (mx >= 1e-12) status = static_cast<int>(ErrorKind::Validation);
  } else if (enumerate->parsed()) {
    leaf = enumerate;
    CsvWriter csv({"perm_id", "e_p", "lambda1_mod", "lambda2_mod"});
    const auto sum = enumerate_dual_permutations(enum_q, [&](const EnumeratedPermutation& e) {
      csv.row({std::to_string(e.id), format_double(e.e_p), format_double(e.lambda1_mod),
               format_double(e.lambda2_mod)});
    });
    c.manifest.flags["summary"] = {{"scanned", sum.scanned}, {"dual", sum.dual},
                                   {"t_dual", sum.t_dual}, {"two_unitary", sum.two_unitary}};
    emit(c, enum_out, csv.str());
  } else if (replay_cmd->parsed()) {
    leaf = replay_cmd;
    status = replay(c, replay_in);
  }

  // Manifest: command line, resolved flags, seed, digests.
  c.manifest.argv = args;
  c.manifest.seed = c.seed;
  c.manifest.flags["workers"] = c.workers;
  c.manifest.flags["inputs"] = c.inputs;
  if (leaf) {
    for (const CLI::Option* opt : leaf->get_options()) {
      if (opt->get_name().empty() || opt->get_name() == "--help") continue;
      const std::string key = opt->get_name();
      if (opt->count() > 0)
        c.manifest.flags[key] = opt->as<std::string>();
      else if (!opt->get_default_str().empty())
        c.manifest.flags[key] = opt->get_default_str();
    }
  }
  c.manifest.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!c.io.capture) {
    std::string target = manifest_path;
    if (target.empty())
      for (const auto& [p, d] : c.manifest.digests)
        if (p != "-") {
          target = p + ".manifest.json";
          break;
        }
    const std::string text = c.manifest.to_json().dump(2) + "\n";
    if (target.empty() || target == "-") {
      *c.io.err << c.manifest.to_json().dump() << "\n";
    } else {
      std::ofstream f(target, std::ios::binary);
      if (!f) throw Error(ErrorKind::Usage, "cannot write manifest " + target);
      f << text;
    }
  }
  return status;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, CliStreams& io) {
  Context c(io);
  try {
    return dispatch(args, c);
  } catch (const Error& e) {
    *io.err << error_json(e.kind(), e.what()).dump() << "\n";
    return static_cast<int>(e.kind());
  } catch (const nlohmann::json::exception& e) {
    *io.err << error_json(ErrorKind::Usage, e.what()).dump() << "\n";
    return static_cast<int>(ErrorKind::Usage);
  } catch (const std::exception& e) {
    *io.err << error_json(ErrorKind::Validation, e.what()).dump() << "\n";
    return static_cast<int>(ErrorKind::Validation);
  }
}

}  // namespace dualkit
