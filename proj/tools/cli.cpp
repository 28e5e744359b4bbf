#include "cli.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "ergm/ergm.hpp"

#ifndef ERGM_LAB_VERSION
#define ERGM_LAB_VERSION "unknown"
#endif

namespace ergm::cli {

unsigned thread_cap() {
  unsigned hw = std::max(1U, std::thread::hardware_concurrency());
  const char* env = std::getenv("ERGM_LAB_THREADS");
  if (env == nullptr || *env == '\0') return hw;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (*end != '\0' || v < 1) {
    throw std::invalid_argument(std::string("ERGM_LAB_THREADS must be a positive integer, got '") + env + "'");
  }
  return static_cast<unsigned>(v);
}

namespace {

using io::format_double;

/// `lo:hi:steps`, or a single value.
struct Range {
  double lo = 0.0;
  double hi = 0.0;
  int steps = 1;

  [[nodiscard]] double at(int i) const { return steps == 1 ? lo : lo + (hi - lo) * i / (steps - 1); }
};

Range parse_range(const std::string& text, const std::string& flag) {
  auto number = [&](const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != s.size() || s.empty()) {
      throw std::invalid_argument(flag + ": expected a number or lo:hi:steps, got '" + text + "'");
    }
    return v;
  };
  const auto c1 = text.find(':');
  if (c1 == std::string::npos) {
    const double v = number(text);
    return {v, v, 1};
  }
  const auto c2 = text.find(':', c1 + 1);
  if (c2 == std::string::npos) throw std::invalid_argument(flag + ": range must be lo:hi:steps, got '" + text + "'");
  Range r{number(text.substr(0, c1)), number(text.substr(c1 + 1, c2 - c1 - 1)), 0};
  const double steps = number(text.substr(c2 + 1));
  if (steps < 2 || steps != std::floor(steps) || steps > 1e6) {
    throw std::invalid_argument(flag + ": steps must be an integer in [2, 1e6]");
  }
  r.steps = static_cast<int>(steps);
  return r;
}

std::string quote(const std::string& arg) {
  if (!arg.empty() && arg.find_first_of(" \t\"'\\") == std::string::npos) return arg;
  std::string q = "'";
  for (char c : arg) q += c == '\'' ? std::string("'\\''") : std::string(1, c);
  return q + "'";
}

/// Owns the destination stream and writes the reproducibility header.
class Output {
 public:
  Output(const std::string& path, std::ostream& fallback) {
    if (path.empty() || path == "-") {
      stream_ = &fallback;
    } else {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) throw std::invalid_argument("cannot open output file '" + path + "'");
      stream_ = file_.get();
    }
  }

  std::ostream& stream() { return *stream_; }

  void header(const std::vector<std::string>& argv, std::optional<std::uint64_t> seed) {
    auto& o = *stream_;
    o << "# ergm_lab " << ERGM_LAB_VERSION << '\n';
    o << "# command: ergm_lab";
    for (std::size_t i = 1; i < argv.size(); ++i) o << ' ' << quote(argv[i]);
    o << '\n';
    o << "# seed: " << (seed ? std::to_string(*seed) : std::string("none")) << '\n';
  }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_ = nullptr;
};

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read file '" + path + "'");
  return in;
}

struct ModelArgs {
  std::string path;
  std::optional<double> beta1;
  std::optional<double> beta2;

  void attach(CLI::App* app, const std::string& prefix = "", const std::string& what = "model") {
    app->add_option("--" + prefix + "model", path, what + " file (`motif beta` per line)");
    app->add_option("--" + prefix + "beta1", beta1, "edge coefficient of an edge-triangle " + what);
    app->add_option("--" + prefix + "beta2", beta2, "triangle coefficient of an edge-triangle " + what);
  }

  [[nodiscard]] ModelSpec resolve(const std::string& prefix = "") const {
    if (!path.empty()) {
      if (beta1 || beta2) {
        throw std::invalid_argument("give either --" + prefix + "model or --" + prefix + "beta1/--" + prefix +
                                    "beta2, not both");
      }
      auto in = open_input(path);
      return ModelSpec::parse(in);
    }
    if (!beta1) throw std::invalid_argument("a model is required: --" + prefix + "model FILE or --" + prefix + "beta1");
    return ModelSpec::edge_triangle(*beta1, beta2.value_or(0.0));
  }
};

std::string join_values(const std::vector<double>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? ";" : "") + format_double(xs[i]);
  return s;
}

/// Runs fn(i) for i in [0, count) on up to `threads` workers.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& fn) {
  ergm::detail::parallel_for(count, threads, fn);
}

StartState parse_start(const std::string& s) {
  if (s == "empty") return StartState::empty;
  if (s == "complete") return StartState::complete;
  throw std::invalid_argument("--start must be empty or complete");
}

Sampler parse_sampler(const std::string& s) {
  if (s == "glauber") return Sampler::glauber;
  if (s == "metropolis") return Sampler::metropolis;
  throw std::invalid_argument("--sampler must be glauber or metropolis");
}

// ---------------------------------------------------------------------------

struct SampleArgs {
  ModelArgs model;
  int n = 30;
  long long steps = 10000;
  long long record_every = 100;
  std::string start = "empty";
  std::string start_graph;
  std::string sampler = "glauber";
  std::string graph_out;
};

int cmd_sample(const SampleArgs& a, std::uint64_t seed, Output& out, const std::vector<std::string>& argv) {
  const ModelSpec model = a.model.resolve();
  ChainConfig cfg;
  cfg.n = a.n;
  cfg.steps = a.steps;
  cfg.seed = seed;
  cfg.record_every = a.record_every;
  if (!a.start_graph.empty()) {
    auto in = open_input(a.start_graph);
    cfg.start = StartState::graph;
    cfg.start_graph = io::read_edge_list(in);
  } else {
    cfg.start = parse_start(a.start);
  }
  ChainRun run;
  if (parse_sampler(a.sampler) == Sampler::metropolis) {
    if (model.size() != 1 || !model.terms()[0].motif.is_single_edge()) {
      throw std::invalid_argument("the Metropolis sampler needs an edge-only model");
    }
    run = run_metropolis(2.0 * model.terms()[0].beta, cfg);
  } else {
    run = run_glauber(model, cfg);
  }
  out.header(argv, seed);
  io::write_trace_csv(out.stream(), run.trace);
  if (!a.graph_out.empty()) {
    Output g(a.graph_out, out.stream());
    g.header(argv, seed);
    io::write_edge_list(g.stream(), run.graph);
  }
  return kOk;
}

struct PsiArgs {
  ModelArgs model;
  std::optional<int> n;
};

int cmd_psi(const PsiArgs& a, Output& out, const std::vector<std::string>& argv) {
  const ModelSpec model = a.model.resolve();
  const auto rep = maximize_scalar(model);
  out.header(argv, std::nullopt);
  auto& o = out.stream();
  o << "psi_limit = " << format_double(rep.psi) << '\n';
  o << "maximizers = " << join_values(rep.maximizers) << '\n';
  o << "multiplicity = " << rep.multiplicity() << '\n';
  o << "applicability = " << to_string(applicability_check(model)) << '\n';
  if (a.n) o << "psi_n = " << format_double(enumerate_psi_n(model, *a.n)) << '\n';
  return kOk;
}

struct PhaseArgs {
  std::string beta1;
  std::string beta2;
};

int cmd_phase(const PhaseArgs& a, Output& out, const std::vector<std::string>& argv) {
  const Range b1 = parse_range(a.beta1, "--beta1");
  const Range b2 = parse_range(a.beta2, "--beta2");
  if (b2.steps < 2) throw std::invalid_argument("--beta2 must be a range lo:hi:steps");
  const unsigned threads = thread_cap();
  std::vector<PhaseScan> scans(b1.steps);
  // One row of the surface per worker when scanning several β₁; otherwise the scan itself is split.
  if (b1.steps > 1) {
    parallel_for(scans.size(), threads,
                 [&](std::size_t i) { scans[i] = phase_scan(b1.at(static_cast<int>(i)), b2.lo, b2.hi, b2.steps); });
  } else {
    PhaseScanOptions opt;
    opt.threads = threads;
    scans[0] = phase_scan(b1.lo, b2.lo, b2.hi, b2.steps, opt);
  }
  out.header(argv, std::nullopt);
  auto& o = out.stream();
  o << "# rows with multiplicity >= 2 mark a detected jump; u_star is the upper branch there\n";
  const bool surface = b1.steps > 1;
  o << (surface ? "beta1,beta2,u_star,psi,multiplicity\n" : "beta2,u_star,psi,multiplicity\n");
  for (int i = 0; i < b1.steps; ++i) {
    std::vector<PhasePoint> rows = scans[i].points;
    for (const auto& t : scans[i].transitions) rows.push_back({t.beta2, t.u_high, t.psi, t.multiplicity});
    std::stable_sort(rows.begin(), rows.end(), [](const PhasePoint& x, const PhasePoint& y) { return x.beta2 < y.beta2; });
    for (const auto& p : rows) {
      if (surface) o << format_double(b1.at(i)) << ',';
      o << format_double(p.beta2) << ',' << format_double(p.u_star) << ',' << format_double(p.psi) << ','
        << p.multiplicity << '\n';
    }
  }
  return kOk;
}

struct DegeneracyArgs {
  double beta1 = 0.0;
  std::optional<double> beta2;
};

int cmd_degeneracy(const DegeneracyArgs& a, Output& out, const std::vector<std::string>& argv) {
  const auto r = degeneracy_constants(a.beta1, a.beta2);
  out.header(argv, std::nullopt);
  auto& o = out.stream();
  o << "c1 = " << format_double(r.c1) << '\n';
  o << "c2 = " << format_double(r.c2) << '\n';
  o << "q = " << (r.q_estimate ? format_double(*r.q_estimate) : "none") << '\n';
  if (r.regime) o << "regime = " << to_string(*r.regime) << '\n';
  return kOk;
}

struct EstimateArgs {
  ModelArgs model;
  ModelArgs reference;
  std::string method = "importance";
  int n = 5;
  long long samples = 10000;
  std::optional<long long> samples2;
  std::optional<double> proposal_p;
  std::string alpha = "geometric";
  std::string sampler = "glauber";
  std::string start = "empty";
  long long thin = 1;
  bool exact = false;
};

int cmd_estimate(const EstimateArgs& a, std::uint64_t seed, Output& out, const std::vector<std::string>& argv) {
  const ModelSpec model = a.model.resolve();
  EstimatorResult r;
  std::optional<double> exact;
  if (a.method == "importance" || a.method == "self-normalized") {
    r = a.method == "importance" ? estimate_importance(model, a.n, a.samples, seed, a.proposal_p)
                                 : estimate_importance_self_normalized(model, a.n, a.samples, seed, a.proposal_p);
    if (a.exact) exact = enumerate_log_partition(model, a.n);
  } else if (a.method == "mcmle" || a.method == "acceptance-ratio") {
    const ModelSpec model0 = a.reference.resolve("ref-");
    ChainConfig cfg;
    cfg.n = a.n;
    cfg.seed = seed;
    cfg.thin = a.thin;
    cfg.start = parse_start(a.start);
    cfg.sampler = parse_sampler(a.sampler);
    if (a.method == "mcmle") {
      r = estimate_mcmle(model, model0, a.samples, cfg);
    } else {
      if (a.alpha != "constant" && a.alpha != "geometric") {
        throw std::invalid_argument("--alpha must be constant or geometric");
      }
      const AlphaKind alpha = a.alpha == "constant" ? AlphaKind::constant : AlphaKind::geometric;
      r = estimate_acceptance_ratio(model, model0, alpha, a.samples, a.samples2.value_or(a.samples), cfg);
    }
    if (a.exact) exact = enumerate_log_partition(model, a.n) - enumerate_log_partition(model0, a.n);
  } else {
    throw std::invalid_argument("--method must be importance, self-normalized, mcmle or acceptance-ratio");
  }
  out.header(argv, seed);
  io::write_estimator(out.stream(), r);
  if (exact) out.stream() << "log_exact = " << format_double(*exact) << '\n';
  return kOk;
}

struct SpectralArgs {
  std::vector<double> betas{0.0, 0.5, 1.0};
  int max_ell = 20;
  double beta1 = 0.2;
  double beta2 = 0.1;
};

int cmd_spectral(const SpectralArgs& a, Output& out, const std::vector<std::string>& argv) {
  constexpr int n = 3;
  const int m = static_cast<int>(pair_total(n));
  const int states = dense::state_count(n);
  bool ok = true;
  out.header(argv, std::nullopt);
  auto& o = out.stream();
  for (double beta : a.betas) {
    const Eigen::MatrixXd k = dense::metropolis_matrix(n, beta);
    const Eigen::VectorXd pi = dense::er_law(n, beta);
    // Closed-form eigenvalues with multiplicity C(m, j), ascending.
    std::vector<double> expected;
    for (int x = 0; x < states; ++x) expected.push_back(er_eigenvalue(std::popcount(static_cast<unsigned>(x)), beta, m));
    std::sort(expected.begin(), expected.end());
    const Eigen::VectorXd got = dense::reversible_spectrum(k, pi);
    double eig_err = 0.0;
    for (int i = 0; i < states; ++i) eig_err = std::max(eig_err, std::abs(got[i] - expected[i]));
    double fn_err = 0.0;
    double ortho_err = 0.0;
    std::vector<SpectralComponent> comps;
    for (int x = 0; x < states; ++x) comps.push_back(er_eigen(dense::indicators(n, x), beta, m));
    for (const auto& c : comps) {
      Eigen::VectorXd psi(states);
      for (int y = 0; y < states; ++y) psi[y] = c.psi(dense::indicators(n, y));
      fn_err = std::max(fn_err, (k * psi - c.eigenvalue * psi).cwiseAbs().maxCoeff());
      for (const auto& d : comps) {
        double ip = 0.0;
        for (int y = 0; y < states; ++y) ip += psi[y] * d.psi(dense::indicators(n, y)) * pi[y];
        ortho_err = std::max(ortho_err, std::abs(ip - (c.xi == d.xi ? 1.0 : 0.0)));
      }
    }
    double chi_err = 0.0;
    for (int ell = 0; ell <= a.max_ell; ++ell) {
      for (auto [start, idx] : {std::pair{StartState::empty, 0}, std::pair{StartState::complete, states - 1}}) {
        const double closed = chi_square_distance(start, beta, n, ell);
        const double brute = dense::chi_square(k, pi, idx, ell);
        chi_err = std::max(chi_err, std::abs(closed - brute) / std::max(1.0, brute));
      }
    }
    const double balance = dense::detailed_balance_residual(k, pi);
    ok = ok && eig_err < 1e-12 && fn_err < 1e-12 && ortho_err < 1e-12 && chi_err < 1e-10 && balance < 1e-12;
    o << "[metropolis beta = " << format_double(beta) << "]\n";
    o << "eigenvalue_max_error = " << format_double(eig_err) << '\n';
    o << "eigenfunction_residual = " << format_double(fn_err) << '\n';
    o << "orthonormality_residual = " << format_double(ortho_err) << '\n';
    o << "detailed_balance_residual = " << format_double(balance) << '\n';
    o << "chi_square_max_rel_error = " << format_double(chi_err) << '\n';
  }
  const ModelSpec model = ModelSpec::edge_triangle(a.beta1, a.beta2);
  const Eigen::MatrixXd g = dense::glauber_matrix(model, n);
  const Eigen::VectorXd target = dense::target_law(model, n);
  const double tv = 0.5 * (dense::stationary_vector(g) - target).cwiseAbs().sum();
  const double balance = dense::detailed_balance_residual(g, target);
  ok = ok && tv < 1e-12 && balance < 1e-12;
  o << "[glauber beta1 = " << format_double(a.beta1) << ", beta2 = " << format_double(a.beta2) << "]\n";
  o << "stationary_tv_residual = " << format_double(tv) << '\n';
  o << "detailed_balance_residual = " << format_double(balance) << '\n';
  o << "status = " << (ok ? "ok" : "fail") << '\n';
  return ok ? kOk : kNumericGuard;
}

struct EulerArgs {
  ModelArgs model;
  std::string init;
  int blocks = 3;
  double damping = 0.5;
  double tol = 1e-9;
  int max_iter = 10000;
};

int cmd_euler(const EulerArgs& a, std::uint64_t seed, Output& out, const std::vector<std::string>& argv) {
  const ModelSpec model = a.model.resolve();
  std::optional<StepGraphon> init;
  if (!a.init.empty()) {
    auto in = open_input(a.init);
    init = io::read_step_graphon(in);
  } else {
    if (a.blocks < 1 || a.blocks > 64) throw std::invalid_argument("--blocks must lie in [1, 64]");
    CounterRng rng(seed);
    std::vector<double> v(static_cast<std::size_t>(a.blocks) * a.blocks);
    for (int i = 0; i < a.blocks; ++i)
      for (int j = i; j < a.blocks; ++j) v[i * a.blocks + j] = v[j * a.blocks + i] = rng.uniform();
    init = StepGraphon::equal_blocks(a.blocks, std::move(v));
  }
  try {
    const auto res = euler_lagrange_solve(model, *init, a.damping, a.max_iter, a.tol);
    out.header(argv, seed);
    out.stream() << "# status = converged\n# iterations = " << res.iterations
                 << "\n# residual = " << format_double(res.residual) << '\n';
    io::write_step_graphon(out.stream(), res.graphon);
    return kOk;
  } catch (const euler_lagrange_divergence& e) {
    out.header(argv, seed);
    out.stream() << "# status = diverged\n# iterations = " << e.iterations()
                 << "\n# residual = " << format_double(e.residual()) << '\n';
    io::write_step_graphon(out.stream(), e.last_iterate());
    throw;
  }
}

struct ExtremalArgs {
  std::string motif = "triangle";
  double beta1 = 0.0;
};

int cmd_extremal(const ExtremalArgs& a, Output& out, const std::vector<std::string>& argv) {
  const auto lim = extremal_limit(Motif::parse(a.motif), a.beta1);
  out.header(argv, std::nullopt);
  out.stream() << "# chromatic_number = " << lim.chromatic << "\n# p = " << format_double(lim.p)
               << "\n# psi_limit = " << format_double(lim.psi_limit) << '\n';
  io::write_step_graphon(out.stream(), lim.graphon);
  return kOk;
}

struct TopArgs {
  std::string graph;
  std::string beta1;
  std::string beta2;
};

int cmd_top(const TopArgs& a, Output& out, const std::vector<std::string>& argv) {
  auto in = open_input(a.graph);
  const Graph g = io::read_edge_list(in);
  const Range b1 = parse_range(a.beta1, "--beta1");
  const Range b2 = parse_range(a.beta2, "--beta2");
  std::vector<double> values(static_cast<std::size_t>(b1.steps) * b2.steps);
  parallel_for(values.size(), thread_cap(), [&](std::size_t idx) {
    const int i = static_cast<int>(idx / b2.steps);
    const int j = static_cast<int>(idx % b2.steps);
    values[idx] = top_statistic(b1.at(i), b2.at(j), g);
  });
  out.header(argv, std::nullopt);
  auto& o = out.stream();
  o << "beta1,beta2,top\n";
  for (int i = 0; i < b1.steps; ++i)
    for (int j = 0; j < b2.steps; ++j)
      o << format_double(b1.at(i)) << ',' << format_double(b2.at(j)) << ','
        << format_double(values[static_cast<std::size_t>(i) * b2.steps + j]) << '\n';
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exponential random graph models: variational limits, samplers and estimators", "ergm_lab"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string("ergm_lab ") + ERGM_LAB_VERSION);

  std::string output;
  std::uint64_t seed = 1;
  auto common = [&](CLI::App* sub, bool stochastic) {
    sub->add_option("-o,--output", output, "output file (default: standard output)");
    if (stochastic) sub->add_option("--seed", seed, "64-bit seed")->capture_default_str();
  };

  SampleArgs sample;
  auto* s = app.add_subcommand("sample", "run a Glauber (or Metropolis) chain and write its trace");
  sample.model.attach(s);
  s->add_option("--n", sample.n, "vertex count")->capture_default_str();
  s->add_option("--steps", sample.steps, "chain steps")->capture_default_str();
  s->add_option("--record-every", sample.record_every, "trace interval")->capture_default_str();
  s->add_option("--start", sample.start, "empty or complete")->capture_default_str();
  s->add_option("--start-graph", sample.start_graph, "edge-list file for the initial state");
  s->add_option("--sampler", sample.sampler, "glauber or metropolis")->capture_default_str();
  s->add_option("--graph-out", sample.graph_out, "write the final graph as an edge list");
  common(s, true);

  PsiArgs psi;
  auto* p = app.add_subcommand("psi", "free energy of the scalar problem, and exact psi_n for small n");
  psi.model.attach(p);
  p->add_option("--n", psi.n, "also enumerate psi_n (n <= 6)");
  common(p, false);

  PhaseArgs phase;
  auto* ph = app.add_subcommand("phase-diagram", "u* over a beta2 range (or a beta1 x beta2 grid)");
  ph->add_option("--beta1", phase.beta1, "value or lo:hi:steps")->required();
  ph->add_option("--beta2", phase.beta2, "lo:hi:steps")->required();
  common(ph, false);

  DegeneracyArgs degen;
  auto* dg = app.add_subcommand("degeneracy", "degeneracy constants c1, c2 and the jump point q");
  dg->add_option("--beta1", degen.beta1, "edge coefficient (< 0)")->required();
  dg->add_option("--beta2", degen.beta2, "classify this triangle coefficient");
  common(dg, false);

  EstimateArgs est;
  auto* ez = app.add_subcommand("estimate-z", "estimate a normalizing constant or a ratio of them");
  est.model.attach(ez);
  est.reference.attach(ez, "ref-", "reference model");
  ez->add_option("--method", est.method, "importance, self-normalized, mcmle or acceptance-ratio")
      ->capture_default_str();
  ez->add_option("--n", est.n, "vertex count")->capture_default_str();
  ez->add_option("--samples", est.samples, "sample count N (N1 for acceptance-ratio)")->capture_default_str();
  ez->add_option("--samples2", est.samples2, "N2 for acceptance-ratio (default N1)");
  ez->add_option("--proposal-p", est.proposal_p, "Erdos-Renyi proposal density (default u*)");
  ez->add_option("--alpha", est.alpha, "constant or geometric")->capture_default_str();
  ez->add_option("--sampler", est.sampler, "glauber or metropolis")->capture_default_str();
  ez->add_option("--start", est.start, "empty or complete")->capture_default_str();
  ez->add_option("--thin", est.thin, "thinning interval")->capture_default_str();
  ez->add_flag("--exact", est.exact, "also print the enumerated value (n <= 6)");
  common(ez, true);

  SpectralArgs spec;
  auto* sc = app.add_subcommand("spectral-check", "dense n = 3 checks of the chain spectra and chi-square");
  sc->add_option("--beta", spec.betas, "Metropolis coefficients")->capture_default_str();
  sc->add_option("--max-ell", spec.max_ell, "largest step count compared")->capture_default_str();
  sc->add_option("--beta1", spec.beta1, "Glauber edge coefficient")->capture_default_str();
  sc->add_option("--beta2", spec.beta2, "Glauber triangle coefficient")->capture_default_str();
  common(sc, false);

  EulerArgs euler;
  auto* el = app.add_subcommand("euler-lagrange", "damped fixed-point iteration on step graphons");
  euler.model.attach(el);
  el->add_option("--init", euler.init, "initial step graphon file (default: random)");
  el->add_option("--blocks", euler.blocks, "blocks of the random initial graphon")->capture_default_str();
  el->add_option("--damping", euler.damping, "damping in (0, 1]")->capture_default_str();
  el->add_option("--tol", euler.tol, "sup-norm step tolerance")->capture_default_str();
  el->add_option("--max-iter", euler.max_iter, "iteration cap")->capture_default_str();
  common(el, true);

  ExtremalArgs ext;
  auto* ex = app.add_subcommand("extremal", "beta2 -> -infinity limit graphon and free energy");
  ex->add_option("--motif", ext.motif, "motif (edge, triangle, star:j, cycle:j, complete:r or 0-1,1-2,...)")
      ->capture_default_str();
  ex->add_option("--beta1", ext.beta1, "edge coefficient")->capture_default_str();
  common(ex, false);

  TopArgs top;
  auto* tc = app.add_subcommand("top-contour", "grid of the top statistic for a fixed graph");
  tc->add_option("--graph", top.graph, "edge-list file")->required();
  tc->add_option("--beta1", top.beta1, "value or lo:hi:steps")->required();
  tc->add_option("--beta2", top.beta2, "value or lo:hi:steps")->required();
  common(tc, false);

  std::vector<std::string> args(argv.size() > 1 ? argv.begin() + 1 : argv.end(), argv.end());
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    Output dest(output, out);
    if (s->parsed()) return cmd_sample(sample, seed, dest, argv);
    if (p->parsed()) return cmd_psi(psi, dest, argv);
    if (ph->parsed()) return cmd_phase(phase, dest, argv);
    if (dg->parsed()) return cmd_degeneracy(degen, dest, argv);
    if (ez->parsed()) return cmd_estimate(est, seed, dest, argv);
    if (sc->parsed()) return cmd_spectral(spec, dest, argv);
    if (el->parsed()) return cmd_euler(euler, seed, dest, argv);
    if (ex->parsed()) return cmd_extremal(ext, dest, argv);
    if (tc->parsed()) return cmd_top(top, dest, argv);
  } catch (const guard_error& e) {
    err << "ergm_lab: numeric guard: " << e.what() << '\n';
    return kNumericGuard;
  } catch (const convergence_error& e) {
    err << "ergm_lab: no convergence: " << e.what() << '\n';
    return kNumericGuard;
  } catch (const std::invalid_argument& e) {
    err << "ergm_lab: " << e.what() << '\n';
    return kUsage;
  } catch (const std::domain_error& e) {
    err << "ergm_lab: " << e.what() << '\n';
    return kUsage;
  } catch (const std::out_of_range& e) {
    err << "ergm_lab: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "ergm_lab: " << e.what() << '\n';
    return kNumericGuard;
  }
  return kUsage;
}

}  // namespace ergm::cli
