#ifndef ERGM_MCMC_HPP
#define ERGM_MCMC_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ergm/entropy.hpp"
#include "ergm/errors.hpp"
#include "ergm/graph.hpp"
#include "ergm/logspace.hpp"
#include "ergm/model.hpp"
#include "ergm/rng.hpp"
#include "ergm/variational.hpp"

namespace ergm {

enum class StartState { empty, complete, graph };
enum class Sampler { glauber, metropolis };

inline const char* to_string(StartState s) {
  switch (s) {
    case StartState::empty: return "empty";
    case StartState::complete: return "complete";
    case StartState::graph: return "graph";
  }
  return "graph";
}

struct ChainConfig {
  int n = 30;
  long long steps = 10000;
  std::uint64_t seed = 1;
  StartState start = StartState::empty;
  std::optional<Graph> start_graph;
  Sampler sampler = Sampler::glauber;
  /// Estimators keep every `thin`-th state after burn-in.
  long long thin = 1;
  /// Trace interval for run_glauber / run_metropolis; 0 records nothing.
  long long record_every = 0;

  void validate() const {
    if (n < 2) throw std::invalid_argument("chain needs n >= 2");
    if (steps < 0) throw std::invalid_argument("chain steps must be >= 0");
    if (thin < 1) throw std::invalid_argument("thinning interval must be >= 1");
    if (record_every < 0) throw std::invalid_argument("record interval must be >= 0");
    if (start == StartState::graph) {
      if (!start_graph) throw std::invalid_argument("start = graph needs a start graph");
      if (start_graph->vertex_count() != n) throw std::invalid_argument("start graph has the wrong vertex count");
    }
  }

  [[nodiscard]] Graph initial_graph() const {
    switch (start) {
      case StartState::empty: return Graph(n);
      case StartState::complete: return Graph::complete(n);
      case StartState::graph: return *start_graph;
    }
    return Graph(n);
  }
};

/// The Erdős–Rényi law p ∝ e^{βE(G)} as a scaled model: n²·2β₁E/n² = βE when β₁ = β/2.
inline ModelSpec er_model(double beta) { return ModelSpec::edge_only(0.5 * beta); }

namespace detail {

/// Uniform unordered pair i < j.
inline std::pair<int, int> draw_pair(int n, CounterRng& rng) {
  const int i = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
  int j = static_cast<int>(rng.below(static_cast<std::uint64_t>(n - 1)));
  if (j >= i) ++j;
  return i < j ? std::pair{i, j} : std::pair{j, i};
}

inline void require_er_beta(double beta) {
  if (beta < 0.0) {
    throw std::domain_error(
        "Erdos-Renyi chain needs beta >= 0; for beta < 0 run the chain at -beta on complement graphs");
  }
}

}  // namespace detail

/// One Metropolis move for p ∝ e^{βE}: pick a uniform pair; add it if absent,
/// otherwise delete it with probability e^{-β}. Returns whether the graph changed.
inline bool metropolis_step(Graph& g, double beta, CounterRng& rng) {
  detail::require_er_beta(beta);
  const auto [i, j] = detail::draw_pair(g.vertex_count(), rng);
  if (!g.has_edge(i, j)) {
    g.add_edge(i, j);
    return true;
  }
  if (rng.uniform() < std::exp(-beta)) {
    g.remove_edge(i, j);
    return true;
  }
  return false;
}

/// δ(i, j) = n²[T(G ∪ ij) - T(G \ ij)] from local counts.
class GlauberKernel {
 public:
  GlauberKernel(const ModelSpec& model, int n) : model_(model), n_(n) {
    for (const auto& t : model.terms()) {
      if (t.motif.is_single_edge()) {
        edge_ += 2.0 * t.beta;
      } else if (t.motif.is_triangle()) {
        triangle_ += 6.0 * t.beta / n;
      } else if (const auto j = t.motif.star_leaves()) {
        stars_.push_back({*j, t.beta * std::pow(static_cast<double>(n), 1 - *j)});
      } else {
        general_.push_back(t);
      }
    }
  }

  [[nodiscard]] const ModelSpec& model() const noexcept { return model_; }

  /// `g` is restored before returning; it is only toggled for general motifs.
  double delta(Graph& g, int i, int j) const {
    double d = edge_;
    if (triangle_ != 0.0) d += triangle_ * g.common_neighbours(i, j);
    if (!stars_.empty()) {
      const int present = g.has_edge(i, j) ? 1 : 0;
      const double di = g.degree(i) - present;
      const double dj = g.degree(j) - present;
      for (const auto& [leaves, scale] : stars_) {
        d += scale * (std::pow(di + 1.0, leaves) - std::pow(di, leaves) + std::pow(dj + 1.0, leaves) -
                      std::pow(dj, leaves));
      }
    }
    if (!general_.empty()) {
      const bool present = g.has_edge(i, j);
      const double n2 = static_cast<double>(n_) * n_;
      g.add_edge(i, j);
      double with = 0.0;
      for (const auto& t : general_) with += t.beta * hom_density_graph(t.motif, g);
      g.remove_edge(i, j);
      double without = 0.0;
      for (const auto& t : general_) without += t.beta * hom_density_graph(t.motif, g);
      g.set_edge(i, j, present);
      d += n2 * (with - without);
    }
    return d;
  }

 private:
  ModelSpec model_;
  int n_;
  double edge_ = 0.0;
  double triangle_ = 0.0;
  std::vector<std::pair<int, double>> stars_;
  std::vector<ModelTerm> general_;
};

/// One Glauber move: pick a uniform pair and resample it from its conditional
/// law, on with probability e^δ/(1+e^δ).
inline void glauber_step(Graph& g, const GlauberKernel& kernel, CounterRng& rng) {
  const auto [i, j] = detail::draw_pair(g.vertex_count(), rng);
  const double p_on = logistic(kernel.delta(g, i, j));
  g.set_edge(i, j, rng.uniform() < p_on);
}

inline void glauber_step(Graph& g, const ModelSpec& model, CounterRng& rng) {
  glauber_step(g, GlauberKernel(model, g.vertex_count()), rng);
}

struct TraceRow {
  long long step = 0;
  long long edges = 0;
  long long triangles = 0;
  double statistic = 0.0;
};

struct ChainRun {
  Graph graph;
  std::vector<TraceRow> trace;
};

namespace detail {

inline TraceRow trace_row(long long step, const ModelSpec& model, const Graph& g) {
  return {step, g.edge_count(), triangle_count(g), graph_statistic(model, g)};
}

template <class Step>
ChainRun run_chain(const ModelSpec& traced, const ChainConfig& cfg, Step&& step) {
  cfg.validate();
  ChainRun run{cfg.initial_graph(), {}};
  CounterRng rng(cfg.seed);
  if (cfg.record_every > 0) run.trace.push_back(trace_row(0, traced, run.graph));
  for (long long s = 1; s <= cfg.steps; ++s) {
    step(run.graph, rng);
    if (cfg.record_every > 0 && (s % cfg.record_every == 0 || s == cfg.steps)) {
      run.trace.push_back(trace_row(s, traced, run.graph));
    }
  }
  return run;
}

}  // namespace detail

inline ChainRun run_glauber(const ModelSpec& model, const ChainConfig& cfg) {
  const GlauberKernel kernel(model, cfg.n);
  return detail::run_chain(model, cfg, [&](Graph& g, CounterRng& rng) { glauber_step(g, kernel, rng); });
}

/// Trace statistic is that of er_model(beta), i.e. βE/n².
inline ChainRun run_metropolis(double beta, const ChainConfig& cfg) {
  detail::require_er_beta(beta);
  return detail::run_chain(er_model(beta), cfg, [&](Graph& g, CounterRng& rng) { metropolis_step(g, beta, rng); });
}

// ---------------------------------------------------------------------------
// Exact spectral theory of the Erdős–Rényi Metropolis chain.

inline double er_eigenvalue(int weight, double beta, int m) {
  return 1.0 - weight * (1.0 + std::exp(-beta)) / m;
}

struct SpectralComponent {
  std::vector<std::uint8_t> xi;
  double eigenvalue = 1.0;
  int weight = 0;
  double beta = 0.0;

  /// ψ_ξ(x) = (-1)^{ξ·x} e^{(β/2)(|ξ| - 2ξ·x)}.
  [[nodiscard]] double psi(std::span<const std::uint8_t> x) const {
    if (x.size() != xi.size()) throw std::invalid_argument("edge indicator length does not match xi");
    int dot = 0;
    for (std::size_t k = 0; k < xi.size(); ++k) dot += (xi[k] && x[k]) ? 1 : 0;
    const double mag = std::exp(0.5 * beta * (weight - 2 * dot));
    return dot % 2 ? -mag : mag;
  }
};

inline SpectralComponent er_eigen(std::vector<std::uint8_t> xi, double beta, int m) {
  if (static_cast<int>(xi.size()) != m) {
    throw std::invalid_argument("xi has length " + std::to_string(xi.size()) + ", expected m = " + std::to_string(m));
  }
  SpectralComponent c;
  c.weight = static_cast<int>(std::count_if(xi.begin(), xi.end(), [](std::uint8_t b) { return b != 0; }));
  c.xi = std::move(xi);
  c.beta = beta;
  c.eigenvalue = er_eigenvalue(c.weight, beta, m);
  return c;
}

inline long long pair_total(int n) { return static_cast<long long>(n) * (n - 1) / 2; }

/// log χ²(ℓ) for the Metropolis chain started at the empty or complete graph:
/// log Σ_{j>=1} e^{±βj} C(m,j) |1 - j(1+e^{-β})/m|^{2ℓ}.
inline double chi_square_log(StartState start, double beta, int n, double ell) {
  detail::require_er_beta(beta);
  if (start == StartState::graph) throw std::invalid_argument("closed-form chi-square needs an empty or complete start");
  if (n < 2) throw std::invalid_argument("chi-square needs n >= 2");
  if (ell < 0.0) throw std::invalid_argument("chi-square needs ell >= 0");
  const long long m = pair_total(n);
  const double sign = start == StartState::empty ? 1.0 : -1.0;
  LogSum acc;
  for (long long j = 1; j <= m; ++j) {
    const double lambda = 1.0 - static_cast<double>(j) * (1.0 + std::exp(-beta)) / static_cast<double>(m);
    double decay = 0.0;
    if (ell > 0.0) {
      if (lambda == 0.0) continue;
      decay = 2.0 * ell * std::log(std::abs(lambda));
    }
    acc.add(sign * beta * static_cast<double>(j) + log_binomial(static_cast<double>(m), static_cast<double>(j)) + decay);
  }
  return acc.value();
}

inline constexpr double kMaxLogDouble = 700.0;

/// χ²(ℓ) as a plain double; refuses values above e^700 (use chi_square_log).
inline double chi_square_distance(StartState start, double beta, int n, double ell) {
  const double lg = chi_square_log(start, beta, n, ell);
  if (lg > kMaxLogDouble) {
    throw guard_error("chi-square value e^" + std::to_string(lg) + " overflows a double; use the log-domain output");
  }
  return std::exp(lg);
}

/// First-term lower bound e^{±β} m (1 - (1+e^{-β})/m)^{2ℓ}.
inline double chi_square_lower_bound(StartState start, double beta, int n, double ell) {
  const double m = static_cast<double>(pair_total(n));
  const double sign = start == StartState::empty ? 1.0 : -1.0;
  return std::exp(sign * beta) * m * std::pow(1.0 - (1.0 + std::exp(-beta)) / m, 2.0 * ell);
}

struct CutoffResult {
  double steps = 0.0;
  /// β outside [0, 1], where the cutoff limit is not established.
  bool outside_proven_range = false;
};

/// ℓ* = m(log m + c) / (2(1 + e^{-β})).
inline CutoffResult mixing_cutoff(int n, double beta, double c) {
  if (n < 2) throw std::invalid_argument("cutoff needs n >= 2");
  const double m = static_cast<double>(pair_total(n));
  return {m * (std::log(m) + c) / (2.0 * (1.0 + std::exp(-beta))), beta < 0.0 || beta > 1.0};
}

/// The limit of χ²(ℓ*) as n → ∞: e^{e^{±β-c}} - 1.
inline double cutoff_limit(StartState start, double beta, double c) {
  const double sign = start == StartState::empty ? 1.0 : -1.0;
  return std::expm1(std::exp(sign * beta - c));
}

/// log z(β) = m log(1 + e^β) for p ∝ e^{βE}.
inline double er_log_partition(double beta, int n) {
  if (n < 2) throw std::invalid_argument("partition function needs n >= 2");
  return static_cast<double>(pair_total(n)) * softplus(beta);
}

inline constexpr int kMaxEnumerationVertices = 6;

/// log Σ_G e^{n² T(G)} by full enumeration (n <= 6).
inline double enumerate_log_partition(const ModelSpec& model, int n) {
  if (n < 1) throw std::invalid_argument("enumeration needs n >= 1");
  if (n > kMaxEnumerationVertices) {
    throw guard_error("enumeration over 2^C(n,2) graphs is limited to n <= 6, got n = " + std::to_string(n));
  }
  const int m = static_cast<int>(pair_total(n));
  const double n2 = static_cast<double>(n) * n;
  LogSum acc;
  for (std::uint64_t mask = 0; mask < (1ULL << m); ++mask) {
    acc.add(n2 * graph_statistic(model, Graph::from_pair_mask(n, mask)));
  }
  return acc.value();
}

/// ψ_n = n^{-2} log Σ_G e^{n² T(G)}.
inline double enumerate_psi_n(const ModelSpec& model, int n) {
  return enumerate_log_partition(model, n) / (static_cast<double>(n) * n);
}

// ---------------------------------------------------------------------------
// Normalizing-constant estimators. Estimates are logs.

enum class EstimatorKind { importance, importance_self_normalized, mcmle, acceptance_ratio };
enum class AlphaKind { constant, geometric };

inline const char* to_string(EstimatorKind k) {
  switch (k) {
    case EstimatorKind::importance: return "importance";
    case EstimatorKind::importance_self_normalized: return "importance-self-normalized";
    case EstimatorKind::mcmle: return "mcmle";
    case EstimatorKind::acceptance_ratio: return "acceptance-ratio";
  }
  return "importance";
}

inline const char* to_string(AlphaKind k) { return k == AlphaKind::constant ? "constant" : "geometric"; }

struct EstimatorResult {
  /// log of the estimate: log z for importance sampling, log z(β)/z(β⁰) otherwise.
  double log_estimate = 0.0;
  long long n_samples = 0;
  EstimatorKind kind = EstimatorKind::importance;
  /// log of the closed-form bound on N·Var/mean² when one is available.
  std::optional<double> variance_bound;
  std::uint64_t seed = 0;
  /// Empirical standard error relative to the estimate, from the i.i.d. formula.
  /// Chain estimators ignore autocorrelation here, so it understates their error.
  double relative_std_error = 0.0;
};

namespace detail {

/// sqrt(Var(w)/N)/mean(w) from the log weights.
inline double relative_std_error(std::span<const double> log_w) {
  std::vector<double> sq(log_w.size());
  for (std::size_t i = 0; i < sq.size(); ++i) sq[i] = 2.0 * log_w[i];
  const double rel_var = std::exp(log_mean_exp(sq) - 2.0 * log_mean_exp(log_w)) - 1.0;
  return std::sqrt(std::max(rel_var, 0.0) / static_cast<double>(log_w.size()));
}

inline double scaled_difference(const std::vector<double>& densities, const ModelSpec& a, const ModelSpec* b,
                                double n2) {
  double acc = 0.0;
  for (std::size_t i = 0; i < densities.size(); ++i) {
    const double beta = a.terms()[i].beta - (b ? b->terms()[i].beta : 0.0);
    acc += beta * densities[i];
  }
  return n2 * acc;
}

inline Graph draw_er_graph(int n, double p, CounterRng& rng) {
  Graph g(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (rng.uniform() < p) g.add_edge(i, j);
  return g;
}

/// Runs the configured sampler at `model` and calls on_sample for N retained
/// states after a burn-in of one ninth of the retained steps (10% of the total).
template <class OnSample>
void sample_chain(const ModelSpec& model, const ChainConfig& cfg, CounterRng rng, long long N, OnSample&& on_sample) {
  cfg.validate();
  if (N < 1) throw std::invalid_argument("estimator needs N >= 1");
  Graph g = cfg.initial_graph();
  const long long kept_steps = N * cfg.thin;
  const long long burn_in = (kept_steps + 8) / 9;
  if (cfg.sampler == Sampler::metropolis) {
    if (model.size() != 1 || !model.terms()[0].motif.is_single_edge()) {
      throw std::invalid_argument("the Metropolis sampler needs an edge-only model");
    }
    const double beta = 2.0 * model.terms()[0].beta;
    detail::require_er_beta(beta);
    for (long long s = 0; s < burn_in; ++s) metropolis_step(g, beta, rng);
    for (long long k = 0; k < N; ++k) {
      for (long long s = 0; s < cfg.thin; ++s) metropolis_step(g, beta, rng);
      on_sample(g);
    }
    return;
  }
  const GlauberKernel kernel(model, cfg.n);
  for (long long s = 0; s < burn_in; ++s) glauber_step(g, kernel, rng);
  for (long long k = 0; k < N; ++k) {
    for (long long s = 0; s < cfg.thin; ++s) glauber_step(g, kernel, rng);
    on_sample(g);
  }
}

inline void require_same_motifs(const ModelSpec& a, const ModelSpec& b) {
  if (!a.same_motifs(b)) throw std::invalid_argument("target and reference models must list the same motifs");
}

}  // namespace detail

/// (1/N) Σ e^{n²T(G_j)}/Q(G_j) with G_j i.i.d. Erdős–Rényi(n, p). Unbiased for
/// z = Σ_G e^{n²T(G)}. Without a proposal, p is the dominant scalar maximiser u*.
inline EstimatorResult estimate_importance(const ModelSpec& model, int n, long long N, std::uint64_t seed,
                                           std::optional<double> proposal_p = std::nullopt) {
  if (n < 2) throw std::invalid_argument("estimator needs n >= 2");
  if (N < 1) throw std::invalid_argument("estimator needs N >= 1");
  const double p = proposal_p ? *proposal_p : maximize_scalar(model).dominant();
  if (!(p > 0.0 && p < 1.0)) throw std::domain_error("proposal density must lie in (0, 1)");
  const double m = static_cast<double>(pair_total(n));
  const double n2 = static_cast<double>(n) * n;
  const double lp = std::log(p);
  const double lq = std::log1p(-p);
  const CounterRng root(seed);
  std::vector<double> log_w(static_cast<std::size_t>(N));
  for (long long k = 0; k < N; ++k) {
    CounterRng rng = root.split(static_cast<std::uint64_t>(k));
    const Graph g = detail::draw_er_graph(n, p, rng);
    const double e = static_cast<double>(g.edge_count());
    log_w[k] = n2 * graph_statistic(model, g) - (e * lp + (m - e) * lq);
  }
  EstimatorResult r;
  r.log_estimate = log_mean_exp(log_w);
  r.n_samples = N;
  r.kind = EstimatorKind::importance;
  r.seed = seed;
  r.relative_std_error = detail::relative_std_error(log_w);
  return r;
}

/// Self-normalised form for an unnormalised proposal Q̄(G) = (p/(1-p))^{E(G)}:
/// Σ_j e^{n²T(G_j)}/Q̄(G_j) / Σ_j 1/Q̄(G_j) estimates z/2^m, reported here as
/// log z by adding m log 2.
inline EstimatorResult estimate_importance_self_normalized(const ModelSpec& model, int n, long long N,
                                                           std::uint64_t seed,
                                                           std::optional<double> proposal_p = std::nullopt) {
  if (n < 2) throw std::invalid_argument("estimator needs n >= 2");
  if (N < 1) throw std::invalid_argument("estimator needs N >= 1");
  const double p = proposal_p ? *proposal_p : maximize_scalar(model).dominant();
  if (!(p > 0.0 && p < 1.0)) throw std::domain_error("proposal density must lie in (0, 1)");
  const double m = static_cast<double>(pair_total(n));
  const double n2 = static_cast<double>(n) * n;
  const double odds = logit(p);
  const CounterRng root(seed);
  std::vector<double> log_num(static_cast<std::size_t>(N));
  std::vector<double> log_den(static_cast<std::size_t>(N));
  for (long long k = 0; k < N; ++k) {
    CounterRng rng = root.split(static_cast<std::uint64_t>(k));
    const Graph g = detail::draw_er_graph(n, p, rng);
    const double inv_q = -odds * static_cast<double>(g.edge_count());
    log_den[k] = inv_q;
    log_num[k] = n2 * graph_statistic(model, g) + inv_q;
  }
  EstimatorResult r;
  r.log_estimate = log_sum_exp(log_num) - log_sum_exp(log_den) + m * std::log(2.0);
  r.n_samples = N;
  r.kind = EstimatorKind::importance_self_normalized;
  r.seed = seed;
  r.relative_std_error = std::hypot(detail::relative_std_error(log_num), detail::relative_std_error(log_den));
  return r;
}

// ---------------------------------------------------------------------------
// Variance of chain averages.

/// f(G) = e^{aE(G)} in the eigenbasis of the Metropolis chain, unnormalized:
/// (1 - e^a)^j (1 + e^{a+β})^{m-j} with j = |ξ|.
inline double fourier_coeff_exp_edges(double a, double beta, int j, int m) {
  if (j < 0 || j > m) throw std::invalid_argument("xi weight must lie in [0, m]");
  return std::pow(1.0 - std::exp(a), j) * std::pow(1.0 + std::exp(a + beta), m - j);
}

/// Σ_G f(G) ψ_ξ(x_G) p_β(G) for f = e^{aE}: the unnormalized form times e^{βj/2}/(1+e^β)^m.
inline double fourier_coeff_exp_edges_normalized(double a, double beta, int j, int m) {
  if (j < 0 || j > m) throw std::invalid_argument("xi weight must lie in [0, m]");
  const double per_edge0 = (1.0 + std::exp(a + beta)) / (1.0 + std::exp(beta));
  const double per_edge1 = std::exp(0.5 * beta) * (1.0 - std::exp(a)) / (1.0 + std::exp(beta));
  return std::pow(per_edge1, j) * std::pow(per_edge0, m - j);
}

/// W_N(λ) = (N - 2λ - Nλ² + 2λ^{N+1}) / (1 - λ)², so that N² Var = Σ |f̂|² W_N.
inline double variance_weight(double lambda, long long N) {
  const double n = static_cast<double>(N);
  return (n - 2.0 * lambda - n * lambda * lambda + 2.0 * std::pow(lambda, n + 1.0)) /
         ((1.0 - lambda) * (1.0 - lambda));
}

struct McmcVariance {
  double exact = 0.0;       // Var of the N-sample mean
  double asymptotic = 0.0;  // lim N·Var
  double bound = 0.0;       // 2‖f‖²/(1 - λ₁)
};

/// Inputs run over ξ ≠ 0: coefficients f̂(ξ) and eigenvalues λ_ξ.
inline McmcVariance variance_mcmc_mean(std::span<const double> coefficients, std::span<const double> eigenvalues,
                                       long long N) {
  if (coefficients.size() != eigenvalues.size()) {
    throw std::invalid_argument("coefficient and eigenvalue lists differ in length");
  }
  if (N < 1) throw std::invalid_argument("variance needs N >= 1");
  McmcVariance v;
  double norm = 0.0;
  double lambda1 = -1.0;
  for (std::size_t k = 0; k < coefficients.size(); ++k) {
    const double lambda = eigenvalues[k];
    if (lambda >= 1.0) throw std::domain_error("eigenvalue 1 on a non-constant component: chain is not ergodic");
    const double c2 = coefficients[k] * coefficients[k];
    norm += c2;
    lambda1 = std::max(lambda1, lambda);
    v.exact += c2 * variance_weight(lambda, N);
    v.asymptotic += c2 * (1.0 + lambda) / (1.0 - lambda);
  }
  const double n = static_cast<double>(N);
  v.exact /= n * n;
  v.bound = coefficients.empty() ? 0.0 : 2.0 * norm / (1.0 - lambda1);
  return v;
}

/// Closed-form analysis of the Erdős–Rényi MCMLE estimate of z(β_t)/z(β_s)
/// from a Metropolis chain at β_s, i.e. the chain average of f = e^{(β_t-β_s)E}.
/// Ratios are relative to μ² and kept in log form.
struct ErMcmleAnalysis {
  int m = 0;
  double log_mean = 0.0;           // log μ = m log((1+e^{β_t})/(1+e^{β_s}))
  double mean_per_edge = 0.0;      // μ^{1/m}
  double second_eigenvalue = 0.0;  // 1 - (1+e^{-β_s})/m
  double log_norm_ratio = 0.0;     // log(‖f‖²_{2,0}/μ²)
  double log_asymptotic_ratio = 0.0;
  double log_bound_ratio = 0.0;    // log(σ̄²_∞/μ²) = log(2/(1-λ₁)) + log_norm_ratio
  // Closed-form approximation σ̄²_∞/μ² ≈ (m/D)[G^m - 1].
  double reference_denominator = 0.0;  // D = 2(1 + e^{-β_s})
  double reference_growth = 0.0;       // G = 1 + ((1 - e^{β_t-β_s})/(1 + e^{β_t}))²
  double reference_log_ratio = 0.0;    // log((m/D)[G^m - 1])

  [[nodiscard]] double sd_ratio_bound() const { return std::exp(0.5 * log_bound_ratio); }
  [[nodiscard]] double sd_ratio_reference() const { return std::exp(0.5 * reference_log_ratio); }
};

namespace detail {

/// log(e^x - 1) for x > 0.
inline double log_expm1(double x) { return x > 30.0 ? x + std::log1p(-std::exp(-x)) : std::log(std::expm1(x)); }

}  // namespace detail

inline ErMcmleAnalysis er_mcmle_analysis(double beta_sample, double beta_target, int n) {
  detail::require_er_beta(beta_sample);
  detail::require_er_beta(beta_target);
  if (n < 2) throw std::invalid_argument("analysis needs n >= 2");
  ErMcmleAnalysis a;
  a.m = static_cast<int>(pair_total(n));
  const double m = a.m;
  const double bs = beta_sample;
  const double bt = beta_target;
  const double shift = bt - bs;
  a.log_mean = m * (softplus(bt) - softplus(bs));
  a.mean_per_edge = std::exp(softplus(bt) - softplus(bs));
  a.second_eigenvalue = er_eigenvalue(1, bs, a.m);
  // |f̂(ξ)|²/μ² = r^{|ξ|}.
  const double r = std::exp(bs) * std::pow(1.0 - std::exp(shift), 2) / std::pow(1.0 + std::exp(bt), 2);
  if (r == 0.0) {
    a.log_norm_ratio = a.log_asymptotic_ratio = a.log_bound_ratio = -std::numeric_limits<double>::infinity();
  } else {
    a.log_norm_ratio = detail::log_expm1(m * std::log1p(r));
    LogSum acc;
    for (int j = 1; j <= a.m; ++j) {
      const double lambda = er_eigenvalue(j, bs, a.m);
      if (lambda <= -1.0) continue;
      acc.add(log_binomial(m, j) + j * std::log(r) + std::log1p(lambda) - std::log1p(-lambda));
    }
    a.log_asymptotic_ratio = acc.value();
    a.log_bound_ratio = std::log(2.0) - std::log1p(-a.second_eigenvalue) + a.log_norm_ratio;
  }
  a.reference_denominator = 2.0 * (1.0 + std::exp(-bs));
  const double t = (1.0 - std::exp(shift)) / (1.0 + std::exp(bt));
  a.reference_growth = 1.0 + t * t;
  a.reference_log_ratio = t == 0.0 ? -std::numeric_limits<double>::infinity()
                                   : std::log(m / a.reference_denominator) +
                                         detail::log_expm1(m * std::log1p(t * t));
  return a;
}

inline EstimatorResult estimate_mcmle(const ModelSpec& model, const ModelSpec& model0, long long N,
                                      const ChainConfig& chain) {
  detail::require_same_motifs(model, model0);
  const double n2 = static_cast<double>(chain.n) * chain.n;
  std::vector<double> log_w;
  log_w.reserve(static_cast<std::size_t>(std::max<long long>(N, 0)));
  detail::sample_chain(model0, chain, CounterRng(chain.seed), N, [&](const Graph& g) {
    log_w.push_back(detail::scaled_difference(graph_densities(model, g), model, &model0, n2));
  });
  EstimatorResult r;
  r.log_estimate = log_mean_exp(log_w);
  r.n_samples = N;
  r.kind = EstimatorKind::mcmle;
  r.seed = chain.seed;
  r.relative_std_error = detail::relative_std_error(log_w);
  const bool er = model.size() == 1 && model.terms()[0].motif.is_single_edge() &&
                  chain.sampler == Sampler::metropolis;
  if (er) {
    const auto a = er_mcmle_analysis(2.0 * model0.terms()[0].beta, 2.0 * model.terms()[0].beta, chain.n);
    r.variance_bound = a.log_bound_ratio - std::log(static_cast<double>(N));
  }
  return r;
}

/// Ratio of chain averages: numerator over a chain at β⁰, denominator over a chain
/// at β. With α ≡ 1 the terms are e^{n²T_β} and e^{n²T_β⁰}; the geometric choice
/// α = e^{-n²(T_β + T_β⁰)/2} turns them into e^{±n²(T_β - T_β⁰)/2}. Both chains
/// share one random stream, so identical models give a ratio of exactly 1.
inline EstimatorResult estimate_acceptance_ratio(const ModelSpec& model, const ModelSpec& model0, AlphaKind alpha,
                                                 long long N1, long long N2, const ChainConfig& chain) {
  detail::require_same_motifs(model, model0);
  const double n2 = static_cast<double>(chain.n) * chain.n;
  const CounterRng root(chain.seed);
  std::vector<double> num;
  std::vector<double> den;
  detail::sample_chain(model0, chain, root, N1, [&](const Graph& g) {
    const auto d = graph_densities(model, g);
    num.push_back(alpha == AlphaKind::constant ? detail::scaled_difference(d, model, nullptr, n2)
                                               : 0.5 * detail::scaled_difference(d, model, &model0, n2));
  });
  detail::sample_chain(model, chain, root, N2, [&](const Graph& g) {
    const auto d = graph_densities(model, g);
    den.push_back(alpha == AlphaKind::constant ? detail::scaled_difference(d, model0, nullptr, n2)
                                               : 0.5 * detail::scaled_difference(d, model0, &model, n2));
  });
  const double log_den = log_mean_exp(den);
  if (!std::isfinite(log_den)) {
    throw guard_error("acceptance-ratio denominator collapsed to " + std::to_string(log_den) +
                      " in log domain; the estimator is unusable for this pair");
  }
  EstimatorResult r;
  r.log_estimate = log_mean_exp(num) - log_den;
  r.n_samples = N1 + N2;
  r.kind = EstimatorKind::acceptance_ratio;
  r.seed = chain.seed;
  r.relative_std_error = std::hypot(detail::relative_std_error(num), detail::relative_std_error(den));
  return r;
}

}  // namespace ergm

#endif
