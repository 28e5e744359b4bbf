#ifndef ERGM_VARIATIONAL_HPP
#define ERGM_VARIATIONAL_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "ergm/entropy.hpp"
#include "ergm/errors.hpp"
#include "ergm/graph.hpp"
#include "ergm/graphon.hpp"
#include "ergm/model.hpp"
#include "ergm/rng.hpp"

namespace ergm {

// ---------------------------------------------------------------------------
// Scalar reduction: ℓ(u) = Σ β_i u^{e(H_i)} - I(u) on [0, 1].

inline double scalar_objective(const ModelSpec& model, double u) {
  if (!(u >= 0.0 && u <= 1.0)) throw std::domain_error("scalar objective needs u in [0, 1]");
  double acc = 0.0;
  for (const auto& t : model.terms()) acc += t.beta * std::pow(u, t.motif.edge_count());
  return acc - entropy_cost(u);
}

namespace detail {

/// Σ β_i e_i u^{e_i - 1}: the derivative of the polynomial part.
inline double polynomial_slope(const ModelSpec& model, double u) {
  double acc = 0.0;
  for (const auto& t : model.terms()) {
    const int e = t.motif.edge_count();
    acc += t.beta * e * std::pow(u, e - 1);
  }
  return acc;
}

/// Stationarity in logit coordinates: F(s) = Σ β_i e_i σ(s)^{e_i-1} - s/2.
/// Zeros of F are the critical points of ℓ; F decreasing through 0 marks a local max.
inline double logit_stationarity(const ModelSpec& model, double s) {
  return polynomial_slope(model, logistic(s)) - 0.5 * s;
}

}  // namespace detail

struct MaximizerReport {
  /// Global maximisers sorted by u.
  std::vector<double> maximizers;
  /// ℓ at each maximiser (same order).
  std::vector<double> objective_values;
  /// |Σ β_i e_i u^{e_i-1} - ½ log(u/(1-u))| at each maximiser.
  std::vector<double> stationarity_residuals;
  double psi = 0.0;
  double multiplicity_tolerance = 1e-7;
  /// Every local maximiser found, sorted by u (includes the global ones).
  std::vector<double> local_maximizers;

  [[nodiscard]] std::size_t multiplicity() const noexcept { return maximizers.size(); }

  /// The maximiser with the largest objective value.
  [[nodiscard]] double dominant() const {
    const auto it = std::max_element(objective_values.begin(), objective_values.end());
    return maximizers[static_cast<std::size_t>(it - objective_values.begin())];
  }
};

struct ScalarOptions {
  int grid_points = 10000;
  double multiplicity_tolerance = 1e-7;
};

/// All global maximisers of ℓ. Critical points are bracketed on a uniform grid in
/// logit coordinates s = log(u/(1-u)), which covers every root because
/// |s| <= 2 Σ|β_i| e_i at a critical point, then bisected to machine precision.
inline MaximizerReport maximize_scalar(const ModelSpec& model, const ScalarOptions& opt = {}) {
  double slope_bound = 0.0;
  for (const auto& t : model.terms()) slope_bound += std::abs(t.beta) * t.motif.edge_count();
  const double s_max = 2.0 * slope_bound + 1.0;
  const int n = std::max(opt.grid_points, 3);
  const double ds = 2.0 * s_max / (n - 1);

  std::vector<double> roots;
  double s_prev = -s_max;
  double f_prev = detail::logit_stationarity(model, s_prev);
  for (int i = 1; i < n; ++i) {
    const double s = i == n - 1 ? s_max : -s_max + i * ds;
    const double f = detail::logit_stationarity(model, s);
    if (f_prev > 0.0 && f <= 0.0) {
      double lo = s_prev;
      double hi = s;
      for (int it = 0; it < 200 && hi - lo > 4e-16 * std::max(1.0, std::abs(lo)); ++it) {
        const double mid = 0.5 * (lo + hi);
        (detail::logit_stationarity(model, mid) > 0.0 ? lo : hi) = mid;
      }
      roots.push_back(0.5 * (lo + hi));
    }
    s_prev = s;
    f_prev = f;
  }

  MaximizerReport report;
  report.multiplicity_tolerance = opt.multiplicity_tolerance;
  std::vector<double> values;
  for (double s : roots) {
    const double u = logistic(s);
    report.local_maximizers.push_back(u);
    values.push_back(scalar_objective(model, u));
  }
  report.psi = *std::max_element(values.begin(), values.end());
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (values[i] >= report.psi - opt.multiplicity_tolerance) {
      report.maximizers.push_back(report.local_maximizers[i]);
      report.objective_values.push_back(values[i]);
      report.stationarity_residuals.push_back(std::abs(detail::logit_stationarity(model, roots[i])));
    }
  }
  return report;
}

/// lim ψ_n under the scalar reduction: sup_u ℓ(u).
inline double psi_limit_scalar(const ModelSpec& model) { return maximize_scalar(model).psi; }

enum class Applicability { nonneg_valid, nonpos_star_valid, contraction_valid, unknown };

inline const char* to_string(Applicability a) {
  switch (a) {
    case Applicability::nonneg_valid: return "nonneg_valid";
    case Applicability::nonpos_star_valid: return "nonpos_star_valid";
    case Applicability::contraction_valid: return "contraction_valid";
    case Applicability::unknown: return "unknown";
  }
  return "unknown";
}

/// Which sufficient condition certifies that every maximiser is constant, so
/// that the scalar problem gives the limiting free energy. Single-edge terms
/// are unconstrained.
inline Applicability applicability_check(const ModelSpec& model) {
  bool all_nonneg = true;
  bool stars_nonpos = true;
  double contraction = 0.0;
  for (const auto& t : model.terms()) {
    if (t.motif.is_single_edge()) continue;
    const int e = t.motif.edge_count();
    if (t.beta < 0.0) all_nonneg = false;
    if (t.beta > 0.0 || !t.motif.star_leaves()) stars_nonpos = false;
    contraction += std::abs(t.beta) * e * (e - 1);
  }
  if (all_nonneg) return Applicability::nonneg_valid;
  if (stars_nonpos) return Applicability::nonpos_star_valid;
  if (contraction < 2.0) return Applicability::contraction_valid;
  return Applicability::unknown;
}

// ---------------------------------------------------------------------------
// Edge-triangle model diagnostics.

enum class Regime { sparse, dense, near_transition };

inline const char* to_string(Regime r) {
  switch (r) {
    case Regime::sparse: return "sparse";
    case Regime::dense: return "dense";
    case Regime::near_transition: return "near-transition";
  }
  return "near-transition";
}

struct DegeneracyReport {
  double c1 = 0.0;
  double c2 = 0.0;
  std::optional<double> q_estimate;
  /// Set when a β₂ was supplied: which side of q it falls on.
  std::optional<Regime> regime;
};

struct DegeneracyOptions {
  double q_tolerance = 1e-6;
  bool locate_q = true;
  /// Half-width around q reported as near-transition.
  double transition_band = 1e-3;
};

/// c1 = e^{β₁}/(1+e^{β₁}) and c2 = 1 + 1/(2β₁) for β₁ < 0 with c1 < c2, and the
/// β₂ at which the edge-triangle maximiser jumps from below c1 to above c2.
inline DegeneracyReport degeneracy_constants(double beta1, std::optional<double> beta2 = std::nullopt,
                                             const DegeneracyOptions& opt = {}) {
  if (!(beta1 < 0.0)) throw std::domain_error("degeneracy constants need beta1 < 0");
  DegeneracyReport r;
  r.c1 = logistic(beta1);
  r.c2 = 1.0 + 1.0 / (2.0 * beta1);
  if (r.c1 >= r.c2) {
    throw std::domain_error("beta1 not negative enough: c1 = " + std::to_string(r.c1) +
                            " is not below c2 = " + std::to_string(r.c2));
  }
  if (!opt.locate_q) return r;
  auto u_star = [&](double b2) { return maximize_scalar(ModelSpec::edge_triangle(beta1, b2)).dominant(); };
  double lo = 0.0;
  double hi = 1.0;
  while (u_star(hi) <= r.c2) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e7) throw guard_error("no dense regime found for beta2 up to 1e7");
  }
  while (hi - lo > opt.q_tolerance) {
    const double mid = 0.5 * (lo + hi);
    const double u = u_star(mid);
    if (u > r.c2) {
      hi = mid;
    } else if (u < r.c1) {
      lo = mid;
    } else {
      throw std::logic_error("edge-triangle maximiser found in the excluded interval (c1, c2)");
    }
  }
  r.q_estimate = 0.5 * (lo + hi);
  if (beta2) {
    if (std::abs(*beta2 - *r.q_estimate) <= opt.transition_band) {
      r.regime = Regime::near_transition;
    } else {
      r.regime = *beta2 < *r.q_estimate ? Regime::sparse : Regime::dense;
    }
  }
  return r;
}

struct PhasePoint {
  double beta2 = 0.0;
  double u_star = 0.0;
  double psi = 0.0;
  int multiplicity = 1;
};

struct PhaseTransition {
  double beta2 = 0.0;
  /// Coexisting maximisers on either side of the jump (lower, upper).
  double u_low = 0.0;
  double u_high = 0.0;
  double psi = 0.0;
  /// Global maximisers at beta2; 2 when the bisection resolves the tie.
  int multiplicity = 1;
};

struct PhaseScan {
  std::vector<PhasePoint> points;
  std::vector<PhaseTransition> transitions;
};

struct PhaseScanOptions {
  double jump_threshold = 0.1;
  double bisection_width = 1e-6;
  /// Bisection continues to this width so both maximisers tie within the multiplicity tolerance.
  double coexistence_width = 1e-12;
  unsigned threads = 1;
};

namespace detail {

inline PhasePoint phase_point(double beta1, double beta2) {
  const auto rep = maximize_scalar(ModelSpec::edge_triangle(beta1, beta2));
  return {beta2, rep.dominant(), rep.psi, static_cast<int>(rep.multiplicity())};
}

/// Runs fn(i) for i in [0, count) on up to `threads` workers; results are indexed, so order is fixed.
template <class Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
  threads = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(count)));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      for (std::size_t i = t; i < count; i += threads) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace detail

/// u*(β₁, β₂) on an evenly spaced β₂ grid of `steps` points; adjacent jumps
/// larger than the threshold are bisected down to the requested width.
inline PhaseScan phase_scan(double beta1, double beta2_lo, double beta2_hi, int steps,
                            const PhaseScanOptions& opt = {}) {
  if (steps < 2) throw std::invalid_argument("phase scan needs at least 2 grid points");
  PhaseScan scan;
  scan.points.resize(steps);
  detail::parallel_for(static_cast<std::size_t>(steps), opt.threads, [&](std::size_t i) {
    const double b2 = beta2_lo + (beta2_hi - beta2_lo) * static_cast<double>(i) / (steps - 1);
    scan.points[i] = detail::phase_point(beta1, b2);
  });
  for (int i = 0; i + 1 < steps; ++i) {
    const auto& a = scan.points[i];
    const auto& b = scan.points[i + 1];
    if (std::abs(b.u_star - a.u_star) <= opt.jump_threshold) continue;
    double lo = a.beta2;
    double hi = b.beta2;
    double u_lo = a.u_star;
    double u_hi = b.u_star;
    while (hi - lo > std::min(opt.bisection_width, opt.coexistence_width)) {
      const double mid = 0.5 * (lo + hi);
      const double u = detail::phase_point(beta1, mid).u_star;
      if (std::abs(u - u_lo) <= std::abs(u - u_hi)) {
        lo = mid;
        u_lo = u;
      } else {
        hi = mid;
        u_hi = u;
      }
    }
    PhaseTransition tr;
    tr.beta2 = 0.5 * (lo + hi);
    tr.u_low = std::min(u_lo, u_hi);
    tr.u_high = std::max(u_lo, u_hi);
    const auto rep = maximize_scalar(ModelSpec::edge_triangle(beta1, tr.beta2));
    tr.psi = rep.psi;
    tr.multiplicity = static_cast<int>(rep.multiplicity());
    scan.transitions.push_back(tr);
  }
  return scan;
}

/// ⊤_{β₁,β₂}(G) = 2β₁E/n² + 6β₂Δ/n³ - sup_u (β₁u + β₂u³ - I(u)).
inline double top_statistic(double beta1, double beta2, const Graph& g) {
  const double n = g.vertex_count();
  if (g.vertex_count() < 3) throw std::domain_error("top statistic needs n >= 3");
  const double stat = 2.0 * beta1 * static_cast<double>(g.edge_count()) / (n * n) +
                      6.0 * beta2 * static_cast<double>(triangle_count(g)) / (n * n * n);
  return stat - psi_limit_scalar(ModelSpec::edge_triangle(beta1, beta2));
}

// ---------------------------------------------------------------------------
// Euler-Lagrange fixed point on step graphons.

struct EulerLagrangeResult {
  StepGraphon graphon;
  /// sup-norm of h - Φ(h) at the returned iterate.
  double residual = 0.0;
  int iterations = 0;
};

/// Carries the last iterate when the damped iteration does not settle.
class euler_lagrange_divergence : public convergence_error {
 public:
  euler_lagrange_divergence(StepGraphon last, double residual, long iterations)
      : convergence_error("Euler-Lagrange iteration did not converge (residual " + std::to_string(residual) +
                              " after " + std::to_string(iterations) + " iterations)",
                          residual, iterations),
        last_(std::move(last)) {}

  [[nodiscard]] const StepGraphon& last_iterate() const noexcept { return last_; }

 private:
  StepGraphon last_;
};

/// Φ(h) = e^{2 Σ β_i Δ_{H_i} h} / (1 + e^{2 Σ β_i Δ_{H_i} h}), blockwise.
inline StepGraphon euler_lagrange_map(const ModelSpec& model, const StepGraphon& h) {
  const int k = h.blocks();
  BlockKernel field(k, 0.0);
  for (const auto& t : model.terms()) {
    const BlockKernel d = delta_H(t.motif, h);
    for (std::size_t i = 0; i < field.data.size(); ++i) field.data[i] += t.beta * d.data[i];
  }
  std::vector<double> v(field.data.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = logistic(2.0 * field.data[i]);
  return StepGraphon(h.weights(), std::move(v));
}

inline double sup_distance(const StepGraphon& a, const StepGraphon& b) {
  double d = 0.0;
  const auto va = a.values();
  const auto vb = b.values();
  for (std::size_t i = 0; i < va.size(); ++i) d = std::max(d, std::abs(va[i] - vb[i]));
  return d;
}

/// Damped iteration h <- (1-α) h + α Φ(h) until the sup-norm step is below `tol`.
inline EulerLagrangeResult euler_lagrange_solve(const ModelSpec& model, const StepGraphon& init,
                                                double damping = 0.5, int max_iter = 10000, double tol = 1e-9) {
  if (!(damping > 0.0 && damping <= 1.0)) throw std::domain_error("damping must lie in (0, 1]");
  StepGraphon h = init;
  for (int it = 1; it <= max_iter; ++it) {
    const StepGraphon phi = euler_lagrange_map(model, h);
    std::vector<double> next(phi.values().size());
    const auto vh = h.values();
    const auto vp = phi.values();
    double step = 0.0;
    for (std::size_t i = 0; i < next.size(); ++i) {
      next[i] = (1.0 - damping) * vh[i] + damping * vp[i];
      step = std::max(step, std::abs(next[i] - vh[i]));
    }
    h = StepGraphon(h.weights(), std::move(next));
    if (step < tol) {
      const double residual = sup_distance(h, euler_lagrange_map(model, h));
      return {h, residual, it};
    }
  }
  const double residual = sup_distance(h, euler_lagrange_map(model, h));
  throw euler_lagrange_divergence(h, residual, max_iter);
}

// ---------------------------------------------------------------------------
// Heuristic search over non-constant step graphons.

struct GraphonSearchOptions {
  std::vector<int> block_counts{2, 3, 4};
  int restarts_per_block_count = 4;
  int max_iter = 20000;
  double lower = 1e-6;
  double upper = 1.0 - 1e-6;
  /// Stop when every free gradient component is below this.
  double tolerance = 1e-10;
  std::uint64_t seed = 0x9a0f;
};

struct GraphonSearchResult {
  StepGraphon graphon = StepGraphon::constant(0.5);
  /// T(h) - I(h) at the returned graphon: a lower bound on the limiting free energy.
  double objective = 0.0;
  /// Largest |Σ β_i Δ_{H_i} h - ½ logit h| over blocks not pinned at a bound.
  double stationarity_residual = 0.0;
  int iterations = 0;
};

namespace detail {

inline BlockKernel objective_gradient(const ModelSpec& model, const StepGraphon& h) {
  const int k = h.blocks();
  BlockKernel g(k, 0.0);
  for (const auto& t : model.terms()) {
    const BlockKernel d = delta_H(t.motif, h);
    for (std::size_t i = 0; i < g.data.size(); ++i) g.data[i] += t.beta * d.data[i];
  }
  const auto v = h.values();
  for (std::size_t i = 0; i < g.data.size(); ++i) g.data[i] -= 0.5 * logit(v[i]);
  return g;
}

/// Largest gradient component not blocked by the box constraint.
inline double projected_residual(const StepGraphon& h, const BlockKernel& grad, const GraphonSearchOptions& opt) {
  double r = 0.0;
  for (int a = 0; a < h.blocks(); ++a) {
    for (int b = 0; b < h.blocks(); ++b) {
      const double v = h.value(a, b);
      const double g = grad(a, b);
      const bool pinned = (v <= opt.lower && g < 0.0) || (v >= opt.upper && g > 0.0);
      if (!pinned) r = std::max(r, std::abs(g));
    }
  }
  return r;
}

inline GraphonSearchResult ascend(const ModelSpec& model, StepGraphon h, const GraphonSearchOptions& opt) {
  const int k = h.blocks();
  double value = graphon_objective(model, h);
  double eta = 0.1;
  int it = 0;
  BlockKernel grad = objective_gradient(model, h);
  while (it < opt.max_iter && projected_residual(h, grad, opt) > opt.tolerance) {
    ++it;
    bool accepted = false;
    while (!accepted && eta > 1e-14) {
      std::vector<double> next(h.values().begin(), h.values().end());
      for (int a = 0; a < k; ++a) {
        for (int b = a; b < k; ++b) {
          const double v = std::clamp(h.value(a, b) + eta * grad(a, b), opt.lower, opt.upper);
          next[static_cast<std::size_t>(a) * k + b] = v;
          next[static_cast<std::size_t>(b) * k + a] = v;
        }
      }
      StepGraphon candidate(h.weights(), std::move(next));
      const double cv = graphon_objective(model, candidate);
      if (cv >= value) {
        accepted = true;
        h = std::move(candidate);
        value = cv;
        eta = std::min(eta * 1.5, 1e3);
      } else {
        eta *= 0.5;
      }
    }
    if (!accepted) break;
    grad = objective_gradient(model, h);
  }
  GraphonSearchResult res;
  res.objective = value;
  res.iterations = it;
  res.stationarity_residual = projected_residual(h, grad, opt);
  res.graphon = std::move(h);
  return res;
}

}  // namespace detail

/// Projected gradient ascent of T(h) - I(h) over equal-block step graphons from
/// seeded random starts. Uses Δ_H as the gradient of t(H, ·). The best value found
/// is a lower bound on the limiting free energy, never a certificate.
inline GraphonSearchResult maximize_graphon(const ModelSpec& model, const GraphonSearchOptions& opt = {}) {
  CounterRng rng(opt.seed);
  std::optional<GraphonSearchResult> best;
  for (int k : opt.block_counts) {
    for (int r = 0; r < opt.restarts_per_block_count; ++r) {
      // Odd restarts start near a planted partition: sparse inside blocks, denser across.
      const bool planted = r % 2 == 1;
      std::vector<double> v(static_cast<std::size_t>(k) * k);
      for (int a = 0; a < k; ++a) {
        for (int b = a; b < k; ++b) {
          const double u = rng.uniform();
          const double x = std::clamp(planted ? (a == b ? 0.1 * u : 0.3 + 0.4 * u) : u, opt.lower, opt.upper);
          v[static_cast<std::size_t>(a) * k + b] = x;
          v[static_cast<std::size_t>(b) * k + a] = x;
        }
      }
      auto res = detail::ascend(model, StepGraphon::equal_blocks(k, std::move(v)), opt);
      if (!best || res.objective > best->objective) best = std::move(res);
    }
  }
  return *best;
}

/// Compares the best constant graphon with the bipartite test graphon (p off the
/// diagonal blocks, 0 on them) for the edge-triangle model. If the bipartite value
/// is larger, no constant function maximises T - I (a sufficient condition only).
struct SymmetryBreakingCheck {
  double best_constant = 0.0;
  double bipartite_value = 0.0;
  bool breaks_symmetry = false;
};

inline SymmetryBreakingCheck symmetry_breaking_check(double beta1, double beta2) {
  SymmetryBreakingCheck c;
  c.best_constant = psi_limit_scalar(ModelSpec::edge_triangle(beta1, beta2));
  // T - I at p·g equals -I_p(p·g) - ½log(1-p) = ¼ log(1/(1-p)) since t(triangle, g) = 0.
  c.bipartite_value = 0.25 * softplus(2.0 * beta1);
  c.breaks_symmetry = c.best_constant < c.bipartite_value;
  return c;
}

// ---------------------------------------------------------------------------
// Limits for large negative / large positive coefficients.

struct ExtremalLimit {
  StepGraphon graphon;
  double psi_limit = 0.0;
  int chromatic = 2;
  double p = 0.5;
};

/// The β₂ → -∞ limit for T = β₁ t(edge) + β₂ t(H): p times the complete
/// (χ(H)-1)-partite graphon with p = e^{2β₁}/(1+e^{2β₁}), and
/// ψ → (χ-2)/(2(χ-1)) log(1/(1-p)).
inline ExtremalLimit extremal_limit(const Motif& motif, double beta1) {
  ExtremalLimit out{StepGraphon::constant(0.0), 0.0, chromatic_number(motif), logistic(2.0 * beta1)};
  const int parts = out.chromatic - 1;
  std::vector<double> v(static_cast<std::size_t>(parts) * parts, 0.0);
  for (int a = 0; a < parts; ++a)
    for (int b = 0; b < parts; ++b)
      if (a != b) v[static_cast<std::size_t>(a) * parts + b] = out.p;
  out.graphon = StepGraphon::equal_blocks(parts, std::move(v));
  // log(1/(1-p)) = log(1 + e^{2β₁})
  out.psi_limit = static_cast<double>(out.chromatic - 2) / (2.0 * (out.chromatic - 1)) * softplus(2.0 * beta1);
  return out;
}

struct TransitivityLimit {
  StepGraphon graphon;
  /// T(f) - S(1-f) on the random test graphons (should be the constant β).
  double identity_constant = 0.0;
  /// Spread of T(f) - S(1-f) across the test graphons.
  double identity_residual = 0.0;
};

/// Model T = 3β t(edge) - 3β t(2-star) + β t(triangle).
inline ModelSpec transitivity_model(double beta) {
  return ModelSpec({{Motif::edge(), 3.0 * beta}, {Motif::star(2), -3.0 * beta}, {Motif::triangle(), beta}});
}

/// Two equal clumps, complete inside and half-dense across: the β → ∞ limit of the
/// transitivity model. Also checks numerically that T(f) = const + S(1-f) with
/// S(g) = -β t(triangle, g).
inline TransitivityLimit transitivity_limit(double beta, int samples = 100, std::uint64_t seed = 0x7a5) {
  if (!(beta > 0.0)) throw std::domain_error("transitivity limit needs beta > 0");
  TransitivityLimit out{StepGraphon::equal_blocks(2, {1.0, 0.5, 0.5, 1.0}), 0.0, 0.0};
  const ModelSpec t_model = transitivity_model(beta);
  const ModelSpec s_model({{Motif::triangle(), -beta}});
  CounterRng rng(seed);
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (int i = 0; i < samples; ++i) {
    const int k = 3;
    std::vector<double> w{rng.uniform() + 0.1, rng.uniform() + 0.1, rng.uniform() + 0.1};
    const double total = w[0] + w[1] + w[2];
    for (double& x : w) x /= total;
    w[2] = 1.0 - w[0] - w[1];
    std::vector<double> v(k * k);
    for (int a = 0; a < k; ++a)
      for (int b = a; b < k; ++b) v[a * k + b] = v[b * k + a] = rng.uniform();
    const StepGraphon f(std::move(w), std::move(v));
    const double diff = graphon_statistic(t_model, f) - graphon_statistic(s_model, f.complement());
    lo = std::min(lo, diff);
    hi = std::max(hi, diff);
  }
  out.identity_constant = 0.5 * (lo + hi);
  out.identity_residual = hi - lo;
  return out;
}

}  // namespace ergm

#endif
