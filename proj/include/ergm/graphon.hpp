#ifndef ERGM_GRAPHON_HPP
#define ERGM_GRAPHON_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ergm/entropy.hpp"
#include "ergm/errors.hpp"
#include "ergm/motif.hpp"
#include "ergm/rng.hpp"

namespace ergm {

/// Real k×k block matrix, row-major. Used for kernels that are not graphons
/// (differences, Δ_H values), so entries are unconstrained.
struct BlockKernel {
  int k = 0;
  std::vector<double> data;

  BlockKernel() = default;
  BlockKernel(int blocks, double fill) : k(blocks), data(static_cast<std::size_t>(blocks) * blocks, fill) {}

  double& operator()(int a, int b) { return data[static_cast<std::size_t>(a) * k + b]; }
  double operator()(int a, int b) const { return data[static_cast<std::size_t>(a) * k + b]; }
};

/// Symmetric piecewise-constant graphon: block a occupies an interval of
/// length weights[a]; the value on block pair (a, b) is values(a, b) ∈ [0, 1].
class StepGraphon {
 public:
  static constexpr double kWeightTolerance = 1e-12;

  StepGraphon(std::vector<double> weights, std::vector<double> values)
      : weights_(std::move(weights)), values_(std::move(values)) {
    const auto k = weights_.size();
    if (k == 0) throw std::invalid_argument("step graphon needs at least one block");
    if (values_.size() != k * k) {
      throw std::invalid_argument("step graphon value matrix must be k×k with k = " + std::to_string(k));
    }
    double total = 0.0;
    for (double w : weights_) {
      if (!(w >= 0.0)) throw std::invalid_argument("block weights must be nonnegative");
      total += w;
    }
    if (std::abs(total - 1.0) > kWeightTolerance * static_cast<double>(std::max<std::size_t>(k, 1))) {
      throw std::invalid_argument("block weights must sum to 1, got " + std::to_string(total));
    }
    for (std::size_t a = 0; a < k; ++a) {
      for (std::size_t b = 0; b < k; ++b) {
        const double v = values_[a * k + b];
        if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument("graphon values must lie in [0, 1]");
        if (std::abs(v - values_[b * k + a]) > 1e-12) {
          throw std::invalid_argument("graphon value matrix must be symmetric");
        }
      }
    }
  }

  static StepGraphon constant(double u) { return StepGraphon({1.0}, {u}); }

  static StepGraphon equal_blocks(int k, std::vector<double> values) {
    if (k < 1) throw std::invalid_argument("step graphon needs at least one block");
    return StepGraphon(std::vector<double>(k, 1.0 / k), std::move(values));
  }

  [[nodiscard]] int blocks() const noexcept { return static_cast<int>(weights_.size()); }
  [[nodiscard]] const std::vector<double>& weights() const noexcept { return weights_; }
  [[nodiscard]] double weight(int a) const { return weights_[a]; }
  [[nodiscard]] double value(int a, int b) const { return values_[static_cast<std::size_t>(a) * blocks() + b]; }
  [[nodiscard]] std::span<const double> values() const noexcept { return values_; }

  /// Sets both (a, b) and (b, a).
  void set_value(int a, int b, double v) {
    if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument("graphon values must lie in [0, 1]");
    values_[static_cast<std::size_t>(a) * blocks() + b] = v;
    values_[static_cast<std::size_t>(b) * blocks() + a] = v;
  }

  [[nodiscard]] bool has_equal_weights(double tol = 1e-9) const {
    const double w0 = 1.0 / blocks();
    return std::all_of(weights_.begin(), weights_.end(), [&](double w) { return std::abs(w - w0) <= tol; });
  }

  [[nodiscard]] bool is_constant(double tol = 0.0) const {
    const auto [lo, hi] = std::minmax_element(values_.begin(), values_.end());
    return *hi - *lo <= tol;
  }

  /// h(σ(x), σ(y)) for a block permutation: new block a takes old block perm[a].
  [[nodiscard]] StepGraphon permuted(std::span<const int> perm) const {
    const int k = blocks();
    std::vector<double> w(k);
    std::vector<double> v(static_cast<std::size_t>(k) * k);
    for (int a = 0; a < k; ++a) {
      w[a] = weights_[perm[a]];
      for (int b = 0; b < k; ++b) v[static_cast<std::size_t>(a) * k + b] = value(perm[a], perm[b]);
    }
    return StepGraphon(std::move(w), std::move(v));
  }

  /// Same function, each block split into `factor` equal sub-blocks.
  [[nodiscard]] StepGraphon split_blocks(int factor) const {
    const int k = blocks();
    const int r = k * factor;
    std::vector<double> w(r);
    std::vector<double> v(static_cast<std::size_t>(r) * r);
    for (int a = 0; a < r; ++a) {
      w[a] = weights_[a / factor] / factor;
      for (int b = 0; b < r; ++b) v[static_cast<std::size_t>(a) * r + b] = value(a / factor, b / factor);
    }
    return StepGraphon(std::move(w), std::move(v));
  }

  /// 1 - h.
  [[nodiscard]] StepGraphon complement() const {
    std::vector<double> v(values_.size());
    std::transform(values_.begin(), values_.end(), v.begin(), [](double x) { return 1.0 - x; });
    return StepGraphon(weights_, std::move(v));
  }

  friend bool operator==(const StepGraphon& a, const StepGraphon& b) {
    return a.weights_ == b.weights_ && a.values_ == b.values_;
  }

 private:
  std::vector<double> weights_;
  std::vector<double> values_;
};

namespace detail {

inline constexpr double kBlockEnumerationLimit = 1e9;

inline void check_block_enumeration(int k, int vertices, int max_vertices) {
  if (vertices > max_vertices) {
    throw guard_error("instance too large: motif has " + std::to_string(vertices) +
                      " vertices, the bound is " + std::to_string(max_vertices));
  }
  double acc = 1.0;
  for (int i = 0; i < vertices; ++i) {
    acc *= k;
    if (acc > kBlockEnumerationLimit) {
      throw guard_error("instance too large: k^|V(H)| = " + std::to_string(k) + "^" + std::to_string(vertices) +
                        " exceeds the bound 1e9");
    }
  }
}

/// Sums Π_v w(x_v) Π_e h(x_r, x_s) over block assignments of the free vertices.
/// Vertices in `fixed` are pinned (their weights are not included); edge
/// `skip_edge` (index into h.edges(), or -1) is left out of the product.
class BlockSum {
 public:
  BlockSum(const Motif& motif, const StepGraphon& h) : motif_(motif), h_(h) {}

  double run(const std::vector<int>& fixed_vertices, const std::vector<int>& fixed_blocks, int skip_edge) {
    const int v = motif_.vertex_count();
    assign_.assign(v, -1);
    std::vector<bool> is_fixed(v, false);
    order_.clear();
    for (std::size_t i = 0; i < fixed_vertices.size(); ++i) {
      assign_[fixed_vertices[i]] = fixed_blocks[i];
      is_fixed[fixed_vertices[i]] = true;
      order_.push_back(fixed_vertices[i]);
    }
    for (int u = 0; u < v; ++u)
      if (!is_fixed[u]) order_.push_back(u);
    // edges checked when their later endpoint (in order_) is assigned
    std::vector<int> pos(v);
    for (int p = 0; p < v; ++p) pos[order_[p]] = p;
    closing_.assign(v, {});
    const auto& edges = motif_.edges();
    double fixed_factor = 1.0;
    for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
      if (e == skip_edge) continue;
      const auto [r, s] = edges[e];
      const int later = std::max(pos[r], pos[s]);
      if (later < static_cast<int>(fixed_vertices.size())) {
        fixed_factor *= h_.value(assign_[r], assign_[s]);
      } else {
        closing_[later].push_back(e);
      }
    }
    if (fixed_factor == 0.0) return 0.0;
    return fixed_factor * extend(static_cast<int>(fixed_vertices.size()));
  }

 private:
  double extend(int p) {
    if (p == static_cast<int>(order_.size())) return 1.0;
    const int u = order_[p];
    const auto& edges = motif_.edges();
    double total = 0.0;
    for (int a = 0; a < h_.blocks(); ++a) {
      const double w = h_.weight(a);
      if (w == 0.0) continue;
      assign_[u] = a;
      double factor = w;
      for (int e : closing_[p]) {
        factor *= h_.value(assign_[edges[e].first], assign_[edges[e].second]);
        if (factor == 0.0) break;
      }
      if (factor != 0.0) total += factor * extend(p + 1);
    }
    assign_[u] = -1;
    return total;
  }

  const Motif& motif_;
  const StepGraphon& h_;
  std::vector<int> assign_;
  std::vector<int> order_;
  std::vector<std::vector<int>> closing_;
};

}  // namespace detail

/// t(H, h): integral over [0,1]^|V(H)| of the product of h over the edges of H.
inline double hom_density_graphon(const Motif& motif, const StepGraphon& h) {
  detail::check_block_enumeration(h.blocks(), motif.vertex_count(), 8);
  return detail::BlockSum(motif, h).run({}, {}, -1);
}

/// ∬ I(h(x,y)) dx dy with I(u) = ½u log u + ½(1-u) log(1-u).
inline double rate_entropy(const StepGraphon& h) {
  const int k = h.blocks();
  double acc = 0.0;
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) acc += h.weight(a) * h.weight(b) * entropy_cost(h.value(a, b));
  return acc;
}

/// ∬ I_p(h(x,y)) dx dy; nonnegative, zero iff h ≡ p.
inline double rate_relative(const StepGraphon& h, double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::domain_error("rate_relative needs p in (0, 1), got " + std::to_string(p));
  const int k = h.blocks();
  double acc = 0.0;
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) acc += h.weight(a) * h.weight(b) * relative_cost(h.value(a, b), p);
  return acc;
}

/// Common refinement of two block partitions of [0,1].
struct Refinement {
  std::vector<double> weights;
  std::vector<int> f_block;
  std::vector<int> g_block;
};

/// Merges the block boundaries of f and g; boundaries closer than 1e-9 are identified.
inline Refinement common_refinement(const StepGraphon& f, const StepGraphon& g, double tol = 1e-9) {
  Refinement out;
  const int kf = f.blocks();
  const int kg = g.blocks();
  int i = 0;
  int j = 0;
  double cf = f.weight(0);
  double cg = g.weight(0);
  double pos = 0.0;
  while (i < kf && j < kg) {
    const double next = std::min(cf, cg);
    if (next - pos > tol) {
      out.weights.push_back(next - pos);
      out.f_block.push_back(i);
      out.g_block.push_back(j);
      pos = next;
    }
    if (cf - next <= tol && ++i < kf) cf += f.weight(i);
    if (cg - next <= tol && ++j < kg) cg += g.weight(j);
  }
  // Leftover boundaries must lie within tolerance of 1.
  for (; i < kf; ++i)
    if (f.weight(i) > tol) throw std::invalid_argument("block partitions cannot be refined to a common partition");
  for (; j < kg; ++j)
    if (g.weight(j) > tol) throw std::invalid_argument("block partitions cannot be refined to a common partition");
  // Re-normalise drift from merged boundaries.
  const double total = std::accumulate(out.weights.begin(), out.weights.end(), 0.0);
  if (std::abs(total - 1.0) > 1e-9) throw std::invalid_argument("block partitions do not both cover [0,1]");
  for (double& w : out.weights) w /= total;
  return out;
}

struct CutNormResult {
  double value = 0.0;
  /// Blocks (of the common refinement) forming the maximising rectangle S × T.
  std::vector<int> witness_s;
  std::vector<int> witness_t;
  std::vector<double> refined_weights;
  /// True when the maximum over all 0/1 choices was enumerated.
  bool exact = true;
};

struct CutNormOptions {
  int exact_block_limit = 24;
  int restarts = 32;
  std::uint64_t seed = 0x5eed;
};

namespace detail {

/// sup over s,t ∈ {0,1}^k of |Σ s_a t_b M_ab| for a weighted difference matrix M
/// (M_ab = w_a w_b D_ab). Fixing s, the best t takes every column with positive
/// (resp. negative) column sum, so only s is enumerated.
inline CutNormResult cut_norm_exact(const BlockKernel& m) {
  const int k = m.k;
  std::vector<double> col(k, 0.0);
  CutNormResult best;
  best.value = 0.0;
  std::uint64_t best_s = 0;
  int best_sign = 1;
  const std::uint64_t total = 1ULL << k;
  std::uint64_t gray_prev = 0;
  for (std::uint64_t step = 1; step < total; ++step) {
    const std::uint64_t gray = step ^ (step >> 1);
    const int flipped = std::countr_zero(gray ^ gray_prev);
    const double sign = (gray >> flipped) & 1ULL ? 1.0 : -1.0;
    for (int b = 0; b < k; ++b) col[b] += sign * m(flipped, b);
    gray_prev = gray;
    double pos = 0.0;
    double neg = 0.0;
    for (int b = 0; b < k; ++b) (col[b] > 0.0 ? pos : neg) += col[b];
    if (pos > best.value) {
      best.value = pos;
      best_s = gray;
      best_sign = 1;
    }
    if (-neg > best.value) {
      best.value = -neg;
      best_s = gray;
      best_sign = -1;
    }
  }
  if (best.value > 0.0) {
    std::fill(col.begin(), col.end(), 0.0);
    for (int a = 0; a < k; ++a) {
      if ((best_s >> a) & 1ULL) {
        best.witness_s.push_back(a);
        for (int b = 0; b < k; ++b) col[b] += m(a, b);
      }
    }
    for (int b = 0; b < k; ++b)
      if (best_sign * col[b] > 0.0) best.witness_t.push_back(b);
  }
  best.exact = true;
  return best;
}

/// Alternating maximisation from random starts; a certified lower bound.
inline CutNormResult cut_norm_alternating(const BlockKernel& m, int restarts, std::uint64_t seed) {
  const int k = m.k;
  CounterRng rng(seed);
  CutNormResult best;
  std::vector<char> s(k);
  std::vector<char> t(k);
  std::vector<double> acc(k);
  for (int r = 0; r < restarts; ++r) {
    for (double sign : {1.0, -1.0}) {
      for (int a = 0; a < k; ++a) s[a] = static_cast<char>(rng.below(2));
      double value = -1.0;
      for (int iter = 0; iter < 1000; ++iter) {
        std::fill(acc.begin(), acc.end(), 0.0);
        for (int a = 0; a < k; ++a)
          if (s[a])
            for (int b = 0; b < k; ++b) acc[b] += sign * m(a, b);
        for (int b = 0; b < k; ++b) t[b] = acc[b] > 0.0;
        std::fill(acc.begin(), acc.end(), 0.0);
        for (int a = 0; a < k; ++a)
          for (int b = 0; b < k; ++b)
            if (t[b]) acc[a] += sign * m(a, b);
        double next = 0.0;
        for (int a = 0; a < k; ++a) {
          s[a] = acc[a] > 0.0;
          if (s[a]) next += acc[a];
        }
        if (next <= value + 1e-15) break;
        value = next;
      }
      if (value > best.value) {
        best.value = value;
        best.witness_s.clear();
        best.witness_t.clear();
        for (int a = 0; a < k; ++a) {
          if (s[a]) best.witness_s.push_back(a);
          if (t[a]) best.witness_t.push_back(a);
        }
      }
    }
  }
  best.value = std::max(best.value, 0.0);
  best.exact = false;
  return best;
}

inline CutNormResult cut_norm_of(const BlockKernel& m, const CutNormOptions& opt) {
  return m.k <= opt.exact_block_limit ? cut_norm_exact(m) : cut_norm_alternating(m, opt.restarts, opt.seed);
}

}  // namespace detail

/// d_□(f, g) = sup over measurable S, T of |∫_{S×T} (f - g)|, on the common
/// refinement of the two block partitions. Exact for up to 24 refined blocks.
inline CutNormResult cut_norm_diff(const StepGraphon& f, const StepGraphon& g, const CutNormOptions& opt = {}) {
  const Refinement r = common_refinement(f, g);
  const int k = static_cast<int>(r.weights.size());
  BlockKernel m(k, 0.0);
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b)
      m(a, b) = r.weights[a] * r.weights[b] *
                (f.value(r.f_block[a], r.f_block[b]) - g.value(r.g_block[a], r.g_block[b]));
  CutNormResult res = detail::cut_norm_of(m, opt);
  res.value = std::clamp(res.value, 0.0, 1.0);
  res.refined_weights = r.weights;
  return res;
}

struct CutDistanceResult {
  double value = 0.0;
  /// Block permutation applied to g at the optimum (on the common equal-block partition).
  std::vector<int> permutation;
  /// True if all permutations were searched (k <= 8); otherwise simulated annealing.
  bool exhaustive = true;
};

struct CutDistanceOptions {
  int exhaustive_block_limit = 8;
  int annealing_iterations = 4000;
  std::uint64_t seed = 0xa11ea1;
};

/// Upper bound on δ_□(f, g): minimum over block permutations σ of d_□(f, g∘σ).
/// Both graphons must have equal block weights; they are refined to lcm(k_f, k_g) blocks.
inline CutDistanceResult cut_distance_upper(const StepGraphon& f, const StepGraphon& g,
                                            const CutDistanceOptions& opt = {}) {
  if (!f.has_equal_weights() || !g.has_equal_weights()) {
    throw std::invalid_argument("cut_distance_upper needs equal-weight block partitions");
  }
  const int k = std::lcm(f.blocks(), g.blocks());
  if (k > 64) throw guard_error("common equal-block refinement has more than 64 blocks");
  const StepGraphon fr = f.split_blocks(k / f.blocks());
  const StepGraphon gr = g.split_blocks(k / g.blocks());
  const double w2 = 1.0 / (static_cast<double>(k) * k);
  const CutNormOptions norm_opt{.exact_block_limit = 16, .restarts = 8, .seed = opt.seed};

  auto distance_for = [&](const std::vector<int>& perm) {
    BlockKernel m(k, 0.0);
    for (int a = 0; a < k; ++a)
      for (int b = 0; b < k; ++b) m(a, b) = w2 * (fr.value(a, b) - gr.value(perm[a], perm[b]));
    return detail::cut_norm_of(m, norm_opt).value;
  };

  CutDistanceResult best;
  std::vector<int> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  best.permutation = perm;
  best.value = distance_for(perm);
  if (k <= opt.exhaustive_block_limit) {
    while (std::next_permutation(perm.begin(), perm.end())) {
      const double d = distance_for(perm);
      if (d < best.value) {
        best.value = d;
        best.permutation = perm;
      }
    }
    best.exhaustive = true;
    return best;
  }
  CounterRng rng(opt.seed);
  double current = best.value;
  double temperature = std::max(current, 1e-3) * 0.1;
  const double cooling = std::pow(1e-4, 1.0 / opt.annealing_iterations);
  for (int it = 0; it < opt.annealing_iterations; ++it) {
    const auto a = static_cast<int>(rng.below(k));
    auto b = static_cast<int>(rng.below(k - 1));
    if (b >= a) ++b;
    std::swap(perm[a], perm[b]);
    const double d = distance_for(perm);
    if (d <= current || rng.uniform() < std::exp((current - d) / temperature)) {
      current = d;
      if (d < best.value) {
        best.value = d;
        best.permutation = perm;
      }
    } else {
      std::swap(perm[a], perm[b]);
    }
    temperature *= cooling;
  }
  best.exhaustive = false;
  return best;
}

/// Δ_H h on each block pair: Σ over edges (r,s) of H of the integral over the
/// other vertices of the product of h over the remaining edges, with x_r, x_s
/// pinned to the pair. Each edge term is symmetrised in (x, y), so the result
/// is a symmetric kernel and ∬ g Δ_H h is the derivative of t(H, h + εg) at 0
/// for every symmetric g. For a single edge the result is identically 1.
inline BlockKernel delta_H(const Motif& motif, const StepGraphon& h) {
  detail::check_block_enumeration(h.blocks(), motif.vertex_count(), 6);
  const int k = h.blocks();
  BlockKernel out(k, 0.0);
  if (motif.is_single_edge()) {
    std::fill(out.data.begin(), out.data.end(), 1.0);
    return out;
  }
  detail::BlockSum sum(motif, h);
  const auto& edges = motif.edges();
  for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
    const auto [r, s] = edges[e];
    for (int a = 0; a < k; ++a) {
      for (int b = a; b < k; ++b) {
        double term = sum.run({r, s}, {a, b}, e);
        term += a == b ? term : sum.run({r, s}, {b, a}, e);
        term *= 0.5;
        out(a, b) += term;
        if (a != b) out(b, a) += term;
      }
    }
  }
  return out;
}

}  // namespace ergm

#endif
