#ifndef ERGM_TESTS_ORACLES_HPP
#define ERGM_TESTS_ORACLES_HPP

// Brute-force reference computations. They share no code with the library
// beyond the Graph / Motif / StepGraphon containers.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "ergm/graph.hpp"
#include "ergm/graphon.hpp"
#include "ergm/model.hpp"
#include "ergm/motif.hpp"
#include "ergm/rng.hpp"

namespace oracle {

/// |hom(H, G)| by iterating over every map V(H) -> V(G).
inline std::uint64_t hom_count(const ergm::Motif& h, const ergm::Graph& g) {
  const int v = h.vertex_count();
  const int n = g.vertex_count();
  std::vector<int> image(v, 0);
  std::uint64_t count = 0;
  while (true) {
    bool ok = true;
    for (const auto& [a, b] : h.edges()) {
      if (image[a] == image[b] || !g.has_edge(image[a], image[b])) {
        ok = false;
        break;
      }
    }
    if (ok) ++count;
    int pos = 0;
    while (pos < v && ++image[pos] == n) image[pos++] = 0;
    if (pos == v) break;
  }
  return count;
}

/// t(H, h) by iterating over every block assignment.
inline double hom_density(const ergm::Motif& h, const ergm::StepGraphon& f) {
  const int v = h.vertex_count();
  const int k = f.blocks();
  std::vector<int> blk(v, 0);
  double total = 0.0;
  while (true) {
    double term = 1.0;
    for (int x = 0; x < v; ++x) term *= f.weight(blk[x]);
    for (const auto& [a, b] : h.edges()) term *= f.value(blk[a], blk[b]);
    total += term;
    int pos = 0;
    while (pos < v && ++blk[pos] == k) blk[pos++] = 0;
    if (pos == v) break;
  }
  return total;
}

/// sup over s, t ∈ {0,1}^k of |Σ s_a t_b m_ab| by full enumeration.
inline double cut_norm(const ergm::BlockKernel& m) {
  const int k = m.k;
  double best = 0.0;
  for (std::uint32_t s = 0; s < (1U << k); ++s) {
    for (std::uint32_t t = 0; t < (1U << k); ++t) {
      double acc = 0.0;
      for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b)
          if (((s >> a) & 1U) && ((t >> b) & 1U)) acc += m(a, b);
      best = std::max(best, std::abs(acc));
    }
  }
  return best;
}

inline long long triangles(const ergm::Graph& g) {
  const int n = g.vertex_count();
  long long c = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k)
        if (g.has_edge(i, j) && g.has_edge(j, k) && g.has_edge(i, k)) ++c;
  return c;
}

/// n² T(G) from brute-force homomorphism counts.
inline double scaled_statistic(const ergm::ModelSpec& model, const ergm::Graph& g) {
  const double n = g.vertex_count();
  double acc = 0.0;
  for (const auto& t : model.terms()) {
    acc += t.beta * static_cast<double>(hom_count(t.motif, g)) / std::pow(n, t.motif.vertex_count());
  }
  return n * n * acc;
}

/// log Σ_G e^{n²T(G)} by enumeration with the brute-force statistic.
inline double log_partition(const ergm::ModelSpec& model, int n) {
  const int m = n * (n - 1) / 2;
  std::vector<double> logs;
  for (std::uint64_t mask = 0; mask < (1ULL << m); ++mask) {
    ergm::Graph g(n);
    int k = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j, ++k)
        if ((mask >> k) & 1ULL) g.add_edge(i, j);
    logs.push_back(scaled_statistic(model, g));
  }
  const double hi = *std::max_element(logs.begin(), logs.end());
  double acc = 0.0;
  for (double x : logs) acc += std::exp(x - hi);
  return hi + std::log(acc);
}

/// sup of ℓ(u) from a fine grid, polished by golden-section search on the
/// two cells around the best grid point.
inline double scalar_sup(const ergm::ModelSpec& model) {
  auto ell = [&](double u) {
    double acc = 0.0;
    for (const auto& t : model.terms()) acc += t.beta * std::pow(u, t.motif.edge_count());
    auto xl = [](double x) { return x > 0 ? x * std::log(x) : 0.0; };
    return acc - 0.5 * (xl(u) + xl(1 - u));
  };
  const int grid = 200000;
  double best = -std::numeric_limits<double>::infinity();
  int at = 0;
  for (int i = 0; i <= grid; ++i) {
    const double v = ell(static_cast<double>(i) / grid);
    if (v > best) {
      best = v;
      at = i;
    }
  }
  double a = std::max(0, at - 1) / static_cast<double>(grid);
  double b = std::min(grid, at + 1) / static_cast<double>(grid);
  const double r = (std::sqrt(5.0) - 1) / 2;
  for (int it = 0; it < 200; ++it) {
    const double c = b - r * (b - a);
    const double d = a + r * (b - a);
    if (ell(c) > ell(d)) {
      b = d;
    } else {
      a = c;
    }
  }
  return std::max(best, ell(0.5 * (a + b)));
}

inline ergm::Graph random_graph(int n, double p, ergm::CounterRng& rng) {
  ergm::Graph g(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (rng.uniform() < p) g.add_edge(i, j);
  return g;
}

inline ergm::StepGraphon random_step_graphon(int k, ergm::CounterRng& rng, bool equal_weights = false) {
  std::vector<double> w(k, 1.0 / k);
  if (!equal_weights) {
    double total = 0.0;
    for (double& x : w) total += (x = 0.05 + rng.uniform());
    for (double& x : w) x /= total;
    double rest = 1.0;
    for (int a = 0; a + 1 < k; ++a) rest -= w[a];
    w[k - 1] = rest;
  }
  std::vector<double> v(static_cast<std::size_t>(k) * k);
  for (int a = 0; a < k; ++a)
    for (int b = a; b < k; ++b) v[a * k + b] = v[b * k + a] = rng.uniform();
  return ergm::StepGraphon(std::move(w), std::move(v));
}

}  // namespace oracle

#endif
