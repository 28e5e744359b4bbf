#ifndef ERGM_GRAPH_HPP
#define ERGM_GRAPH_HPP

#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ergm/errors.hpp"
#include "ergm/graphon.hpp"
#include "ergm/motif.hpp"

namespace ergm {

/// Dense simple graph on vertices 0..n-1, one bit row per vertex.
class Graph {
 public:
  static constexpr int kMaxVertices = 4096;

  Graph() = default;

  explicit Graph(int n) : n_(n), words_((n + 63) / 64), bits_(static_cast<std::size_t>(n) * words_, 0) {
    if (n < 1 || n > kMaxVertices) {
      throw std::invalid_argument("graph vertex count must be in [1, 4096], got " + std::to_string(n));
    }
  }

  static Graph complete(int n) {
    Graph g(n);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) g.add_edge(i, j);
    return g;
  }

  static Graph cycle(int n) {
    Graph g(n);
    for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
    return g;
  }

  /// Graph whose edge slot k (in pair_index order) is bit k of `mask`. Requires C(n,2) <= 64.
  static Graph from_pair_mask(int n, std::uint64_t mask) {
    Graph g(n);
    int k = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j, ++k)
        if ((mask >> k) & 1ULL) g.add_edge(i, j);
    return g;
  }

  [[nodiscard]] int vertex_count() const noexcept { return n_; }
  [[nodiscard]] std::int64_t pair_count() const noexcept {
    return static_cast<std::int64_t>(n_) * (n_ - 1) / 2;
  }

  [[nodiscard]] bool has_edge(int i, int j) const {
    return (row(i)[j >> 6] >> (j & 63)) & 1ULL;
  }

  void add_edge(int i, int j) { set_edge(i, j, true); }
  void remove_edge(int i, int j) { set_edge(i, j, false); }

  void set_edge(int i, int j, bool present) {
    check_pair(i, j);
    if (has_edge(i, j) == present) return;
    flip(i, j);
    flip(j, i);
    edges_ += present ? 1 : -1;
  }

  [[nodiscard]] std::span<const std::uint64_t> row(int i) const {
    return {bits_.data() + static_cast<std::size_t>(i) * words_, static_cast<std::size_t>(words_)};
  }

  [[nodiscard]] int degree(int i) const {
    int d = 0;
    for (auto w : row(i)) d += std::popcount(w);
    return d;
  }

  /// |N(i) ∩ N(j)|: the number of triangles through pair (i, j) if it were an edge.
  [[nodiscard]] int common_neighbours(int i, int j) const {
    const auto a = row(i);
    const auto b = row(j);
    int c = 0;
    for (int w = 0; w < words_; ++w) c += std::popcount(a[w] & b[w]);
    return c;
  }

  [[nodiscard]] std::int64_t edge_count() const noexcept { return edges_; }

  /// Index of the pair i<j in row-major order over the upper triangle.
  [[nodiscard]] static std::int64_t pair_index(int n, int i, int j) {
    if (i > j) std::swap(i, j);
    return static_cast<std::int64_t>(i) * (2 * n - i - 1) / 2 + (j - i - 1);
  }

  friend bool operator==(const Graph& a, const Graph& b) { return a.n_ == b.n_ && a.bits_ == b.bits_; }

 private:
  void check_pair(int i, int j) const {
    if (i < 0 || j < 0 || i >= n_ || j >= n_) {
      throw std::out_of_range("vertex index out of range for graph on " + std::to_string(n_) + " vertices");
    }
    if (i == j) throw std::invalid_argument("simple graphs have no self-loops");
  }

  void flip(int i, int j) {
    bits_[static_cast<std::size_t>(i) * words_ + (j >> 6)] ^= 1ULL << (j & 63);
  }

  int n_ = 0;
  int words_ = 0;
  std::vector<std::uint64_t> bits_;
  std::int64_t edges_ = 0;
};

inline std::int64_t edge_count(const Graph& g) { return g.edge_count(); }

/// Number of triangles, via popcount of intersected adjacency rows over edges.
inline std::int64_t triangle_count(const Graph& g) {
  std::int64_t through_edges = 0;
  const int n = g.vertex_count();
  for (int i = 0; i < n; ++i) {
    const auto ri = g.row(i);
    for (int w = 0; w < static_cast<int>(ri.size()); ++w) {
      std::uint64_t word = ri[w];
      while (word) {
        const int j = w * 64 + std::countr_zero(word);
        word &= word - 1;
        if (j > i) through_edges += g.common_neighbours(i, j);
      }
    }
  }
  return through_edges / 3;
}

inline double edge_density(const Graph& g) {
  const int n = g.vertex_count();
  if (n < 2) throw std::domain_error("edge density needs at least 2 vertices");
  return static_cast<double>(g.edge_count()) / static_cast<double>(g.pair_count());
}

namespace detail {

inline constexpr double kHomEnumerationLimit = 1e9;

/// base^exp compared against a limit without overflow.
inline bool power_exceeds(double base, int exp, double limit) {
  double acc = 1.0;
  for (int i = 0; i < exp; ++i) {
    acc *= base;
    if (acc > limit) return true;
  }
  return false;
}

/// Vertex order for backtracking: each next vertex has the most already-placed neighbours.
inline std::vector<int> placement_order(const Motif& h) {
  const int v = h.vertex_count();
  std::vector<int> order;
  std::vector<bool> placed(v, false);
  std::uint32_t placed_mask = 0;
  for (int step = 0; step < v; ++step) {
    int best = -1;
    int best_back = -1;
    int best_deg = -1;
    for (int u = 0; u < v; ++u) {
      if (placed[u]) continue;
      const int back = std::popcount(h.neighbours(u) & placed_mask);
      const int deg = std::popcount(h.neighbours(u));
      if (back > best_back || (back == best_back && deg > best_deg)) {
        best = u;
        best_back = back;
        best_deg = deg;
      }
    }
    order.push_back(best);
    placed[best] = true;
    placed_mask |= 1U << best;
  }
  return order;
}

class HomCounter {
 public:
  HomCounter(const Motif& h, const Graph& g) : g_(g), order_(placement_order(h)) {
    const int v = h.vertex_count();
    back_.resize(v);
    for (int p = 0; p < v; ++p) {
      for (int q = 0; q < p; ++q) {
        if ((h.neighbours(order_[p]) >> order_[q]) & 1U) back_[p].push_back(q);
      }
    }
    image_.assign(v, -1);
    const int n = g.vertex_count();
    words_ = (n + 63) / 64;
    all_.assign(words_, ~0ULL);
    if (n % 64) all_.back() = (1ULL << (n % 64)) - 1;
    scratch_.assign(static_cast<std::size_t>(v) * words_, 0);
  }

  std::uint64_t count() { return extend(0); }

 private:
  std::uint64_t extend(int p) {
    const int v = static_cast<int>(order_.size());
    std::uint64_t* cand = scratch_.data() + static_cast<std::size_t>(p) * words_;
    for (int w = 0; w < words_; ++w) cand[w] = all_[w];
    for (int q : back_[p]) {
      const auto r = g_.row(image_[q]);
      for (int w = 0; w < words_; ++w) cand[w] &= r[w];
    }
    std::uint64_t total = 0;
    if (p == v - 1) {
      for (int w = 0; w < words_; ++w) total += std::popcount(cand[w]);
      return total;
    }
    for (int w = 0; w < words_; ++w) {
      std::uint64_t word = cand[w];
      while (word) {
        image_[p] = w * 64 + std::countr_zero(word);
        word &= word - 1;
        total += extend(p + 1);
      }
    }
    return total;
  }

  const Graph& g_;
  std::vector<int> order_;
  std::vector<std::vector<int>> back_;
  std::vector<int> image_;
  std::vector<std::uint64_t> all_;
  std::vector<std::uint64_t> scratch_;
  int words_ = 0;
};

}  // namespace detail

/// |hom(H, G)|: maps V(H) -> V(G), not necessarily injective, sending edges to edges.
/// Refuses instances with |V(G)|^|V(H)| > 1e9.
inline std::uint64_t count_homomorphisms(const Motif& h, const Graph& g) {
  if (detail::power_exceeds(g.vertex_count(), h.vertex_count(), detail::kHomEnumerationLimit)) {
    throw guard_error("instance too large: |V(G)|^|V(H)| = " + std::to_string(g.vertex_count()) + "^" +
                      std::to_string(h.vertex_count()) + " exceeds the bound 1e9");
  }
  return detail::HomCounter(h, g).count();
}

/// t(H, G) = |hom(H, G)| / |V(G)|^|V(H)|.
inline double hom_density_graph(const Motif& h, const Graph& g) {
  const double hom = static_cast<double>(count_homomorphisms(h, g));
  return hom / std::pow(static_cast<double>(g.vertex_count()), h.vertex_count());
}

/// The step graphon f^G: n equal blocks, block (i, j) equal to the adjacency bit.
inline StepGraphon to_step_graphon(const Graph& g) {
  const int n = g.vertex_count();
  std::vector<double> values(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && g.has_edge(i, j)) values[static_cast<std::size_t>(i) * n + j] = 1.0;
  return StepGraphon::equal_blocks(n, std::move(values));
}

}  // namespace ergm

#endif
