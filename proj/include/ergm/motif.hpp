#ifndef ERGM_MOTIF_HPP
#define ERGM_MOTIF_HPP

#include <algorithm>
#include <bit>
#include <charconv>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ergm/errors.hpp"

namespace ergm {

namespace detail {

inline int max_clique_size(const std::vector<std::uint32_t>& adj) {
  const int v = static_cast<int>(adj.size());
  int best = 0;
  for (std::uint32_t set = 1; set < (1U << v); ++set) {
    const int size = std::popcount(set);
    if (size <= best) continue;
    bool clique = true;
    for (int a = 0; a < v && clique; ++a) {
      if ((set >> a) & 1U) {
        const std::uint32_t others = set & ~(1U << a);
        clique = (adj[a] & others) == others;
      }
    }
    if (clique) best = size;
  }
  return best;
}

inline bool colorable(const std::vector<std::uint32_t>& adj, const std::vector<int>& order,
                      std::vector<int>& color, std::size_t pos, int colors, int used) {
  if (pos == order.size()) return true;
  const int v = order[pos];
  // a new color beyond used+1 is symmetric to used+1
  const int limit = std::min(colors, used + 1);
  for (int c = 0; c < limit; ++c) {
    bool ok = true;
    for (std::size_t q = 0; q < pos && ok; ++q) {
      const int w = order[q];
      if (((adj[v] >> w) & 1U) && color[w] == c) ok = false;
    }
    if (!ok) continue;
    color[v] = c;
    if (colorable(adj, order, color, pos + 1, colors, std::max(used, c + 1))) return true;
  }
  color[v] = -1;
  return false;
}

inline int chromatic_number_of(const std::vector<std::uint32_t>& adj) {
  const int v = static_cast<int>(adj.size());
  if (v == 0) return 0;
  std::vector<int> order(v);
  for (int i = 0; i < v; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return std::popcount(adj[a]) > std::popcount(adj[b]);
  });
  std::vector<int> color(v, -1);
  for (int k = std::max(1, max_clique_size(adj)); k <= v; ++k) {
    std::fill(color.begin(), color.end(), -1);
    if (colorable(adj, order, color, 0, k, 0)) return k;
  }
  return v;
}

inline int parse_int(std::string_view text, std::string_view context) {
  int value = 0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw std::invalid_argument("cannot parse integer '" + std::string(text) + "' in " +
                                std::string(context));
  }
  return value;
}

inline std::string_view trim(std::string_view s) {
  const auto ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

}  // namespace detail

/// A small simple graph H used as a sufficient-statistic pattern.
///
/// Vertices are 0..vertex_count-1; edges are stored with first < second, sorted.
/// Every motif has at least one edge. Motifs are limited to 16 vertices, and
/// the chromatic number is cached for motifs with at most 12 vertices.
class Motif {
 public:
  static constexpr int kMaxVertices = 16;
  static constexpr int kMaxColoringVertices = 12;

  Motif(int vertex_count, std::vector<std::pair<int, int>> edges, std::string name = {})
      : vertex_count_(vertex_count), edges_(std::move(edges)), name_(std::move(name)) {
    if (vertex_count_ < 2 || vertex_count_ > kMaxVertices) {
      throw std::invalid_argument("motif vertex count must be in [2, 16], got " +
                                  std::to_string(vertex_count_));
    }
    for (auto& [a, b] : edges_) {
      if (a < 0 || b < 0 || a >= vertex_count_ || b >= vertex_count_) {
        throw std::invalid_argument("motif edge endpoint out of range");
      }
      if (a == b) throw std::invalid_argument("motif has a self-loop at vertex " + std::to_string(a));
      if (a > b) std::swap(a, b);
    }
    std::sort(edges_.begin(), edges_.end());
    if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end()) {
      throw std::invalid_argument("motif has a duplicate edge");
    }
    if (edges_.empty()) throw std::invalid_argument("motif must contain at least one edge");
    adjacency_.assign(vertex_count_, 0U);
    for (const auto& [a, b] : edges_) {
      adjacency_[a] |= 1U << b;
      adjacency_[b] |= 1U << a;
    }
    if (vertex_count_ <= kMaxColoringVertices) chromatic_ = detail::chromatic_number_of(adjacency_);
    if (name_.empty()) name_ = describe();
  }

  static Motif edge() { return Motif(2, {{0, 1}}, "edge"); }
  static Motif triangle() { return Motif(3, {{0, 1}, {1, 2}, {0, 2}}, "triangle"); }

  /// j-star: root 0 joined to leaves 1..j. star(1) is the single edge.
  static Motif star(int j) {
    if (j < 1) throw std::invalid_argument("star needs j >= 1");
    std::vector<std::pair<int, int>> e;
    for (int leaf = 1; leaf <= j; ++leaf) e.emplace_back(0, leaf);
    return Motif(j + 1, std::move(e), j == 1 ? "edge" : "star:" + std::to_string(j));
  }

  static Motif cycle(int j) {
    if (j < 3) throw std::invalid_argument("cycle needs j >= 3");
    std::vector<std::pair<int, int>> e;
    for (int v = 0; v < j; ++v) e.emplace_back(v, (v + 1) % j);
    return Motif(j, std::move(e), j == 3 ? "triangle" : "cycle:" + std::to_string(j));
  }

  static Motif complete(int r) {
    if (r < 2) throw std::invalid_argument("complete graph needs r >= 2");
    std::vector<std::pair<int, int>> e;
    for (int a = 0; a < r; ++a)
      for (int b = a + 1; b < r; ++b) e.emplace_back(a, b);
    std::string name = r == 2 ? "edge" : (r == 3 ? "triangle" : "complete:" + std::to_string(r));
    return Motif(r, std::move(e), std::move(name));
  }

  /// Builtins `edge`, `triangle`, `star:j`, `cycle:j`, `complete:r`, or an inline
  /// edge list such as `0-1,1-2,0-2` (optionally prefixed with `edges:`).
  static Motif parse(std::string_view spec) {
    spec = detail::trim(spec);
    if (spec == "edge") return edge();
    if (spec == "triangle") return triangle();
    const auto colon = spec.find(':');
    if (colon != std::string_view::npos) {
      const auto head = spec.substr(0, colon);
      const auto arg = spec.substr(colon + 1);
      if (head == "star") return star(detail::parse_int(arg, "star:j"));
      if (head == "cycle") return cycle(detail::parse_int(arg, "cycle:j"));
      if (head == "complete") return complete(detail::parse_int(arg, "complete:r"));
      if (head == "edges") return parse_edge_list(arg);
      throw std::invalid_argument("unknown motif '" + std::string(spec) + "'");
    }
    if (spec.find('-') != std::string_view::npos) return parse_edge_list(spec);
    throw std::invalid_argument("unknown motif '" + std::string(spec) + "'");
  }

  [[nodiscard]] int vertex_count() const noexcept { return vertex_count_; }
  [[nodiscard]] int edge_count() const noexcept { return static_cast<int>(edges_.size()); }
  [[nodiscard]] const std::vector<std::pair<int, int>>& edges() const noexcept { return edges_; }
  [[nodiscard]] const std::string& name() const noexcept { return name_; }

  /// Neighbour bitmask of vertex v.
  [[nodiscard]] std::uint32_t neighbours(int v) const { return adjacency_[v]; }

  [[nodiscard]] int chromatic_number() const {
    if (chromatic_ == 0) {
      throw guard_error("chromatic number is only computed for motifs with at most " +
                        std::to_string(kMaxColoringVertices) + " vertices");
    }
    return chromatic_;
  }

  [[nodiscard]] bool is_single_edge() const noexcept { return edges_.size() == 1; }

  [[nodiscard]] bool is_triangle() const noexcept { return vertex_count_ == 3 && edges_.size() == 3; }

  /// Number of leaves if this is a j-star (one vertex adjacent to all others, no other edges).
  [[nodiscard]] std::optional<int> star_leaves() const {
    const int e = edge_count();
    if (e != vertex_count_ - 1) return std::nullopt;
    for (int v = 0; v < vertex_count_; ++v) {
      if (std::popcount(adjacency_[v]) == e) return e;
    }
    return std::nullopt;
  }

  friend bool operator==(const Motif& a, const Motif& b) {
    return a.vertex_count_ == b.vertex_count_ && a.edges_ == b.edges_;
  }

 private:
  static Motif parse_edge_list(std::string_view list) {
    std::vector<std::pair<int, int>> e;
    int max_vertex = -1;
    std::size_t start = 0;
    while (start <= list.size()) {
      auto comma = list.find(',', start);
      if (comma == std::string_view::npos) comma = list.size();
      const auto item = detail::trim(list.substr(start, comma - start));
      if (!item.empty()) {
        const auto dash = item.find('-');
        if (dash == std::string_view::npos) {
          throw std::invalid_argument("inline motif edge '" + std::string(item) + "' must look like a-b");
        }
        const int a = detail::parse_int(detail::trim(item.substr(0, dash)), "motif edge");
        const int b = detail::parse_int(detail::trim(item.substr(dash + 1)), "motif edge");
        e.emplace_back(a, b);
        max_vertex = std::max({max_vertex, a, b});
      }
      start = comma + 1;
    }
    return Motif(max_vertex + 1, std::move(e));
  }

  [[nodiscard]] std::string describe() const {
    std::string s = "edges:";
    for (std::size_t i = 0; i < edges_.size(); ++i) {
      if (i) s += ',';
      s += std::to_string(edges_[i].first) + "-" + std::to_string(edges_[i].second);
    }
    return s;
  }

  int vertex_count_;
  std::vector<std::pair<int, int>> edges_;
  std::string name_;
  std::vector<std::uint32_t> adjacency_;
  int chromatic_ = 0;
};

/// Exact chromatic number: clique lower bound, then backtracking k-colouring.
inline int chromatic_number(const Motif& h) { return h.chromatic_number(); }

}  // namespace ergm

#endif
