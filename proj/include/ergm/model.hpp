#ifndef ERGM_MODEL_HPP
#define ERGM_MODEL_HPP

#include <cmath>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ergm/graph.hpp"
#include "ergm/graphon.hpp"
#include "ergm/motif.hpp"

namespace ergm {

struct ModelTerm {
  Motif motif;
  double beta;
};

/// Sufficient statistic T(h) = Σ β_i t(H_i, h). By convention term 0 is the
/// single edge (its coefficient may be zero).
class ModelSpec {
 public:
  explicit ModelSpec(std::vector<ModelTerm> terms) : terms_(std::move(terms)) {
    if (terms_.empty()) throw std::invalid_argument("model needs at least one term");
    for (const auto& t : terms_) {
      if (!std::isfinite(t.beta)) throw std::invalid_argument("model coefficients must be finite");
    }
  }

  static ModelSpec edge_only(double beta1) { return ModelSpec({{Motif::edge(), beta1}}); }

  static ModelSpec edge_triangle(double beta1, double beta2) {
    return ModelSpec({{Motif::edge(), beta1}, {Motif::triangle(), beta2}});
  }

  /// One term per line, `motif beta`; blank lines and `#` comments are ignored.
  static ModelSpec parse(std::istream& in) {
    std::vector<ModelTerm> terms;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
      std::istringstream fields(line);
      std::string motif;
      if (!(fields >> motif)) continue;
      double beta = 0.0;
      std::string extra;
      if (!(fields >> beta) || (fields >> extra)) {
        throw std::invalid_argument("model line " + std::to_string(line_no) + ": expected `motif beta`");
      }
      terms.push_back({Motif::parse(motif), beta});
    }
    return ModelSpec(std::move(terms));
  }

  static ModelSpec parse(const std::string& text) {
    std::istringstream in(text);
    return parse(in);
  }

  [[nodiscard]] const std::vector<ModelTerm>& terms() const noexcept { return terms_; }
  [[nodiscard]] std::size_t size() const noexcept { return terms_.size(); }

  [[nodiscard]] bool same_motifs(const ModelSpec& other) const {
    if (terms_.size() != other.terms_.size()) return false;
    for (std::size_t i = 0; i < terms_.size(); ++i)
      if (!(terms_[i].motif == other.terms_[i].motif)) return false;
    return true;
  }

  /// Model with the same motifs and coefficients `betas`.
  [[nodiscard]] ModelSpec with_betas(const std::vector<double>& betas) const {
    if (betas.size() != terms_.size()) throw std::invalid_argument("coefficient count does not match the model");
    std::vector<ModelTerm> t = terms_;
    for (std::size_t i = 0; i < t.size(); ++i) t[i].beta = betas[i];
    return ModelSpec(std::move(t));
  }

  [[nodiscard]] std::string to_text() const {
    std::ostringstream out;
    out.precision(17);
    for (const auto& t : terms_) out << t.motif.name() << ' ' << t.beta << '\n';
    return out.str();
  }

 private:
  std::vector<ModelTerm> terms_;
};

/// t(H, G) with fast paths for edges, triangles and j-stars.
inline double graph_hom_density(const Motif& motif, const Graph& g) {
  const double n = g.vertex_count();
  if (motif.is_single_edge()) return 2.0 * static_cast<double>(g.edge_count()) / (n * n);
  if (motif.is_triangle()) return 6.0 * static_cast<double>(triangle_count(g)) / (n * n * n);
  if (const auto j = motif.star_leaves()) {
    double acc = 0.0;
    for (int v = 0; v < g.vertex_count(); ++v) acc += std::pow(static_cast<double>(g.degree(v)), *j);
    return acc / std::pow(n, *j + 1);
  }
  return hom_density_graph(motif, g);
}

/// T(G) = Σ β_i t(H_i, G) (the statistic of the graph's step graphon).
inline double graph_statistic(const ModelSpec& model, const Graph& g) {
  double acc = 0.0;
  for (const auto& t : model.terms()) acc += t.beta * graph_hom_density(t.motif, g);
  return acc;
}

/// Per-term densities t(H_i, G).
inline std::vector<double> graph_densities(const ModelSpec& model, const Graph& g) {
  std::vector<double> out;
  out.reserve(model.size());
  for (const auto& t : model.terms()) out.push_back(graph_hom_density(t.motif, g));
  return out;
}

/// T(h) = Σ β_i t(H_i, h).
inline double graphon_statistic(const ModelSpec& model, const StepGraphon& h) {
  double acc = 0.0;
  for (const auto& t : model.terms()) acc += t.beta * hom_density_graphon(t.motif, h);
  return acc;
}

/// T(h) - I(h), the functional maximised by the limiting free energy.
inline double graphon_objective(const ModelSpec& model, const StepGraphon& h) {
  return graphon_statistic(model, h) - rate_entropy(h);
}

}  // namespace ergm

#endif
