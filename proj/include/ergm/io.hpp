#ifndef ERGM_IO_HPP
#define ERGM_IO_HPP

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ergm/graph.hpp"
#include "ergm/graphon.hpp"
#include "ergm/mcmc.hpp"
#include "ergm/variational.hpp"

namespace ergm::io {

namespace detail {

/// Reads whitespace-separated tokens, skipping `#` comments.
class TokenReader {
 public:
  explicit TokenReader(std::istream& in) {
    std::string line;
    while (std::getline(in, line)) {
      if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
      std::istringstream fields(line);
      std::string tok;
      while (fields >> tok) tokens_.push_back(tok);
    }
  }

  bool done() const { return pos_ >= tokens_.size(); }

  template <class T>
  T next(const char* what) {
    if (done()) throw std::invalid_argument(std::string("unexpected end of input reading ") + what);
    std::istringstream in(tokens_[pos_++]);
    T v{};
    char extra = 0;
    if (!(in >> v) || (in >> extra)) {
      throw std::invalid_argument(std::string("malformed ") + what + ": '" + tokens_[pos_ - 1] + "'");
    }
    return v;
  }

 private:
  std::vector<std::string> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Shortest round-tripping decimal form of a double.
inline std::string format_double(double x) {
  if (x == 0.0) return "0";
  char buf[32];
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, x);
    if (std::strtod(buf, nullptr) == x) break;
  }
  return buf;
}

/// Line 1 `n`, then one `i j` per edge (0-based).
inline Graph read_edge_list(std::istream& in) {
  detail::TokenReader r(in);
  const int n = r.next<int>("vertex count");
  Graph g(n);
  while (!r.done()) {
    const int i = r.next<int>("edge endpoint");
    const int j = r.next<int>("edge endpoint");
    g.add_edge(i, j);
  }
  return g;
}

inline void write_edge_list(std::ostream& out, const Graph& g) {
  out << g.vertex_count() << '\n';
  for (int i = 0; i < g.vertex_count(); ++i)
    for (int j = i + 1; j < g.vertex_count(); ++j)
      if (g.has_edge(i, j)) out << i << ' ' << j << '\n';
}

/// Line 1 `k`, line 2 the weights, then k rows of k values. The upper triangle
/// is used; asymmetry above 1e-9 is an error.
inline StepGraphon read_step_graphon(std::istream& in) {
  detail::TokenReader r(in);
  const int k = r.next<int>("block count");
  if (k < 1) throw std::invalid_argument("block count must be positive");
  std::vector<double> w(k);
  for (double& x : w) x = r.next<double>("block weight");
  std::vector<double> v(static_cast<std::size_t>(k) * k);
  for (double& x : v) x = r.next<double>("block value");
  if (!r.done()) throw std::invalid_argument("trailing data after step graphon");
  for (int a = 0; a < k; ++a) {
    for (int b = a + 1; b < k; ++b) {
      const double up = v[static_cast<std::size_t>(a) * k + b];
      const double lo = v[static_cast<std::size_t>(b) * k + a];
      if (std::abs(up - lo) > 1e-9) {
        throw std::invalid_argument("step graphon values are not symmetric at (" + std::to_string(a) + ", " +
                                    std::to_string(b) + ")");
      }
      v[static_cast<std::size_t>(b) * k + a] = up;
    }
  }
  return StepGraphon(std::move(w), std::move(v));
}

inline void write_step_graphon(std::ostream& out, const StepGraphon& h) {
  const int k = h.blocks();
  out << k << '\n';
  for (int a = 0; a < k; ++a) out << (a ? " " : "") << format_double(h.weight(a));
  out << '\n';
  for (int a = 0; a < k; ++a) {
    for (int b = 0; b < k; ++b) out << (b ? " " : "") << format_double(h.value(a, b));
    out << '\n';
  }
}

inline void write_phase_csv(std::ostream& out, const std::vector<PhasePoint>& points) {
  out << "beta2,u_star,psi,multiplicity\n";
  for (const auto& p : points) {
    out << format_double(p.beta2) << ',' << format_double(p.u_star) << ',' << format_double(p.psi) << ','
        << p.multiplicity << '\n';
  }
}

inline void write_trace_csv(std::ostream& out, const std::vector<TraceRow>& rows) {
  out << "step,edges,triangles,statistic\n";
  for (const auto& r : rows) {
    out << r.step << ',' << r.edges << ',' << r.triangles << ',' << format_double(r.statistic) << '\n';
  }
}

/// Flat `key = value` block.
inline void write_estimator(std::ostream& out, const EstimatorResult& r) {
  out << "estimator = " << to_string(r.kind) << '\n';
  out << "seed = " << r.seed << '\n';
  out << "n_samples = " << r.n_samples << '\n';
  out << "log_estimate = " << format_double(r.log_estimate) << '\n';
  out << "relative_std_error = " << format_double(r.relative_std_error) << '\n';
  out << "log_variance_bound = " << (r.variance_bound ? format_double(*r.variance_bound) : "none") << '\n';
}

}  // namespace ergm::io

#endif
