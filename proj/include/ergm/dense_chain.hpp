#ifndef ERGM_DENSE_CHAIN_HPP
#define ERGM_DENSE_CHAIN_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "ergm/entropy.hpp"
#include "ergm/errors.hpp"
#include "ergm/graph.hpp"
#include "ergm/mcmc.hpp"
#include "ergm/model.hpp"

// Dense transition matrices over all 2^C(n,2) graphs for very small n. State s
// is the graph whose pair k (in Graph::pair_index order) is bit k of s.

namespace ergm::dense {

inline constexpr int kMaxDenseVertices = 4;

inline int state_count(int n) {
  if (n < 2 || n > kMaxDenseVertices) throw guard_error("dense chains are limited to 2 <= n <= 4");
  return 1 << pair_total(n);
}

/// Edge indicator vector x_G of a state.
inline std::vector<std::uint8_t> indicators(int n, int state) {
  const int m = static_cast<int>(pair_total(n));
  std::vector<std::uint8_t> x(m);
  for (int k = 0; k < m; ++k) x[k] = static_cast<std::uint8_t>((state >> k) & 1);
  return x;
}

/// p(G) ∝ e^{n²T(G)}.
inline Eigen::VectorXd target_law(const ModelSpec& model, int n) {
  const int s = state_count(n);
  const double n2 = static_cast<double>(n) * n;
  Eigen::VectorXd logw(s);
  for (int x = 0; x < s; ++x) logw[x] = n2 * graph_statistic(model, Graph::from_pair_mask(n, static_cast<std::uint64_t>(x)));
  const double hi = logw.maxCoeff();
  Eigen::VectorXd p = (logw.array() - hi).exp().matrix();
  return p / p.sum();
}

/// p(G) ∝ e^{βE(G)}.
inline Eigen::VectorXd er_law(int n, double beta) { return target_law(er_model(beta), n); }

inline Eigen::MatrixXd metropolis_matrix(int n, double beta) {
  const int s = state_count(n);
  const int m = static_cast<int>(pair_total(n));
  const double del = std::exp(-beta);
  Eigen::MatrixXd k = Eigen::MatrixXd::Zero(s, s);
  for (int x = 0; x < s; ++x) {
    for (int e = 0; e < m; ++e) {
      const int y = x ^ (1 << e);
      const double move = (x >> e) & 1 ? del : 1.0;
      k(x, y) += move / m;
      k(x, x) += (1.0 - move) / m;
    }
  }
  return k;
}

inline Eigen::MatrixXd glauber_matrix(const ModelSpec& model, int n) {
  const int s = state_count(n);
  const int m = static_cast<int>(pair_total(n));
  const GlauberKernel kernel(model, n);
  Eigen::MatrixXd k = Eigen::MatrixXd::Zero(s, s);
  for (int x = 0; x < s; ++x) {
    Graph g = Graph::from_pair_mask(n, static_cast<std::uint64_t>(x));
    int e = 0;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j, ++e) {
        const double on = logistic(kernel.delta(g, i, j));
        const int with = x | (1 << e);
        const int without = x & ~(1 << e);
        k(x, with) += on / m;
        k(x, without) += (1.0 - on) / m;
      }
    }
  }
  return k;
}

/// max |π(x)K(x,y) - π(y)K(y,x)|.
inline double detailed_balance_residual(const Eigen::MatrixXd& k, const Eigen::VectorXd& pi) {
  const Eigen::MatrixXd flow = pi.asDiagonal() * k;
  return (flow - flow.transpose()).cwiseAbs().maxCoeff();
}

/// Solves πK = π, Σπ = 1.
inline Eigen::VectorXd stationary_vector(const Eigen::MatrixXd& k) {
  const auto s = k.rows();
  Eigen::MatrixXd a = k.transpose() - Eigen::MatrixXd::Identity(s, s);
  a.row(s - 1).setOnes();
  Eigen::VectorXd b = Eigen::VectorXd::Zero(s);
  b[s - 1] = 1.0;
  return a.fullPivLu().solve(b);
}

/// Spectrum of a chain reversible with respect to π, ascending.
inline Eigen::VectorXd reversible_spectrum(const Eigen::MatrixXd& k, const Eigen::VectorXd& pi) {
  const Eigen::VectorXd r = pi.cwiseSqrt();
  const Eigen::MatrixXd sym = r.asDiagonal() * k * r.cwiseInverse().asDiagonal();
  const Eigen::MatrixXd sym2 = 0.5 * (sym + sym.transpose());
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(sym2, Eigen::EigenvaluesOnly).eigenvalues();
}

/// Σ_y (K^ℓ(x,y) - π(y))² / π(y).
inline double chi_square(const Eigen::MatrixXd& k, const Eigen::VectorXd& pi, int start, int ell) {
  Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(k.cols());
  row[start] = 1.0;
  for (int t = 0; t < ell; ++t) row = row * k;
  double acc = 0.0;
  for (Eigen::Index y = 0; y < k.cols(); ++y) acc += std::pow(row[y] - pi[y], 2) / pi[y];
  return acc;
}

/// Σ_G f(G) ψ_ξ(x_G) p_β(G) by enumeration.
template <class F>
double fourier_coefficient(const SpectralComponent& c, int n, const Eigen::VectorXd& pi, F&& f) {
  double acc = 0.0;
  for (int x = 0; x < static_cast<int>(pi.size()); ++x) {
    const auto ind = indicators(n, x);
    acc += f(x) * c.psi(ind) * pi[x];
  }
  return acc;
}

}  // namespace ergm::dense

#endif
