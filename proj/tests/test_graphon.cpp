#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "ergm/graphon.hpp"
#include "ergm/model.hpp"
#include "oracles.hpp"

using namespace ergm;

namespace {

const double kLog2 = std::log(2.0);

double holder_bound(const Motif& h, const StepGraphon& f) {
  double acc = 0.0;
  for (int a = 0; a < f.blocks(); ++a)
    for (int b = 0; b < f.blocks(); ++b)
      acc += f.weight(a) * f.weight(b) * std::pow(f.value(a, b), h.edge_count());
  return acc;
}

BlockKernel difference(const StepGraphon& f, const StepGraphon& g) {
  BlockKernel m(f.blocks(), 0.0);
  for (int a = 0; a < f.blocks(); ++a)
    for (int b = 0; b < f.blocks(); ++b) m(a, b) = f.weight(a) * f.weight(b) * (f.value(a, b) - g.value(a, b));
  return m;
}

/// Δ_H h(a, b) by direct summation over the other vertices, symmetrised.
double delta_oracle(const Motif& h, const StepGraphon& f, int a, int b) {
  const int v = h.vertex_count();
  const int k = f.blocks();
  double total = 0.0;
  for (std::size_t e = 0; e < h.edges().size(); ++e) {
    const auto [r, s] = h.edges()[e];
    for (int orient = 0; orient < 2; ++orient) {
      std::vector<int> blk(v, 0);
      double acc = 0.0;
      while (true) {
        blk[r] = orient ? b : a;
        blk[s] = orient ? a : b;
        double term = 1.0;
        for (int x = 0; x < v; ++x)
          if (x != r && x != s) term *= f.weight(blk[x]);
        for (std::size_t e2 = 0; e2 < h.edges().size(); ++e2)
          if (e2 != e) term *= f.value(blk[h.edges()[e2].first], blk[h.edges()[e2].second]);
        acc += term;
        int pos = 0;
        while (pos < v && (pos == r || pos == s || ++blk[pos] == k)) {
          if (pos != r && pos != s) blk[pos] = 0;
          ++pos;
        }
        if (pos == v) break;
      }
      total += 0.5 * acc;
    }
  }
  return total;
}

std::vector<Motif> test_motifs() {
  return {Motif::edge(), Motif::star(2), Motif::triangle(), Motif::star(3), Motif::cycle(4),
          Motif::parse("0-1,1-2,2-3"), Motif::parse("0-1,1-2,0-2,2-3")};
}

}  // namespace

TEST(StepGraphon, RejectsInvalidConstruction) {
  EXPECT_THROW(StepGraphon({0.5, 0.4}, {0, 0, 0, 0}), std::invalid_argument);
  EXPECT_THROW(StepGraphon({0.5, 0.5}, {0, 0.2, 0.3, 0}), std::invalid_argument);
  EXPECT_THROW(StepGraphon({0.5, 0.5}, {0, 1.2, 1.2, 0}), std::invalid_argument);
  EXPECT_THROW(StepGraphon({1.0}, {0.1, 0.2}), std::invalid_argument);
  EXPECT_THROW(StepGraphon({}, {}), std::invalid_argument);
}

TEST(HomDensityGraphon, ConstantGivesPowerOfEdges) {
  for (double u : {0.0, 0.13, 0.5, 0.77, 1.0}) {
    for (const auto& h : test_motifs()) {
      EXPECT_NEAR(hom_density_graphon(h, StepGraphon::constant(u)), std::pow(u, h.edge_count()), 1e-15);
      EXPECT_NEAR(hom_density_graphon(h, StepGraphon::constant(u).split_blocks(3)), std::pow(u, h.edge_count()),
                  1e-14);
    }
  }
}

TEST(HomDensityGraphon, TriangleFreeOnBipartiteGraphon) {
  const StepGraphon g = StepGraphon::equal_blocks(2, {0, 1, 1, 0});
  EXPECT_EQ(hom_density_graphon(Motif::triangle(), g), 0.0);
  EXPECT_EQ(hom_density_graphon(Motif::cycle(5), g), 0.0);
  EXPECT_NEAR(hom_density_graphon(Motif::cycle(4), g), 0.125, 1e-15);
}

TEST(HomDensityGraphon, EdgeIsWeightedMean) {
  CounterRng rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    const StepGraphon f = oracle::random_step_graphon(4, rng);
    double expect = 0.0;
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) expect += f.weight(a) * f.weight(b) * f.value(a, b);
    EXPECT_NEAR(hom_density_graphon(Motif::edge(), f), expect, 1e-15);
  }
}

TEST(HomDensityGraphon, MatchesBlockAssignmentOracle) {
  CounterRng rng(6);
  for (int trial = 0; trial < 30; ++trial) {
    const StepGraphon f = oracle::random_step_graphon(1 + static_cast<int>(rng.below(4)), rng);
    for (const auto& h : test_motifs()) EXPECT_NEAR(hom_density_graphon(h, f), oracle::hom_density(h, f), 1e-13);
  }
}

TEST(HomDensityGraphon, SizeGuard) {
  EXPECT_THROW((void)hom_density_graphon(Motif::complete(9), StepGraphon::constant(0.5)), guard_error);
  const StepGraphon big = StepGraphon::constant(0.5).split_blocks(40);
  EXPECT_THROW((void)hom_density_graphon(Motif::complete(6), big), guard_error);
}

TEST(HolderBound, RandomGraphonsAndMotifs) {
  CounterRng rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    const StepGraphon f = oracle::random_step_graphon(2 + static_cast<int>(rng.below(3)), rng);
    for (const auto& h : test_motifs()) {
      const double t = hom_density_graphon(h, f);
      const double bound = holder_bound(h, f);
      EXPECT_LE(t, bound + 1e-12);
      if (h.edge_count() >= 2) EXPECT_GT(bound - t, 1e-10) << h.name();
    }
    const StepGraphon c = StepGraphon::constant(rng.uniform()).split_blocks(3);
    for (const auto& h : test_motifs()) EXPECT_NEAR(hom_density_graphon(h, c), holder_bound(h, c), 1e-12);
  }
}

TEST(RateEntropy, Examples) {
  EXPECT_NEAR(rate_entropy(StepGraphon::constant(0.5)), -0.5 * kLog2, 1e-15);
  EXPECT_NEAR(rate_entropy(StepGraphon::constant(0.5)), -0.34657359027997264, 1e-15);
  EXPECT_EQ(rate_entropy(StepGraphon::constant(0.0)), 0.0);
  EXPECT_EQ(rate_entropy(StepGraphon::constant(1.0)), 0.0);
  for (double u : {0.1, 0.3, 0.9}) {
    EXPECT_NEAR(rate_entropy(StepGraphon::constant(u)), 0.5 * (u * std::log(u) + (1 - u) * std::log(1 - u)), 1e-15);
  }
}

TEST(RateRelative, Examples) {
  for (double p : {0.1, 0.5, 0.8}) {
    EXPECT_NEAR(rate_relative(StepGraphon::constant(p), p), 0.0, 1e-15);
    const StepGraphon g = StepGraphon::equal_blocks(2, {0, p, p, 0});
    EXPECT_NEAR(rate_relative(g, p), 0.25 * std::log(1.0 / (1.0 - p)), 1e-15);
  }
  for (double u : {0.0, 0.2, 0.5, 0.93, 1.0}) {
    const StepGraphon c = StepGraphon::constant(u);
    EXPECT_NEAR(rate_relative(c, 0.5), rate_entropy(c) + 0.5 * kLog2, 1e-15);
  }
  EXPECT_THROW((void)rate_relative(StepGraphon::constant(0.3), 0.0), std::domain_error);
  EXPECT_THROW((void)rate_relative(StepGraphon::constant(0.3), 1.0), std::domain_error);
}

TEST(RateRelative, NonnegativeAndZeroOnlyAtP) {
  CounterRng rng(12);
  for (int trial = 0; trial < 300; ++trial) {
    const StepGraphon f = oracle::random_step_graphon(3, rng);
    const double p = 0.01 + 0.98 * rng.uniform();
    EXPECT_GT(rate_relative(f, p), 0.0);
  }
}

TEST(CutNorm, Examples) {
  const StepGraphon one = StepGraphon::constant(1.0);
  const StepGraphon zero = StepGraphon::constant(0.0);
  const auto same = cut_norm_diff(one, one);
  EXPECT_EQ(same.value, 0.0);
  EXPECT_TRUE(same.exact);
  const auto full = cut_norm_diff(one, zero);
  EXPECT_NEAR(full.value, 1.0, 1e-15);
  EXPECT_EQ(full.witness_s.size(), 1U);
  EXPECT_EQ(full.witness_t.size(), 1U);

  const StepGraphon bip = StepGraphon::equal_blocks(2, {0, 1, 1, 0});
  const StepGraphon half = StepGraphon::constant(0.5);
  // Rectangle block 0 x block 1: |1 - 1/2| / 4.
  const auto r = cut_norm_diff(bip, half);
  EXPECT_NEAR(r.value, 0.125, 1e-15);
  EXPECT_TRUE(r.exact);
  EXPECT_NEAR(oracle::cut_norm(difference(bip, half.split_blocks(2))), 0.125, 1e-15);
}

TEST(CutNorm, MatchesFullEnumeration) {
  CounterRng rng(41);
  for (int trial = 0; trial < 100; ++trial) {
    const int k = 1 + static_cast<int>(rng.below(6));
    const StepGraphon f = oracle::random_step_graphon(k, rng, true);
    const StepGraphon g = oracle::random_step_graphon(k, rng, true);
    EXPECT_NEAR(cut_norm_diff(f, g).value, oracle::cut_norm(difference(f, g)), 1e-14);
  }
}

TEST(CutNorm, RefinesUnequalPartitions) {
  // f on blocks (1/2, 1/2), g on (1/4, 3/4): refinement (1/4, 1/4, 1/2).
  const StepGraphon f({0.5, 0.5}, {0.2, 0.6, 0.6, 0.9});
  const StepGraphon g({0.25, 0.75}, {0.4, 0.1, 0.1, 0.7});
  const StepGraphon fr({0.25, 0.25, 0.5}, {0.2, 0.2, 0.6, 0.2, 0.2, 0.6, 0.6, 0.6, 0.9});
  const StepGraphon gr({0.25, 0.25, 0.5}, {0.4, 0.1, 0.1, 0.1, 0.7, 0.7, 0.1, 0.7, 0.7});
  EXPECT_NEAR(cut_norm_diff(f, g).value, oracle::cut_norm(difference(fr, gr)), 1e-15);
}

TEST(CutNorm, SymmetricTriangleInequalityAndDefinite) {
  CounterRng rng(43);
  for (int trial = 0; trial < 100; ++trial) {
    const StepGraphon f = oracle::random_step_graphon(4, rng, true);
    const StepGraphon g = oracle::random_step_graphon(4, rng, true);
    const StepGraphon h = oracle::random_step_graphon(4, rng, true);
    const double fg = cut_norm_diff(f, g).value;
    EXPECT_NEAR(fg, cut_norm_diff(g, f).value, 1e-15);
    EXPECT_LE(fg, cut_norm_diff(f, h).value + cut_norm_diff(h, g).value + 1e-9);
    EXPECT_GT(fg, 0.0);
    EXPECT_LE(fg, 1.0);
    EXPECT_EQ(cut_norm_diff(f, f).value, 0.0);
  }
}

TEST(CutNorm, HeuristicModeAboveBlockLimit) {
  CounterRng rng(47);
  const StepGraphon f = oracle::random_step_graphon(30, rng, true);
  const StepGraphon g = oracle::random_step_graphon(30, rng, true);
  const auto r = cut_norm_diff(f, g);
  EXPECT_FALSE(r.exact);
  // Lower bound: the full square.
  double whole = 0.0;
  const BlockKernel m = difference(f, g);
  for (double x : m.data) whole += x;
  EXPECT_GE(r.value, std::abs(whole) - 1e-15);
  EXPECT_LE(r.value, 1.0);
}

TEST(CommonRefinement, MergesBoundaries) {
  const auto r = common_refinement(StepGraphon({0.3, 0.7}, {0, 0, 0, 0}), StepGraphon({0.5, 0.5}, {0, 0, 0, 0}));
  ASSERT_EQ(r.weights.size(), 3U);
  EXPECT_NEAR(r.weights[0], 0.3, 1e-15);
  EXPECT_NEAR(r.weights[1], 0.2, 1e-15);
  EXPECT_NEAR(r.weights[2], 0.5, 1e-15);
  EXPECT_EQ(r.f_block, (std::vector<int>{0, 1, 1}));
  EXPECT_EQ(r.g_block, (std::vector<int>{0, 0, 1}));
  // Boundaries 1e-11 apart are identified instead of producing a micro-block.
  const auto near = common_refinement(StepGraphon({0.5, 0.5}, {0, 0, 0, 0}),
                                      StepGraphon({0.5 + 1e-11, 0.5 - 1e-11}, {0, 0, 0, 0}));
  EXPECT_EQ(near.weights.size(), 2U);
}

TEST(CutDistance, Examples) {
  CounterRng rng(53);
  const StepGraphon f = oracle::random_step_graphon(4, rng, true);
  const std::vector<int> perm{2, 0, 3, 1};
  EXPECT_NEAR(cut_distance_upper(f, f.permuted(perm)).value, 0.0, 1e-15);

  EXPECT_NEAR(cut_distance_upper(StepGraphon::constant(0.8), StepGraphon::constant(0.3)).value, 0.5, 1e-15);

  const StepGraphon bip = StepGraphon::equal_blocks(2, {0, 1, 1, 0});
  const auto d = cut_distance_upper(bip, StepGraphon::constant(0.5));
  EXPECT_NEAR(d.value, 0.125, 1e-15);
  EXPECT_TRUE(d.exhaustive);
}

TEST(CutDistance, NeverExceedsIdentityAlignment) {
  CounterRng rng(59);
  for (int trial = 0; trial < 20; ++trial) {
    const StepGraphon f = oracle::random_step_graphon(3, rng, true);
    const StepGraphon g = oracle::random_step_graphon(3, rng, true);
    EXPECT_LE(cut_distance_upper(f, g).value, cut_norm_diff(f, g).value + 1e-15);
  }
}

TEST(CutDistance, RejectsUnequalWeights) {
  EXPECT_THROW((void)cut_distance_upper(StepGraphon({0.3, 0.7}, {0, 0, 0, 0}), StepGraphon::constant(0.2)),
               std::invalid_argument);
}

TEST(DeltaH, Examples) {
  CounterRng rng(61);
  for (double u : {0.0, 0.3, 0.7}) {
    const auto tri = delta_H(Motif::triangle(), StepGraphon::constant(u).split_blocks(2));
    for (double x : tri.data) EXPECT_NEAR(x, 3 * u * u, 1e-15);
    const auto star = delta_H(Motif::star(2), StepGraphon::constant(u));
    EXPECT_NEAR(star(0, 0), 2 * u, 1e-15);
  }
  const auto edge = delta_H(Motif::edge(), oracle::random_step_graphon(3, rng));
  for (double x : edge.data) EXPECT_EQ(x, 1.0);
}

TEST(DeltaH, MatchesDirectSummation) {
  CounterRng rng(67);
  for (int trial = 0; trial < 10; ++trial) {
    const StepGraphon f = oracle::random_step_graphon(3, rng);
    for (const auto& h : test_motifs()) {
      const auto d = delta_H(h, f);
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
          EXPECT_NEAR(d(a, b), delta_oracle(h, f, a, b), 1e-13) << h.name();
          EXPECT_GE(d(a, b), 0.0);
          EXPECT_EQ(d(a, b), d(b, a));
        }
    }
  }
}

TEST(DeltaH, IsTheDirectionalDerivative) {
  CounterRng rng(71);
  const double eps = 1e-6;
  for (int trial = 0; trial < 20; ++trial) {
    const int k = 3;
    // h away from the boundary, g a symmetric direction.
    std::vector<double> w{0.2, 0.3, 0.5};
    std::vector<double> hv(9);
    std::vector<double> gv(9);
    for (int a = 0; a < k; ++a)
      for (int b = a; b < k; ++b) {
        hv[a * k + b] = hv[b * k + a] = 0.1 + 0.8 * rng.uniform();
        gv[a * k + b] = gv[b * k + a] = 2 * rng.uniform() - 1;
      }
    const StepGraphon h(w, hv);
    auto shifted = [&](double s) {
      std::vector<double> v(9);
      for (int i = 0; i < 9; ++i) v[i] = hv[i] + s * gv[i];
      return StepGraphon(w, v);
    };
    for (const auto& motif : test_motifs()) {
      const double fd =
          (hom_density_graphon(motif, shifted(eps)) - hom_density_graphon(motif, shifted(-eps))) / (2 * eps);
      const auto d = delta_H(motif, h);
      double pairing = 0.0;
      for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b) pairing += w[a] * w[b] * gv[a * k + b] * d(a, b);
      EXPECT_NEAR(fd, pairing, 1e-4 * std::max(1.0, std::abs(pairing))) << motif.name();
    }
  }
}

TEST(DeltaH, SizeGuard) {
  EXPECT_THROW((void)delta_H(Motif::complete(7), StepGraphon::constant(0.5)), guard_error);
}
