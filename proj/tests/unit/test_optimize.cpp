#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "cqsl/optimize.hpp"
#include "cqsl/random.hpp"

using namespace cqsl;

TEST(NelderMead, FindsQuadraticMinimum) {
  const Objective f = [](std::span<const double> x) {
    return (x[0] - 1.0) * (x[0] - 1.0) + 4.0 * (x[1] + 2.0) * (x[1] + 2.0) + 3.0;
  };
  const NelderMeadResult r = nelder_mead(f, {0.0, 0.0});
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.value, 3.0, 1e-9);
  EXPECT_NEAR(r.x[0], 1.0, 1e-3);
  EXPECT_NEAR(r.x[1], -2.0, 1e-3);
}

TEST(NelderMead, HandlesNonsmoothObjective) {
  const Objective f = [](std::span<const double> x) { return std::abs(x[0] - 0.3) + std::abs(x[1] + 0.7); };
  const NelderMeadResult r = nelder_mead(f, {2.0, 2.0});
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.value, 0.0, 1e-6);
}

TEST(NelderMead, OneDimensional) {
  const Objective f = [](std::span<const double> x) { return std::cosh(x[0] - 0.5); };
  const NelderMeadResult r = nelder_mead(f, {-3.0});
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.value, 1.0, 1e-9);
}

TEST(NelderMead, ReportsIterationCap) {
  const Objective f = [](std::span<const double> x) {
    return 100.0 * std::pow(x[1] - x[0] * x[0], 2) + std::pow(1.0 - x[0], 2);
  };
  const NelderMeadResult r = nelder_mead(f, {-1.2, 1.0}, {.tolerance = 1e-15, .max_iterations = 5});
  EXPECT_FALSE(r.converged);
  EXPECT_LE(r.iterations, 10);
}

TEST(Softmax, MapsOntoSimplexAndInverts) {
  SplitMix64 rng(1);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> logits(3);
    for (auto& l : logits) l = 3.0 * rng.normal();
    const std::vector<double> w = softmax_weights(logits);
    ASSERT_EQ(w.size(), 4u);
    EXPECT_NEAR(std::accumulate(w.begin(), w.end(), 0.0), 1.0, 1e-14);
    for (double x : w) EXPECT_GE(x, 0.0);
    const std::vector<double> back = weights_to_logits(w);
    ASSERT_EQ(back.size(), 3u);
    for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(back[i], logits[i], 1e-9);
  }
}

TEST(Softmax, EmptyLogitsGiveSingleWeight) {
  const std::vector<double> w = softmax_weights({});
  ASSERT_EQ(w.size(), 1u);
  EXPECT_DOUBLE_EQ(w[0], 1.0);
}

TEST(SplitMix64, DeterministicAndWellSpread) {
  SplitMix64 a(42), b(42);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.next(), b.next());

  SplitMix64 g(7);
  const int n = 200000;
  double sum = 0.0, sum2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = g.normal();
    sum += x;
    sum2 += x * x;
  }
  EXPECT_NEAR(sum / n, 0.0, 0.01);
  EXPECT_NEAR(sum2 / n, 1.0, 0.01);
  EXPECT_NE(split_seed(1, 0), split_seed(1, 1));
  EXPECT_NE(split_seed(1, 0), split_seed(2, 0));
}
