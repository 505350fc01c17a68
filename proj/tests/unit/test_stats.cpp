#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "cochange/error.hpp"
#include "cochange/stats.hpp"
#include "stats_oracles.hpp"

namespace cochange::stats {
namespace {

using testing::oracle_friedman_permutation_p;
using testing::oracle_pearson;
using testing::oracle_spearman;
using testing::oracle_t_two_sided;

std::vector<double> random_vector(std::mt19937_64& rng, std::size_t n, bool ties) {
  std::vector<double> v(n);
  std::uniform_real_distribution<double> u(-10, 10);
  std::uniform_int_distribution<int> small(0, 4);
  for (auto& x : v) x = ties ? small(rng) : u(rng);
  return v;
}

TEST(AverageRanks, TiesShareMeanRank) {
  const std::vector<double> v{10, 20, 20, 40};
  EXPECT_EQ(average_ranks(v), (std::vector<double>{1, 2.5, 2.5, 4}));
  const std::vector<double> w{3, 3, 3};
  EXPECT_EQ(average_ranks(w), (std::vector<double>{2, 2, 2}));
}

TEST(Pearson, ExactLinearity) {
  std::vector<double> x, y, neg;
  for (int i = 1; i <= 10; ++i) {
    x.push_back(i);
    y.push_back(2 * i + 1);
    neg.push_back(-i);
  }
  const auto r = pearson(x, y);
  EXPECT_NEAR(r.statistic, 1.0, 1e-15);
  EXPECT_LT(r.p_value, 1e-9);
  EXPECT_EQ(r.n, 10u);
  EXPECT_NEAR(pearson(x, neg).statistic, -1.0, 1e-15);
}

TEST(Pearson, HandComputedExamples) {
  const std::vector<double> x{1, 2, 3, 4, 5};
  // sxy = 10, sxx = 10, syy = 14.8
  const std::vector<double> y{2, 1, 4, 3, 6};
  const auto r = pearson(x, y);
  EXPECT_NEAR(r.statistic, 10.0 / std::sqrt(148.0), 1e-12);
  EXPECT_NEAR(r.p_value, 0.08770664700806553, 1e-9);
  // sxy = 8, sxx = syy = 10: r = 0.8 exactly
  const std::vector<double> y2{1, 3, 2, 5, 4};
  const auto r2 = pearson(x, y2);
  EXPECT_NEAR(r2.statistic, 0.8, 1e-12);
  EXPECT_NEAR(r2.p_value, 0.104, 1e-3);
  EXPECT_NEAR(r2.p_value, oracle_t_two_sided(0.8 * std::sqrt(3 / 0.36), 3), 1e-9);
}

TEST(Pearson, Errors) {
  const std::vector<double> a{1, 2, 3}, b{1, 2}, c{5, 5, 5};
  EXPECT_THROW(pearson(a, b), ValidationError);
  EXPECT_THROW(pearson(b, b), ValidationError);
  EXPECT_THROW(pearson(a, c), DegenerateInputError);
  EXPECT_THROW(spearman(a, c), DegenerateInputError);
}

TEST(Pearson, MatchesOracleOnRandomVectors) {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = 5 + rng() % 46;
    const auto x = random_vector(rng, n, i % 3 == 0);
    const auto y = random_vector(rng, n, i % 4 == 0);
    const auto r = pearson(x, y);
    EXPECT_NEAR(r.statistic, oracle_pearson(x, y), 1e-9);
    const double t = r.statistic * std::sqrt((n - 2) / (1 - r.statistic * r.statistic));
    EXPECT_NEAR(r.p_value, oracle_t_two_sided(t, n - 2.0), 1e-8);
  }
}

TEST(Pearson, AffineInvariance) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> coef(-5, 5);
  for (int i = 0; i < 100; ++i) {
    const auto x = random_vector(rng, 20, false);
    const auto y = random_vector(rng, 20, false);
    double a = coef(rng), c = coef(rng);
    if (std::abs(a) < 0.1) a = 1;
    if (std::abs(c) < 0.1) c = -1;
    const double b = coef(rng), d = coef(rng);
    std::vector<double> xt, yt;
    for (double v : x) xt.push_back(a * v + b);
    for (double v : y) yt.push_back(c * v + d);
    EXPECT_NEAR(pearson(xt, yt).statistic, (a * c > 0 ? 1 : -1) * pearson(x, y).statistic, 1e-9);
  }
}

TEST(Pearson, PValueMonotoneInAbsR) {
  std::mt19937_64 rng(9);
  std::vector<StatResult> results;
  for (int i = 0; i < 200; ++i) {
    const auto x = random_vector(rng, 20, false);
    auto y = random_vector(rng, 20, false);
    for (std::size_t j = 0; j < y.size(); ++j) y[j] += (i % 10) * 0.3 * x[j];
    results.push_back(pearson(x, y));
  }
  std::sort(results.begin(), results.end(), [](const StatResult& a, const StatResult& b) {
    return std::abs(a.statistic) < std::abs(b.statistic);
  });
  for (std::size_t i = 1; i < results.size(); ++i) {
    EXPECT_LE(results[i].p_value, results[i - 1].p_value + 1e-15);
  }
}

TEST(Spearman, Examples) {
  const std::vector<double> x{1, 2, 3, 4, 5, 6};
  const std::vector<double> cube{1, 8, 27, 64, 125, 216};
  const std::vector<double> rev{6, 5, 4, 3, 2, 1};
  EXPECT_NEAR(spearman(x, cube).statistic, 1.0, 1e-15);
  EXPECT_NEAR(spearman(x, rev).statistic, -1.0, 1e-15);
  const std::vector<double> tx{1, 2, 2, 4}, ty{10, 20, 20, 40};
  EXPECT_NEAR(spearman(tx, ty).statistic, 1.0, 1e-15);
}

TEST(Spearman, MatchesOracleIncludingTies) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = 5 + rng() % 46;
    const auto x = random_vector(rng, n, i % 2 == 0);
    const auto y = random_vector(rng, n, i % 3 == 0);
    EXPECT_NEAR(spearman(x, y).statistic, oracle_spearman(x, y), 1e-9);
  }
}

TEST(Spearman, InvariantUnderIncreasingTransforms) {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 50; ++i) {
    const auto x = random_vector(rng, 15, i % 2 == 0);
    const auto y = random_vector(rng, 15, false);
    std::vector<double> xt;
    for (double v : x) xt.push_back(std::exp(v / 3) + v * v * v);
    EXPECT_NEAR(spearman(xt, y).statistic, spearman(x, y).statistic, 1e-12);
  }
}

TEST(Spearman, ExactPValue) {
  const std::vector<double> x{3.1, 1.2, 5.5, 4.4, 2.0, 6.7, 0.3};
  const std::vector<double> y{2.2, 2.9, 4.1, 3.3, 1.0, 7.7, 0.5};
  const auto approx = spearman(x, y);
  EXPECT_NEAR(approx.statistic, 0.8928571428571429, 1e-12);
  EXPECT_NEAR(approx.p_value, 0.006807187408935392, 1e-9);
  // 62 of 5040 rank permutations reach |rho| >= 0.8929 (enumerated offline).
  const auto exact = spearman(x, y, SpearmanPValue::exact);
  EXPECT_NEAR(exact.p_value, 62.0 / 5040.0, 1e-12);
  std::vector<double> seq(11);
  for (int i = 0; i < 11; ++i) seq[i] = i;
  EXPECT_THROW(spearman(seq, seq, SpearmanPValue::exact), ValidationError);
}

ScoreMatrix matrix(const std::vector<std::vector<double>>& rows) {
  ScoreMatrix m{rows.size(), rows.front().size(), {}};
  for (const auto& r : rows) m.values.insert(m.values.end(), r.begin(), r.end());
  return m;
}

TEST(Friedman, PerfectSeparation) {
  const auto r = friedman(matrix(std::vector<std::vector<double>>(10, {0.1, 0.5, 0.9})));
  EXPECT_DOUBLE_EQ(r.statistic, 20.0);
  EXPECT_LT(r.p_value, 1e-4);
  EXPECT_NEAR(r.p_value, 4.539992976248486e-05, 1e-12);
  EXPECT_EQ(r.extras.at("exact"), 0.0);
  EXPECT_DOUBLE_EQ(r.extras.at("mean_rank_0"), 1.0);
  EXPECT_DOUBLE_EQ(r.extras.at("mean_rank_2"), 3.0);
}

TEST(Friedman, DegenerateAndInvalidInputs) {
  EXPECT_THROW(friedman(matrix({{1, 1, 1}, {2, 2, 2}})), DegenerateInputError);
  EXPECT_THROW(friedman(matrix({{1, 2}, {2, 1}})), ValidationError);
  EXPECT_THROW(friedman(matrix({{1, 2, 3}})), ValidationError);
}

TEST(Friedman, TieCorrection) {
  // Hand computation: ranks (1,2.5,2.5),(1,2,3),(2,1,3); R = (4, 5.5, 8.5);
  // sum R^2 = 118.5; raw = 12/36*118.5 - 36 = 3.5; ties: one 2-tie -> T = 6,
  // correction = 1 - 6/(3*3*8) = 11/12; statistic = 3.5 * 12/11.
  const auto r = friedman(matrix({{1, 5, 5}, {1, 2, 3}, {2, 1, 3}}), FriedmanPValue::chi_square);
  EXPECT_NEAR(r.statistic, 3.5 * 12.0 / 11.0, 1e-12);
}

TEST(Friedman, ExactMatchesPermutationOracle) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0, 1);
  for (std::size_t n : {4u, 5u, 6u}) {
    for (int trial = 0; trial < 5; ++trial) {
      std::vector<std::vector<double>> rows(n, std::vector<double>(3));
      for (auto& row : rows) {
        for (auto& v : row) v = u(rng);
        row[2] += 0.3 * trial / 5.0;
      }
      const auto r = friedman(matrix(rows));
      EXPECT_EQ(r.extras.at("exact"), 1.0);
      EXPECT_NEAR(r.p_value, oracle_friedman_permutation_p(rows), 1e-9);
    }
  }
}

TEST(Friedman, InvariantUnderPerBlockIncreasingTransforms) {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(0, 1);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<std::vector<double>> rows(7, std::vector<double>(4));
    for (auto& row : rows) for (auto& v : row) v = std::floor(u(rng) * 4);
    auto transformed = rows;
    for (std::size_t b = 0; b < rows.size(); ++b) {
      const double scale = 1 + b;
      for (auto& v : transformed[b]) v = std::exp(v) * scale - 3;
    }
    try {
      const auto a = friedman(matrix(rows), FriedmanPValue::chi_square);
      const auto b = friedman(matrix(transformed), FriedmanPValue::chi_square);
      EXPECT_NEAR(a.statistic, b.statistic, 1e-12);
      EXPECT_NEAR(a.p_value, b.p_value, 1e-12);
    } catch (const DegenerateInputError&) {
    }
  }
}

TEST(Nemenyi, CriticalDifferenceExample) {
  const std::vector<double> ranks{1.4, 2.2, 2.4};
  const auto r = nemenyi(ranks, 40);
  EXPECT_NEAR(r.critical_difference, 2.343 * std::sqrt(12.0 / 240.0), 1e-12);
  EXPECT_NEAR(r.critical_difference, 0.524, 1e-3);
  EXPECT_TRUE(r.significant[0][2]);
  EXPECT_TRUE(r.significant[0][1]);
  EXPECT_FALSE(r.significant[1][2]);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_FALSE(r.significant[i][i]);
    for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(r.significant[i][j], r.significant[j][i]);
  }
}

TEST(Nemenyi, EqualRanksAndLargeN) {
  const std::vector<double> equal{2, 2, 2};
  for (const auto& row : nemenyi(equal, 10).significant) {
    for (bool s : row) EXPECT_FALSE(s);
  }
  const std::vector<double> gapped{1.9, 2.0, 2.1};
  EXPECT_FALSE(nemenyi(gapped, 40).significant[0][1]);
  EXPECT_TRUE(nemenyi(gapped, 1000000).significant[0][1]);
}

TEST(Nemenyi, Table) {
  EXPECT_DOUBLE_EQ(nemenyi_q(3, 0.05), 2.343);
  EXPECT_DOUBLE_EQ(nemenyi_q(10, 0.05), 3.164);
  EXPECT_DOUBLE_EQ(nemenyi_q(3, 0.10), 2.052);
  EXPECT_THROW(nemenyi_q(11, 0.05), ConfigError);
  EXPECT_THROW(nemenyi_q(1, 0.05), ConfigError);
  EXPECT_THROW(nemenyi_q(3, 0.01), ConfigError);
}

FileMetricsRow labeled(double cce, double sctr, std::uint64_t defects) {
  FileMetricsRow r;
  r.release = "r";
  r.file = "f" + std::to_string(cce);
  r.cce = cce;
  r.sctr = sctr;
  r.defect_count = defects;
  r.label = defects > 0;
  return r;
}

TEST(Correlate, PlantedLinearSignal) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0, 3);
  std::vector<FileMetricsRow> rows;
  for (int i = 0; i < 200; ++i) {
    const double cce = u(rng);
    rows.push_back(labeled(cce, u(rng), static_cast<std::uint64_t>(std::lround(10 * cce))));
  }
  EXPECT_GT(correlate_metric_vs_defects(rows, CorrelatedMetric::cce).pearson.statistic, 0.99);
}

TEST(Correlate, ToyHandRanked) {
  // cce: A 0.476, B 0.238, C 0.476, D 0.715; defects 1, 0, 1, 2.
  // Ranks: cce (2.5, 1, 2.5, 4), defects (2.5, 1, 2.5, 4) -> rho = 1.
  std::vector<FileMetricsRow> rows{labeled(0.4765, 0.67, 1), labeled(0.2382, 0.06, 0),
                                   labeled(0.4765, 0.67, 1), labeled(0.7146, 0.20, 2)};
  const auto r = correlate_metric_vs_defects(rows, CorrelatedMetric::cce);
  EXPECT_NEAR(r.spearman.statistic, 1.0, 1e-12);
  EXPECT_EQ(r.spearman.n, 4u);
}

TEST(Correlate, Errors) {
  std::vector<FileMetricsRow> rows{labeled(1, 1, 1), labeled(2, 2, 2)};
  EXPECT_THROW(correlate_metric_vs_defects(rows, CorrelatedMetric::cce), ValidationError);
  rows.push_back(labeled(3, 3, 3));
  rows.back().defect_count.reset();
  EXPECT_THROW(correlate_metric_vs_defects(rows, CorrelatedMetric::cce), ValidationError);
}

}  // namespace
}  // namespace cochange::stats
