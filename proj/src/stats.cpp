#include "cochange/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/students_t.hpp>

#include "cochange/csv.hpp"
#include "cochange/error.hpp"

namespace cochange::stats {

namespace {

void check_pair(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw ValidationError("length mismatch: " + std::to_string(x.size()) + " vs " +
                          std::to_string(y.size()));
  }
  if (x.size() < 3) throw ValidationError("correlation needs at least 3 observations");
}

double correlation(std::span<const double> x, std::span<const double> y) {
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) throw DegenerateInputError("zero variance");
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

double t_test_p(double r, std::size_t n) {
  if (std::abs(r) >= 1.0) return 0.0;
  const double df = static_cast<double>(n - 2);
  const double t = r * std::sqrt(df / (1.0 - r * r));
  boost::math::students_t dist(df);
  return std::clamp(2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(t))), 0.0, 1.0);
}

double factorial(std::size_t k) {
  double f = 1.0;
  for (std::size_t i = 2; i <= k; ++i) f *= static_cast<double>(i);
  return f;
}

// Friedman chi-square from treatment rank sums, before tie correction.
double friedman_numerator(const std::vector<double>& rank_sums, std::size_t n, std::size_t k) {
  double sum_sq = 0.0;
  for (double r : rank_sums) sum_sq += r * r;
  const double nd = static_cast<double>(n), kd = static_cast<double>(k);
  return 12.0 / (nd * kd * (kd + 1.0)) * sum_sq - 3.0 * nd * (kd + 1.0);
}

// Exact permutation p-value: distribution of rank-sum vectors when every
// block's ranks are permuted independently. Ranks are doubled to stay integral.
double friedman_exact_p(const std::vector<std::vector<double>>& block_ranks, std::size_t k,
                        double observed_numerator) {
  const std::size_t n = block_ranks.size();
  std::map<std::vector<int>, double> states{{std::vector<int>(k, 0), 1.0}};
  for (const auto& ranks : block_ranks) {
    std::vector<int> doubled(k);
    for (std::size_t j = 0; j < k; ++j) doubled[j] = static_cast<int>(std::lround(2.0 * ranks[j]));
    std::sort(doubled.begin(), doubled.end());
    std::vector<std::vector<int>> perms;
    do {
      perms.push_back(doubled);
    } while (std::next_permutation(doubled.begin(), doubled.end()));
    const double weight = 1.0 / static_cast<double>(perms.size());

    std::map<std::vector<int>, double> next;
    for (const auto& [sums, prob] : states) {
      for (const auto& perm : perms) {
        std::vector<int> s = sums;
        for (std::size_t j = 0; j < k; ++j) s[j] += perm[j];
        next[std::move(s)] += prob * weight;
      }
    }
    states = std::move(next);
  }
  double p = 0.0;
  std::vector<double> rank_sums(k);
  for (const auto& [sums, prob] : states) {
    for (std::size_t j = 0; j < k; ++j) rank_sums[j] = sums[j] / 2.0;
    if (friedman_numerator(rank_sums, n, k) >= observed_numerator - 1e-9) p += prob;
  }
  return std::clamp(p, 0.0, 1.0);
}

}  // namespace

const char* to_string(Method method) {
  switch (method) {
    case Method::pearson:
      return "pearson";
    case Method::spearman:
      return "spearman";
    case Method::friedman:
      return "friedman";
    case Method::nemenyi:
      return "nemenyi";
  }
  return "?";
}

std::vector<double> average_ranks(std::span<const double> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(values.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]]) ++j;
    const double rank = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t m = i; m <= j; ++m) ranks[order[m]] = rank;
    i = j + 1;
  }
  return ranks;
}

StatResult pearson(std::span<const double> x, std::span<const double> y) {
  check_pair(x, y);
  StatResult result;
  result.method = Method::pearson;
  result.n = x.size();
  result.statistic = correlation(x, y);
  result.p_value = t_test_p(result.statistic, result.n);
  result.extras["df"] = static_cast<double>(result.n - 2);
  return result;
}

StatResult spearman(std::span<const double> x, std::span<const double> y,
                    SpearmanPValue p_method) {
  check_pair(x, y);
  const auto rx = average_ranks(x);
  auto ry = average_ranks(y);
  StatResult result;
  result.method = Method::spearman;
  result.n = x.size();
  result.statistic = correlation(rx, ry);
  if (p_method == SpearmanPValue::t_approximation) {
    result.p_value = t_test_p(result.statistic, result.n);
    result.extras["df"] = static_cast<double>(result.n - 2);
    return result;
  }
  if (result.n > 10) throw ValidationError("exact Spearman p-value supports n <= 10");
  // Distinct arrangements of a multiset are equally likely under the null,
  // so counting them gives the same fraction as counting all n! orderings.
  std::sort(ry.begin(), ry.end());
  std::uint64_t hits = 0;
  std::uint64_t total = 0;
  const double observed = std::abs(result.statistic);
  do {
    ++total;
    if (std::abs(correlation(rx, ry)) >= observed - 1e-12) ++hits;
  } while (std::next_permutation(ry.begin(), ry.end()));
  result.p_value = static_cast<double>(hits) / static_cast<double>(total);
  result.extras["exact"] = 1.0;
  return result;
}

StatResult friedman(const ScoreMatrix& scores, FriedmanPValue p_method) {
  const std::size_t n = scores.blocks;
  const std::size_t k = scores.treatments;
  if (k < 3) throw ValidationError("Friedman test needs at least 3 treatments");
  if (n < 2) throw ValidationError("Friedman test needs at least 2 blocks");
  if (scores.values.size() != n * k) throw ValidationError("score matrix size mismatch");

  std::vector<std::vector<double>> block_ranks;
  std::vector<double> rank_sums(k, 0.0);
  double tie_term = 0.0;
  for (std::size_t b = 0; b < n; ++b) {
    std::span<const double> row(scores.values.data() + b * k, k);
    auto ranks = average_ranks(row);
    for (std::size_t j = 0; j < k; ++j) rank_sums[j] += ranks[j];
    std::vector<double> sorted(row.begin(), row.end());
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < k;) {
      std::size_t j = i;
      while (j + 1 < k && sorted[j + 1] == sorted[i]) ++j;
      const double t = static_cast<double>(j - i + 1);
      tie_term += t * t * t - t;
      i = j + 1;
    }
    block_ranks.push_back(std::move(ranks));
  }
  const double nd = static_cast<double>(n), kd = static_cast<double>(k);
  const double correction = 1.0 - tie_term / (nd * kd * (kd * kd - 1.0));
  if (correction <= 1e-12) throw DegenerateInputError("every block is constant; no ranking information");

  const double numerator = friedman_numerator(rank_sums, n, k);
  StatResult result;
  result.method = Method::friedman;
  result.n = n;
  result.statistic = std::max(0.0, numerator / correction);
  const double df = kd - 1.0;
  boost::math::chi_squared chi(df);
  const double p_chi = std::clamp(boost::math::cdf(boost::math::complement(chi, result.statistic)), 0.0, 1.0);
  result.extras["df"] = df;
  result.extras["p_chi_square"] = p_chi;
  for (std::size_t j = 0; j < k; ++j) result.extras["mean_rank_" + std::to_string(j)] = rank_sums[j] / nd;

  const bool small = std::pow(factorial(k), nd) <= kFriedmanExactLimit;
  const bool exact = p_method == FriedmanPValue::exact ||
                     (p_method == FriedmanPValue::automatic && small);
  if (exact) {
    if (!small) throw ValidationError("exact Friedman p-value too expensive for this design");
    const double p_exact = friedman_exact_p(block_ranks, k, numerator);
    result.extras["p_exact"] = p_exact;
    result.p_value = p_exact;
  } else {
    result.p_value = p_chi;
  }
  result.extras["exact"] = exact ? 1.0 : 0.0;
  return result;
}

double nemenyi_q(std::size_t k, double alpha) {
  // Two-tailed Nemenyi critical values: studentized range quantile / sqrt(2)
  // (infinite df), as tabulated in Demsar, JMLR 7 (2006), Table 5(a).
  static constexpr double q05[] = {1.960, 2.343, 2.569, 2.728, 2.850, 2.949, 3.031, 3.102, 3.164};
  static constexpr double q10[] = {1.645, 2.052, 2.291, 2.459, 2.589, 2.693, 2.780, 2.855, 2.920};
  if (k < 2 || k > 10) throw ConfigError("Nemenyi table covers k = 2..10, got " + std::to_string(k));
  if (std::abs(alpha - 0.05) < 1e-12) return q05[k - 2];
  if (std::abs(alpha - 0.10) < 1e-12) return q10[k - 2];
  throw ConfigError("Nemenyi table covers alpha 0.05 and 0.10 only");
}

NemenyiResult nemenyi(std::span<const double> mean_ranks, std::size_t n, double alpha) {
  const std::size_t k = mean_ranks.size();
  NemenyiResult result;
  result.q_alpha = nemenyi_q(k, alpha);
  if (n == 0) throw ValidationError("Nemenyi test needs at least one block");
  const double kd = static_cast<double>(k);
  result.critical_difference =
      result.q_alpha * std::sqrt(kd * (kd + 1.0) / (6.0 * static_cast<double>(n)));
  result.mean_ranks.assign(mean_ranks.begin(), mean_ranks.end());
  result.significant.assign(k, std::vector<bool>(k, false));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      const bool sig = std::abs(mean_ranks[i] - mean_ranks[j]) > result.critical_difference;
      result.significant[i][j] = sig;
      result.significant[j][i] = sig;
    }
  }
  return result;
}

const char* to_string(CorrelatedMetric metric) {
  return metric == CorrelatedMetric::sctr ? "sctr" : "cce";
}

CorrelationPair correlate_metric_vs_defects(const std::vector<FileMetricsRow>& rows,
                                            CorrelatedMetric metric) {
  if (rows.size() < 3) throw ValidationError("correlation needs at least 3 rows");
  std::vector<double> values, defects;
  for (const auto& r : rows) {
    if (!r.defect_count) {
      throw ValidationError("row " + r.release + "/" + r.file + " has no defect count");
    }
    values.push_back(metric == CorrelatedMetric::sctr ? r.sctr : r.cce);
    defects.push_back(static_cast<double>(*r.defect_count));
  }
  return {pearson(values, defects), spearman(values, defects)};
}

void write_correlation_header(std::ostream& out) {
  csv::write_row(out, {"project", "metric", "pearson_r", "pearson_p", "spearman_rho", "spearman_p"});
}

void write_correlation_row(std::ostream& out, const std::string& project,
                           CorrelatedMetric metric, const CorrelationPair& result) {
  csv::write_row(out, {project, to_string(metric), csv::format_double(result.pearson.statistic),
                       csv::format_double(result.pearson.p_value),
                       csv::format_double(result.spearman.statistic),
                       csv::format_double(result.spearman.p_value)});
}

}  // namespace cochange::stats
