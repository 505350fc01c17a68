#pragma once

#include <cstddef>
#include <map>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "cochange/metrics.hpp"

namespace cochange::stats {

enum class Method { pearson, spearman, friedman, nemenyi };

const char* to_string(Method method);

struct StatResult {
  double statistic = 0.0;
  double p_value = 1.0;
  std::size_t n = 0;
  Method method = Method::pearson;
  std::map<std::string, double> extras;
};

/// Average ranks (1-based); ties share the mean of their positions.
std::vector<double> average_ranks(std::span<const double> values);

/// Product-moment correlation with a two-sided p-value from
/// t = r sqrt((n-2)/(1-r^2)) on n-2 degrees of freedom.
/// Throws ValidationError on length mismatch or n < 3, DegenerateInputError
/// on zero variance.
StatResult pearson(std::span<const double> x, std::span<const double> y);

enum class SpearmanPValue { t_approximation, exact };

/// Pearson correlation of average ranks. The exact p-value enumerates all
/// n! rank permutations and is only accepted for n <= 10.
StatResult spearman(std::span<const double> x, std::span<const double> y,
                    SpearmanPValue p_method = SpearmanPValue::t_approximation);

/// Row-major n blocks x k treatments.
struct ScoreMatrix {
  std::size_t blocks = 0;
  std::size_t treatments = 0;
  std::vector<double> values;

  double at(std::size_t block, std::size_t treatment) const {
    return values[block * treatments + treatment];
  }
};

enum class FriedmanPValue { automatic, chi_square, exact };

/// Largest (k!)^n for which `automatic` enumerates the exact permutation
/// distribution instead of the chi-square tail.
inline constexpr double kFriedmanExactLimit = 5e6;

/// Tie-corrected Friedman chi-square on within-block average ranks (rank 1 =
/// lowest score). extras: "df", "p_chi_square", "p_exact" (when computed),
/// "exact" (0/1), and "mean_rank_<j>" per treatment.
/// Throws ValidationError when k < 3 or n < 2, DegenerateInputError when
/// every block is constant.
StatResult friedman(const ScoreMatrix& scores, FriedmanPValue p_method = FriedmanPValue::automatic);

/// Nemenyi critical value q_alpha(k), k = 2..10, alpha in {0.05, 0.10}.
/// Throws ConfigError outside the table.
double nemenyi_q(std::size_t k, double alpha);

struct NemenyiResult {
  double critical_difference = 0.0;
  double q_alpha = 0.0;
  std::vector<double> mean_ranks;
  std::vector<std::vector<bool>> significant;  // symmetric, false diagonal
};

/// CD = q_alpha(k) sqrt(k(k+1)/(6n)); pair (i, j) differs iff the mean-rank
/// gap exceeds CD.
NemenyiResult nemenyi(std::span<const double> mean_ranks, std::size_t n, double alpha = 0.05);

enum class CorrelatedMetric { sctr, cce };

const char* to_string(CorrelatedMetric metric);

struct CorrelationPair {
  StatResult pearson;
  StatResult spearman;
};

/// Pools (metric, defect_count) over all rows. Throws ValidationError on
/// fewer than 3 rows or a row without a defect count.
CorrelationPair correlate_metric_vs_defects(const std::vector<FileMetricsRow>& rows,
                                            CorrelatedMetric metric);

/// Header `project,metric,pearson_r,pearson_p,spearman_rho,spearman_p`.
void write_correlation_header(std::ostream& out);
void write_correlation_row(std::ostream& out, const std::string& project,
                           CorrelatedMetric metric, const CorrelationPair& result);

}  // namespace cochange::stats
