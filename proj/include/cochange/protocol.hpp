#pragma once

#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "cochange/metrics.hpp"
#include "cochange/stats.hpp"

namespace cochange::stats {

/// One classifier evaluation as produced by the classification harness.
struct EvaluationRecord {
  std::string project;
  std::string classifier;
  MetricSet set = MetricSet::p_c;
  double auroc = 0.0;
  double f1 = 0.0;
  double mcc = 0.0;
  double precision = 0.0;
  double recall = 0.0;
};

/// Reads `project,classifier,set_id,auroc,f1,mcc,precision,recall`.
std::vector<EvaluationRecord> load_evaluation_results(std::istream& in);

inline constexpr const char* kEvaluationMetrics[] = {"auroc", "f1", "mcc", "precision", "recall"};

struct Hypothesis {
  std::string metric;
  std::string name;  // "friedman" or "<set> vs <set>"
  double statistic = 0.0;
  double p_value = 1.0;
  double critical_difference = 0.0;
  bool significant = false;
};

/// Friedman across P+C / P+Co / P+C+Co per evaluation metric, blocks being
/// (project, classifier) pairs, then Nemenyi on every pair of sets.
/// Throws ValidationError when a block lacks one of the three sets.
std::vector<Hypothesis> run_protocol(const std::vector<EvaluationRecord>& records,
                                     double alpha = 0.05);

/// Header `metric,hypothesis,statistic,p_value,critical_difference,significant`.
void write_hypotheses(std::ostream& out, const std::vector<Hypothesis>& hypotheses);

}  // namespace cochange::stats
