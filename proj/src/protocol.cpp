#include "cochange/protocol.hpp"

#include <charconv>
#include <map>

#include "cochange/csv.hpp"
#include "cochange/error.hpp"

namespace cochange::stats {

namespace {

double parse_score(const std::string& text, std::size_t row) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw ValidationError("results row " + std::to_string(row) + ": invalid score '" + text + "'");
  }
  return value;
}

double score_of(const EvaluationRecord& r, const std::string& metric) {
  if (metric == "auroc") return r.auroc;
  if (metric == "f1") return r.f1;
  if (metric == "mcc") return r.mcc;
  if (metric == "precision") return r.precision;
  return r.recall;
}

constexpr MetricSet kSets[] = {MetricSet::p_c, MetricSet::p_co, MetricSet::p_c_co};

}  // namespace

std::vector<EvaluationRecord> load_evaluation_results(std::istream& in) {
  auto rows = csv::read_table(
      in, {"project", "classifier", "set_id", "auroc", "f1", "mcc", "precision", "recall"});
  std::vector<EvaluationRecord> records;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& row = rows[i];
    EvaluationRecord r;
    r.project = row[0];
    r.classifier = row[1];
    r.set = parse_metric_set(row[2]);
    r.auroc = parse_score(row[3], i + 1);
    r.f1 = parse_score(row[4], i + 1);
    r.mcc = parse_score(row[5], i + 1);
    r.precision = parse_score(row[6], i + 1);
    r.recall = parse_score(row[7], i + 1);
    records.push_back(std::move(r));
  }
  return records;
}

std::vector<Hypothesis> run_protocol(const std::vector<EvaluationRecord>& records, double alpha) {
  // block -> set index -> record
  std::map<std::pair<std::string, std::string>, std::map<int, const EvaluationRecord*>> blocks;
  for (const auto& r : records) {
    auto& slot = blocks[{r.project, r.classifier}][static_cast<int>(r.set)];
    if (slot) {
      throw ValidationError("duplicate result for " + r.project + "/" + r.classifier + "/" +
                            to_string(r.set));
    }
    slot = &r;
  }
  for (const auto& [key, sets] : blocks) {
    if (sets.size() != 3) {
      throw ValidationError("block " + key.first + "/" + key.second +
                            " lacks results for all three metric sets");
    }
  }

  std::vector<Hypothesis> out;
  for (const char* metric : kEvaluationMetrics) {
    ScoreMatrix matrix;
    matrix.blocks = blocks.size();
    matrix.treatments = 3;
    for (const auto& [key, sets] : blocks) {
      for (MetricSet s : kSets) matrix.values.push_back(score_of(*sets.at(static_cast<int>(s)), metric));
    }
    Hypothesis h;
    h.metric = metric;
    h.name = "friedman";
    std::vector<double> mean_ranks(3, 2.0);
    try {
      const StatResult fr = friedman(matrix);
      h.statistic = fr.statistic;
      h.p_value = fr.p_value;
      h.significant = fr.p_value < alpha;
      for (int j = 0; j < 3; ++j) mean_ranks[j] = fr.extras.at("mean_rank_" + std::to_string(j));
    } catch (const DegenerateInputError&) {
      // Identical scores everywhere: no treatment differs.
      h.statistic = 0.0;
      h.p_value = 1.0;
    }
    out.push_back(h);

    const NemenyiResult nm = nemenyi(mean_ranks, matrix.blocks, alpha);
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = i + 1; j < 3; ++j) {
        Hypothesis pair;
        pair.metric = metric;
        pair.name = std::string(to_string(kSets[i])) + " vs " + to_string(kSets[j]);
        pair.statistic = std::abs(mean_ranks[i] - mean_ranks[j]);
        pair.p_value = h.p_value;
        pair.critical_difference = nm.critical_difference;
        pair.significant = nm.significant[i][j];
        out.push_back(pair);
      }
    }
  }
  return out;
}

void write_hypotheses(std::ostream& out, const std::vector<Hypothesis>& hypotheses) {
  csv::write_row(out, {"metric", "hypothesis", "statistic", "p_value", "critical_difference",
                       "significant"});
  for (const auto& h : hypotheses) {
    csv::write_row(out, {h.metric, h.name, csv::format_double(h.statistic),
                         csv::format_double(h.p_value), csv::format_double(h.critical_difference),
                         h.significant ? "1" : "0"});
  }
}

}  // namespace cochange::stats
