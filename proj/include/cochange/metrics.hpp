#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "cochange/entropy.hpp"
#include "cochange/graph.hpp"
#include "cochange/vcs.hpp"

namespace cochange {

/// Process metrics for one (release, file) observation.
struct FileMetricsRow {
  std::string release;
  std::string file;
  std::uint64_t comm = 0;   // commits touching the file
  std::uint64_t adev = 0;   // distinct authors in the window
  std::uint64_t ddev = 0;   // distinct authors up to the release end
  double add = 0.0;         // lines added / window churn
  double del = 0.0;         // lines deleted / window churn
  double own = 0.0;         // top author's share of commits
  std::uint64_t minor = 0;  // authors below a 5% share
  double sctr = 0.0;        // change entropy
  double cce = 0.0;         // co-change entropy
  double nadev = 0.0;
  double nddev = 0.0;
  double ncomm = 0.0;
  double nsctr = 0.0;
  double ncce = 0.0;  // neighbor mean of cce; feeds nsctr under P+Co
  double oexp = 0.0;
  double exp = 0.0;
  std::optional<std::uint64_t> defect_count;
  std::optional<bool> label;

  friend bool operator==(const FileMetricsRow&, const FileMetricsRow&) = default;
};

inline constexpr double kMinorShare = 0.05;

/// Computes every metric of `file` in one release window. Neighbor aggregates
/// average the base metric over the file's co-change neighbors (0 when
/// isolated). Throws LookupError when the file is not in the window or the
/// release is not part of `full_history`.
FileMetricsRow compute_row(const std::string& release, const std::string& file,
                           const std::vector<Commit>& window_commits, const CoChangeGraph& graph,
                           const EntropyReport& change_report,
                           const EntropyReport& cochange_report,
                           const ChangeHistory& full_history);

/// Rows for every file changed in the window, sorted by path.
std::vector<FileMetricsRow> compute_release_rows(const std::string& release,
                                                 const std::vector<Commit>& window_commits,
                                                 const CoChangeGraph& graph,
                                                 const EntropyReport& change_report,
                                                 const EntropyReport& cochange_report,
                                                 const ChangeHistory& full_history);

enum class MetricSet { p_c, p_co, p_c_co };

const char* to_string(MetricSet set);
/// Accepts "P+C", "P+Co", "P+C+Co"; throws ConfigError otherwise.
MetricSet parse_metric_set(const std::string& text);

/// Column-projected dataset. Cells are already formatted for CSV.
struct MetricTable {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

/// Dataset header in export order.
const std::vector<std::string>& dataset_columns();

/// Projects rows onto a metric set. P+C drops cce; P+Co drops sctr and fills
/// nsctr from the neighbor mean of cce; P+C+Co keeps both.
MetricTable build_metric_set(const std::vector<FileMetricsRow>& rows, MetricSet set);

/// Full dataset (every column of dataset_columns()).
MetricTable full_table(const std::vector<FileMetricsRow>& rows);

void write_table(std::ostream& out, const MetricTable& table);

}  // namespace cochange
