#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <string>
#include <vector>

#include "cochange/metrics.hpp"
#include "cochange/vcs.hpp"

namespace cochange {

struct DefectLabelRecord {
  std::string release;
  std::string file;
  std::uint64_t defect_count = 0;

  friend bool operator==(const DefectLabelRecord&, const DefectLabelRecord&) = default;
};

/// Reads the `release,file,defect_count` CSV. Duplicate keys and negative
/// or non-integer counts raise ValidationError.
std::vector<DefectLabelRecord> load_labels(std::istream& in);

struct JoinResult {
  std::vector<FileMetricsRow> rows;
  /// Label records that matched no metric row.
  std::vector<DefectLabelRecord> orphans;
};

/// Sets defect_count and label on every row; rows without a record are
/// clean (0, false). Row order is preserved.
JoinResult join_and_label(std::vector<FileMetricsRow> rows,
                          const std::vector<DefectLabelRecord>& labels);

struct Experiment {
  MetricTable train;
  MetricTable test;
};

/// Train = rows of every train release (in release order), test = rows of
/// the single test release, both projected through `set`.
/// Throws ConfigError without a train release, without exactly one test
/// release, or when the test release has no rows.
Experiment emit_experiment(const std::vector<FileMetricsRow>& rows,
                           const std::vector<ReleaseSpec>& releases, MetricSet set);

/// Writes `<outdir>/<project>/<set>/{train,test}.csv`. Throws IoError.
void write_experiment(const std::filesystem::path& outdir, const std::string& project,
                      MetricSet set, const Experiment& experiment);

}  // namespace cochange
