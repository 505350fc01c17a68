#include "cochange/datasets.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <set>

#include "cochange/csv.hpp"
#include "cochange/error.hpp"

namespace cochange {

std::vector<DefectLabelRecord> load_labels(std::istream& in) {
  auto rows = csv::read_table(in, {"release", "file", "defect_count"});
  std::vector<DefectLabelRecord> records;
  std::set<std::pair<std::string, std::string>> seen;
  for (const auto& row : rows) {
    DefectLabelRecord rec{row[0], row[1], 0};
    const std::string& count = row[2];
    if (!count.empty() && count.front() == '-') {
      throw ValidationError("negative defect count for " + rec.release + "," + rec.file);
    }
    auto [ptr, ec] = std::from_chars(count.data(), count.data() + count.size(), rec.defect_count);
    if (count.empty() || ec != std::errc{} || ptr != count.data() + count.size()) {
      throw ValidationError("invalid defect count '" + count + "' for " + rec.release + "," +
                            rec.file);
    }
    if (!seen.emplace(rec.release, rec.file).second) {
      throw ValidationError("duplicate label key " + rec.release + "," + rec.file);
    }
    records.push_back(std::move(rec));
  }
  return records;
}

JoinResult join_and_label(std::vector<FileMetricsRow> rows,
                          const std::vector<DefectLabelRecord>& labels) {
  std::map<std::pair<std::string, std::string>, const DefectLabelRecord*> index;
  for (const auto& rec : labels) index.emplace(std::pair{rec.release, rec.file}, &rec);

  std::set<std::pair<std::string, std::string>> matched;
  for (auto& row : rows) {
    auto it = index.find({row.release, row.file});
    const std::uint64_t count = it == index.end() ? 0 : it->second->defect_count;
    if (it != index.end()) matched.insert(it->first);
    row.defect_count = count;
    row.label = count > 0;
  }
  JoinResult result;
  result.rows = std::move(rows);
  for (const auto& rec : labels) {
    if (!matched.contains({rec.release, rec.file})) result.orphans.push_back(rec);
  }
  return result;
}

Experiment emit_experiment(const std::vector<FileMetricsRow>& rows,
                           const std::vector<ReleaseSpec>& releases, MetricSet set) {
  std::vector<std::string> train_releases;
  std::vector<std::string> test_releases;
  for (const auto& r : releases) {
    (r.role == ReleaseRole::train ? train_releases : test_releases).push_back(r.name);
  }
  if (train_releases.empty()) throw ConfigError("experiment needs at least one train release");
  if (test_releases.size() != 1) {
    throw ConfigError("experiment needs exactly one test release, got " +
                      std::to_string(test_releases.size()));
  }

  std::vector<FileMetricsRow> train;
  for (const auto& name : train_releases) {
    for (const auto& row : rows) {
      if (row.release == name) train.push_back(row);
    }
  }
  std::vector<FileMetricsRow> test;
  for (const auto& row : rows) {
    if (row.release == test_releases.front()) test.push_back(row);
  }
  if (test.empty()) {
    throw ConfigError("test release '" + test_releases.front() + "' has no metric rows");
  }
  return {build_metric_set(train, set), build_metric_set(test, set)};
}

void write_experiment(const std::filesystem::path& outdir, const std::string& project,
                      MetricSet set, const Experiment& experiment) {
  const auto dir = outdir / project / to_string(set);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create '" + dir.string() + "': " + ec.message());
  for (const auto& [name, table] : {std::pair{"train.csv", &experiment.train},
                                    std::pair{"test.csv", &experiment.test}}) {
    const auto path = dir / name;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write '" + path.string() + "'");
    write_table(out, *table);
    if (!out) throw IoError("write failed for '" + path.string() + "'");
  }
}

}  // namespace cochange
