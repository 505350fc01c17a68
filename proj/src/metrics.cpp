#include "cochange/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "cochange/csv.hpp"
#include "cochange/error.hpp"

namespace cochange {

namespace {

// Project-wide state up to the release end, shared by every file row.
struct ReleaseContext {
  std::map<std::string, std::uint64_t> author_commits;
  std::uint64_t total_commits = 0;
  std::map<std::string, std::set<std::string>> cumulative_authors;

  double experience(const std::string& author) const {
    auto it = author_commits.find(author);
    if (it == author_commits.end() || total_commits == 0) return 0.0;
    return static_cast<double>(it->second) / static_cast<double>(total_commits);
  }
};

const ReleaseSpec& find_release(const ChangeHistory& history, const std::string& name) {
  for (const auto& r : history.releases) {
    if (r.name == name) return r;
  }
  throw LookupError("release '" + name + "' not in change history");
}

ReleaseContext make_context(const ChangeHistory& history, const std::string& release) {
  const ReleaseSpec& spec = find_release(history, release);
  ReleaseContext ctx;
  for (const Commit& c : history.commits) {
    if (c.timestamp > spec.end_time) break;
    ++ctx.author_commits[c.author];
    ++ctx.total_commits;
    for (const auto& ch : c.changes) ctx.cumulative_authors[ch.path].insert(c.author);
  }
  return ctx;
}

FileMetricsRow base_row(const std::string& release, const std::string& file,
                        const std::vector<Commit>& window, const EntropyReport& change_report,
                        const EntropyReport& cochange_report, const ReleaseContext& ctx) {
  FileMetricsRow row;
  row.release = release;
  row.file = file;

  std::map<std::string, std::uint64_t> author_touches;
  std::uint64_t added = 0;
  std::uint64_t deleted = 0;
  for (const Commit& c : window) {
    auto it = std::find_if(c.changes.begin(), c.changes.end(),
                           [&](const FileChange& ch) { return ch.path == file; });
    if (it == c.changes.end()) continue;
    ++row.comm;
    ++author_touches[c.author];
    added += it->lines_added;
    deleted += it->lines_deleted;
  }
  if (row.comm == 0) {
    throw LookupError("file '" + file + "' not changed in window of release '" + release + "'");
  }

  row.adev = author_touches.size();
  std::set<std::string> all_authors;
  if (auto it = ctx.cumulative_authors.find(file); it != ctx.cumulative_authors.end()) {
    all_authors = it->second;
  }
  for (const auto& [author, n] : author_touches) all_authors.insert(author);
  row.ddev = all_authors.size();

  const std::uint64_t churn = added + deleted;
  if (churn > 0) {
    row.add = static_cast<double>(added) / static_cast<double>(churn);
    row.del = static_cast<double>(deleted) / static_cast<double>(churn);
  }

  // map order makes the first maximum the lexicographically smallest author.
  const std::string* owner = nullptr;
  std::uint64_t owner_touches = 0;
  for (const auto& [author, n] : author_touches) {
    const double share = static_cast<double>(n) / static_cast<double>(row.comm);
    if (share < kMinorShare) ++row.minor;
    if (n > owner_touches) {
      owner = &author;
      owner_touches = n;
    }
  }
  row.own = static_cast<double>(owner_touches) / static_cast<double>(row.comm);
  row.oexp = ctx.experience(*owner);

  double log_sum = 0.0;
  std::size_t positive = 0;
  for (const auto& [author, n] : author_touches) {
    const double e = ctx.experience(author);
    if (e > 0.0) {
      log_sum += std::log(e);
      ++positive;
    }
  }
  row.exp = positive == 0 ? 0.0 : std::exp(log_sum / static_cast<double>(positive));

  auto lookup = [&](const EntropyReport& report) {
    auto it = report.per_file.find(file);
    return it == report.per_file.end() ? 0.0 : it->second;
  };
  row.sctr = lookup(change_report);
  row.cce = lookup(cochange_report);
  return row;
}

void fill_neighbors(FileMetricsRow& row, const std::vector<const FileMetricsRow*>& neighbors) {
  if (neighbors.empty()) return;
  const double n = static_cast<double>(neighbors.size());
  double adev = 0, ddev = 0, comm = 0, sctr = 0, cce = 0;
  for (const auto* nb : neighbors) {
    adev += static_cast<double>(nb->adev);
    ddev += static_cast<double>(nb->ddev);
    comm += static_cast<double>(nb->comm);
    sctr += nb->sctr;
    cce += nb->cce;
  }
  row.nadev = adev / n;
  row.nddev = ddev / n;
  row.ncomm = comm / n;
  row.nsctr = sctr / n;
  row.ncce = cce / n;
}

std::vector<std::string> format_row(const FileMetricsRow& r) {
  using csv::format_double;
  return {r.release,
          r.file,
          std::to_string(r.comm),
          std::to_string(r.adev),
          std::to_string(r.ddev),
          format_double(r.add),
          format_double(r.del),
          format_double(r.own),
          std::to_string(r.minor),
          format_double(r.sctr),
          format_double(r.cce),
          format_double(r.nadev),
          format_double(r.nddev),
          format_double(r.ncomm),
          format_double(r.nsctr),
          format_double(r.oexp),
          format_double(r.exp),
          r.defect_count ? std::to_string(*r.defect_count) : std::string{},
          r.label ? (*r.label ? "1" : "0") : std::string{}};
}

}  // namespace

FileMetricsRow compute_row(const std::string& release, const std::string& file,
                           const std::vector<Commit>& window_commits, const CoChangeGraph& graph,
                           const EntropyReport& change_report,
                           const EntropyReport& cochange_report,
                           const ChangeHistory& full_history) {
  const ReleaseContext ctx = make_context(full_history, release);
  FileMetricsRow row =
      base_row(release, file, window_commits, change_report, cochange_report, ctx);
  if (!graph.contains(file)) return row;
  std::vector<FileMetricsRow> neighbor_rows;
  for (const auto& nb : graph.neighbors(file)) {
    neighbor_rows.push_back(
        base_row(release, nb, window_commits, change_report, cochange_report, ctx));
  }
  std::vector<const FileMetricsRow*> ptrs;
  for (const auto& r : neighbor_rows) ptrs.push_back(&r);
  fill_neighbors(row, ptrs);
  return row;
}

std::vector<FileMetricsRow> compute_release_rows(const std::string& release,
                                                 const std::vector<Commit>& window_commits,
                                                 const CoChangeGraph& graph,
                                                 const EntropyReport& change_report,
                                                 const EntropyReport& cochange_report,
                                                 const ChangeHistory& full_history) {
  const ReleaseContext ctx = make_context(full_history, release);
  std::set<std::string> files;
  for (const Commit& c : window_commits) {
    for (const auto& ch : c.changes) files.insert(ch.path);
  }
  std::vector<FileMetricsRow> rows;
  std::map<std::string, std::size_t> index;
  for (const auto& f : files) {
    index.emplace(f, rows.size());
    rows.push_back(base_row(release, f, window_commits, change_report, cochange_report, ctx));
  }
  // Base values are final before any neighbor aggregate is read.
  const std::vector<FileMetricsRow> base = rows;
  for (auto& row : rows) {
    if (!graph.contains(row.file)) continue;
    std::vector<const FileMetricsRow*> neighbors;
    for (const auto& nb : graph.neighbors(row.file)) {
      auto it = index.find(nb);
      if (it != index.end()) neighbors.push_back(&base[it->second]);
    }
    fill_neighbors(row, neighbors);
  }
  return rows;
}

const char* to_string(MetricSet set) {
  switch (set) {
    case MetricSet::p_c:
      return "P+C";
    case MetricSet::p_co:
      return "P+Co";
    case MetricSet::p_c_co:
      return "P+C+Co";
  }
  return "?";
}

MetricSet parse_metric_set(const std::string& text) {
  if (text == "P+C") return MetricSet::p_c;
  if (text == "P+Co") return MetricSet::p_co;
  if (text == "P+C+Co") return MetricSet::p_c_co;
  throw ConfigError("unknown metric set '" + text + "' (expected P+C, P+Co or P+C+Co)");
}

const std::vector<std::string>& dataset_columns() {
  static const std::vector<std::string> columns{
      "release", "file",  "comm",  "adev",  "ddev",  "add",  "del",
      "own",     "minor", "sctr",  "cce",   "nadev", "nddev", "ncomm",
      "nsctr",   "oexp",  "exp",   "defect_count",   "label"};
  return columns;
}

MetricTable full_table(const std::vector<FileMetricsRow>& rows) {
  MetricTable table;
  table.columns = dataset_columns();
  for (const auto& r : rows) table.rows.push_back(format_row(r));
  return table;
}

MetricTable build_metric_set(const std::vector<FileMetricsRow>& rows, MetricSet set) {
  const auto& all = dataset_columns();
  const auto col = [&](const char* name) {
    return static_cast<std::size_t>(std::find(all.begin(), all.end(), name) - all.begin());
  };
  const std::size_t drop = set == MetricSet::p_c ? col("cce")
                           : set == MetricSet::p_co ? col("sctr")
                                                    : all.size();
  MetricTable table;
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (i != drop) table.columns.push_back(all[i]);
  }
  const std::size_t nsctr = col("nsctr");
  for (const auto& r : rows) {
    auto cells = format_row(r);
    if (set == MetricSet::p_co) cells[nsctr] = csv::format_double(r.ncce);
    std::vector<std::string> projected;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i != drop) projected.push_back(std::move(cells[i]));
    }
    table.rows.push_back(std::move(projected));
  }
  return table;
}

void write_table(std::ostream& out, const MetricTable& table) {
  csv::write_row(out, table.columns);
  for (const auto& row : table.rows) csv::write_row(out, row);
}

}  // namespace cochange
