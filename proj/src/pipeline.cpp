#include "cochange/pipeline.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <future>
#include <map>

#include "cochange/error.hpp"
#include "cochange/glob.hpp"

namespace cochange {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  return in;
}

}  // namespace

ProjectConfig load_config(const std::filesystem::path& path) {
  auto in = open_input(path);
  const auto base = path.parent_path();
  auto resolve = [&](const std::string& value) {
    std::filesystem::path p(value);
    return p.is_absolute() ? p : base / p;
  };

  ProjectConfig config;
  config.output_dir = resolve("out");
  std::map<std::string, bool> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string content = trim(line);
    if (content.empty()) continue;
    const auto eq = content.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(path.string() + ":" + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key = trim(std::string_view(content).substr(0, eq));
    const std::string value = trim(std::string_view(content).substr(eq + 1));
    const std::string where = path.string() + ":" + std::to_string(line_no) + ": ";
    if (seen[key]) throw ConfigError(where + "duplicate key '" + key + "'");
    seen[key] = true;
    if (key == "project_name") {
      config.project_name = value;
    } else if (key == "log_path") {
      config.log_path = resolve(value);
    } else if (key == "releases_path") {
      config.releases_path = resolve(value);
    } else if (key == "labels_path") {
      if (!value.empty()) config.labels_path = resolve(value);
    } else if (key == "include_patterns") {
      config.include_patterns.clear();
      std::size_t start = 0;
      while (start <= value.size()) {
        auto comma = value.find(',', start);
        if (comma == std::string::npos) comma = value.size();
        auto pattern = trim(std::string_view(value).substr(start, comma - start));
        if (!pattern.empty()) config.include_patterns.push_back(pattern);
        start = comma + 1;
      }
      if (config.include_patterns.empty()) throw ConfigError(where + "include_patterns is empty");
      compile_globs(config.include_patterns);
    } else if (key == "fatty_threshold") {
      std::size_t v = 0;
      auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
      if (ec != std::errc{} || ptr != value.data() + value.size() || v < 1) {
        throw ConfigError(where + "fatty_threshold must be an integer >= 1");
      }
      config.fatty_threshold = v;
    } else if (key == "output_dir") {
      config.output_dir = resolve(value);
    } else if (key == "include_merges") {
      if (value != "true" && value != "false") {
        throw ConfigError(where + "include_merges must be true or false");
      }
      config.include_merges = value == "true";
    } else {
      throw ConfigError(where + "unknown key '" + key + "'");
    }
  }
  for (const char* required : {"project_name", "log_path", "releases_path"}) {
    if (!seen[required]) throw ConfigError(path.string() + ": missing key '" + required + "'");
  }
  return config;
}

PreparedProject prepare_project(const ProjectConfig& config) {
  PreparedProject project;
  project.config = config;

  std::vector<Commit> commits;
  {
    auto in = open_input(config.log_path);
    try {
      commits = parse_change_log(in);
    } catch (const ParseError& e) {
      throw ValidationError(config.log_path.string() + ": " + e.what());
    }
  }
  std::vector<ReleaseSpec> releases;
  {
    auto in = open_input(config.releases_path);
    try {
      releases = load_releases(in);
    } catch (const Error& e) {
      throw ValidationError(config.releases_path.string() + ": " + e.what());
    }
  }
  project.raw_commit_count = commits.size();
  commits = filter_merges(commits, config.include_merges);
  const std::size_t before_fatty = commits.size();
  commits = filter_fatty(commits, config.fatty_threshold);
  project.fatty_removed = before_fatty - commits.size();
  commits = filter_source_files(commits, config.include_patterns);

  project.history = make_history(std::move(commits), releases);
  auto windows = assign_release_windows(project.history);
  for (const auto& r : releases) {
    project.windows.push_back({r, std::move(windows[r.name])});
  }
  return project;
}

namespace {

ReleaseAnalysis analyze(const ReleaseWindow& window, const ChangeHistory& history) {
  ReleaseAnalysis a;
  a.release = window.release;
  a.graph = build_graph(window.commits);
  a.change = entropy_report_or_zero(window.commits, a.graph, Measure::change, &a.change_degenerate);
  a.cochange =
      entropy_report_or_zero(window.commits, a.graph, Measure::cochange, &a.cochange_degenerate);
  a.rows = compute_release_rows(window.release.name, window.commits, a.graph, a.change,
                                a.cochange, history);
  return a;
}

}  // namespace

std::vector<ReleaseAnalysis> analyze_releases(const PreparedProject& project, std::size_t jobs) {
  jobs = std::max<std::size_t>(jobs, 1);
  std::vector<ReleaseAnalysis> results;
  results.reserve(project.windows.size());
  for (std::size_t start = 0; start < project.windows.size(); start += jobs) {
    const std::size_t end = std::min(project.windows.size(), start + jobs);
    std::vector<std::future<ReleaseAnalysis>> batch;
    for (std::size_t i = start; i < end; ++i) {
      batch.push_back(std::async(jobs == 1 ? std::launch::deferred : std::launch::async, analyze,
                                 std::cref(project.windows[i]), std::cref(project.history)));
    }
    for (auto& f : batch) results.push_back(f.get());
  }
  return results;
}

std::vector<FileMetricsRow> collect_rows(const std::vector<ReleaseAnalysis>& analyses) {
  std::vector<FileMetricsRow> rows;
  for (const auto& a : analyses) rows.insert(rows.end(), a.rows.begin(), a.rows.end());
  return rows;
}

}  // namespace cochange
