#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "cochange/datasets.hpp"
#include "cochange/entropy.hpp"
#include "cochange/graph.hpp"
#include "cochange/metrics.hpp"
#include "cochange/vcs.hpp"

namespace cochange {

struct ProjectConfig {
  std::string project_name;
  std::filesystem::path log_path;
  std::filesystem::path releases_path;
  std::optional<std::filesystem::path> labels_path;
  std::vector<std::string> include_patterns{"**/*"};
  std::size_t fatty_threshold = 30;
  std::filesystem::path output_dir{"out"};
  bool include_merges = false;
};

/// Reads a `key = value` config file (`#` starts a comment). Relative paths
/// resolve against the config file's directory. Keys: project_name,
/// log_path, releases_path, labels_path, include_patterns (comma separated),
/// fatty_threshold, output_dir, include_merges.
ProjectConfig load_config(const std::filesystem::path& path);

struct ReleaseWindow {
  ReleaseSpec release;
  std::vector<Commit> commits;
};

/// Parsed and filtered history plus its per-release windows in the order
/// the release file lists them.
struct PreparedProject {
  ProjectConfig config;
  ChangeHistory history;
  std::vector<ReleaseWindow> windows;
  std::size_t raw_commit_count = 0;
  std::size_t fatty_removed = 0;
};

/// Loads the log and releases, excludes merges (unless configured), fatty
/// commits and non-matching paths, and assigns windows.
PreparedProject prepare_project(const ProjectConfig& config);

struct ReleaseAnalysis {
  ReleaseSpec release;
  CoChangeGraph graph;
  EntropyReport change;
  EntropyReport cochange;
  bool change_degenerate = false;
  bool cochange_degenerate = false;
  std::vector<FileMetricsRow> rows;
};

/// Graph, both entropy reports and metric rows per release window. Windows
/// are processed by up to `jobs` workers; results keep window order.
std::vector<ReleaseAnalysis> analyze_releases(const PreparedProject& project, std::size_t jobs = 1);

std::vector<FileMetricsRow> collect_rows(const std::vector<ReleaseAnalysis>& analyses);

}  // namespace cochange
