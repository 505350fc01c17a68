#pragma once

#include <cstdint>
#include <istream>
#include <map>
#include <ostream>
#include <string>
#include <vector>

namespace cochange {

/// One file touched by a commit. Binary changes carry 0/0 line deltas.
struct FileChange {
  std::string path;
  std::uint64_t lines_added = 0;
  std::uint64_t lines_deleted = 0;
  bool binary = false;

  friend bool operator==(const FileChange&, const FileChange&) = default;
};

struct Commit {
  std::string id;
  std::int64_t timestamp = 0;  // UTC seconds
  std::string author;
  bool is_merge = false;
  std::vector<FileChange> changes;

  friend bool operator==(const Commit&, const Commit&) = default;
};

enum class ReleaseRole { train, test };

/// A release window (start_time, end_time].
struct ReleaseSpec {
  std::string name;
  std::int64_t start_time = 0;
  std::int64_t end_time = 0;
  ReleaseRole role = ReleaseRole::train;

  friend bool operator==(const ReleaseSpec&, const ReleaseSpec&) = default;
};

struct ChangeHistory {
  std::vector<Commit> commits;  // sorted non-decreasing by timestamp
  std::vector<ReleaseSpec> releases;

  friend bool operator==(const ChangeHistory&, const ChangeHistory&) = default;
};

/// Parses `git log --reverse --numstat --pretty=format:'@%H|%at|%ae'` output.
///
/// A record starts with `@<hash>|<unix-ts>|<author>` (an optional fourth
/// field lists space-separated parent hashes; more than one parent marks a
/// merge). Each following non-blank line is `<added>\t<deleted>\t<path>`.
/// A `-` count marks a binary change and is recorded as 0/0. A path listed
/// twice in one record is merged by summing its line counts.
std::vector<Commit> parse_change_log(std::istream& in);

/// Inverse of parse_change_log for its own output.
void write_change_log(std::ostream& out, const std::vector<Commit>& commits);

/// Reads the `name,start_time,end_time,role` release CSV and validates it.
std::vector<ReleaseSpec> load_releases(std::istream& in);

/// Throws ValidationError on start >= end or a duplicated name.
void validate_releases(const std::vector<ReleaseSpec>& releases);

/// Builds a history with commits stably sorted by timestamp.
ChangeHistory make_history(std::vector<Commit> commits, std::vector<ReleaseSpec> releases);

/// Assigns each commit to the release whose window (start, end] contains its
/// timestamp. Throws ConfigError naming the first overlapping pair.
std::map<std::string, std::vector<Commit>> assign_release_windows(const ChangeHistory& history);

/// Drops commits touching more than `threshold` files.
std::vector<Commit> filter_fatty(const std::vector<Commit>& commits, std::size_t threshold = 30);

/// Restricts each commit to paths matching any pattern; drops emptied commits.
std::vector<Commit> filter_source_files(const std::vector<Commit>& commits,
                                        const std::vector<std::string>& include_patterns);

std::vector<Commit> filter_merges(const std::vector<Commit>& commits, bool include_merges);

const char* to_string(ReleaseRole role);

}  // namespace cochange
