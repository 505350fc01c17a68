#include "cochange/vcs.hpp"

#include <algorithm>
#include <charconv>
#include <string_view>
#include <unordered_map>

#include "cochange/csv.hpp"
#include "cochange/error.hpp"
#include "cochange/glob.hpp"

namespace cochange {

namespace {

template <typename Int>
bool parse_int(std::string_view text, Int& value) {
  if (text.empty()) return false;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  return ec == std::errc{} && ptr == text.data() + text.size();
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    auto pos = text.find(sep, start);
    if (pos == std::string_view::npos) {
      parts.push_back(text.substr(start));
      return parts;
    }
    parts.push_back(text.substr(start, pos - start));
    start = pos + 1;
  }
}

Commit parse_header(std::string_view line, std::size_t line_no) {
  auto fields = split(line.substr(1), '|');
  if (fields.size() < 3 || fields.size() > 4) {
    throw ParseError(line_no, "commit header must be '@<hash>|<unix-ts>|<author>'");
  }
  Commit commit;
  if (fields[0].empty()) throw ParseError(line_no, "empty commit hash");
  commit.id = std::string(fields[0]);
  if (!parse_int(fields[1], commit.timestamp)) {
    throw ParseError(line_no, "invalid timestamp '" + std::string(fields[1]) + "'");
  }
  commit.author = std::string(fields[2]);
  if (fields.size() == 4) {
    std::size_t parents = 0;
    for (auto p : split(fields[3], ' ')) parents += p.empty() ? 0 : 1;
    commit.is_merge = parents > 1;
  }
  return commit;
}

FileChange parse_numstat(std::string_view line, std::size_t line_no) {
  auto first = line.find('\t');
  auto second = first == std::string_view::npos ? first : line.find('\t', first + 1);
  if (second == std::string_view::npos) {
    throw ParseError(line_no, "numstat line must be '<added>\\t<deleted>\\t<path>'");
  }
  std::string_view added = line.substr(0, first);
  std::string_view deleted = line.substr(first + 1, second - first - 1);
  FileChange change;
  change.path = std::string(line.substr(second + 1));
  if (change.path.empty()) throw ParseError(line_no, "empty path");
  if (added == "-" || deleted == "-") {
    change.binary = true;
    return change;
  }
  if (!parse_int(added, change.lines_added) || !parse_int(deleted, change.lines_deleted)) {
    throw ParseError(line_no, "invalid line counts '" + std::string(added) + "', '" +
                                  std::string(deleted) + "'");
  }
  return change;
}

void add_change(Commit& commit, std::unordered_map<std::string, std::size_t>& index,
                FileChange change) {
  auto [it, inserted] = index.emplace(change.path, commit.changes.size());
  if (inserted) {
    commit.changes.push_back(std::move(change));
    return;
  }
  FileChange& existing = commit.changes[it->second];
  existing.lines_added += change.lines_added;
  existing.lines_deleted += change.lines_deleted;
  existing.binary = existing.binary && change.binary;
}

}  // namespace

std::vector<Commit> parse_change_log(std::istream& in) {
  std::vector<Commit> commits;
  std::unordered_map<std::string, std::size_t> index;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = line;
    if (!view.empty() && view.back() == '\r') view.remove_suffix(1);
    if (view.empty()) continue;
    if (view.front() == '@') {
      commits.push_back(parse_header(view, line_no));
      index.clear();
      continue;
    }
    if (commits.empty()) throw ParseError(line_no, "file change before any commit header");
    add_change(commits.back(), index, parse_numstat(view, line_no));
  }
  return commits;
}

void write_change_log(std::ostream& out, const std::vector<Commit>& commits) {
  for (std::size_t i = 0; i < commits.size(); ++i) {
    const Commit& c = commits[i];
    if (i) out << '\n';
    out << '@' << c.id << '|' << c.timestamp << '|' << c.author;
    if (c.is_merge) out << "|p1 p2";
    out << '\n';
    for (const auto& ch : c.changes) {
      if (ch.binary) {
        out << "-\t-\t" << ch.path << '\n';
      } else {
        out << ch.lines_added << '\t' << ch.lines_deleted << '\t' << ch.path << '\n';
      }
    }
  }
}

const char* to_string(ReleaseRole role) { return role == ReleaseRole::train ? "train" : "test"; }

void validate_releases(const std::vector<ReleaseSpec>& releases) {
  std::vector<std::string> names;
  for (const auto& r : releases) {
    if (r.name.empty()) throw ValidationError("release with empty name");
    if (r.start_time >= r.end_time) {
      throw ValidationError("release '" + r.name + "': start_time must be before end_time");
    }
    names.push_back(r.name);
  }
  std::sort(names.begin(), names.end());
  auto dup = std::adjacent_find(names.begin(), names.end());
  if (dup != names.end()) throw ValidationError("duplicate release name '" + *dup + "'");
}

std::vector<ReleaseSpec> load_releases(std::istream& in) {
  auto rows = csv::read_table(in, {"name", "start_time", "end_time", "role"});
  std::vector<ReleaseSpec> releases;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& row = rows[i];
    ReleaseSpec spec;
    spec.name = row[0];
    if (!parse_int(row[1], spec.start_time) || !parse_int(row[2], spec.end_time)) {
      throw ValidationError("release '" + spec.name + "': invalid time");
    }
    if (row[3] == "train") {
      spec.role = ReleaseRole::train;
    } else if (row[3] == "test") {
      spec.role = ReleaseRole::test;
    } else {
      throw ValidationError("release '" + spec.name + "': role must be train or test, got '" +
                            row[3] + "'");
    }
    releases.push_back(std::move(spec));
  }
  validate_releases(releases);
  return releases;
}

ChangeHistory make_history(std::vector<Commit> commits, std::vector<ReleaseSpec> releases) {
  std::stable_sort(commits.begin(), commits.end(),
                   [](const Commit& a, const Commit& b) { return a.timestamp < b.timestamp; });
  return ChangeHistory{std::move(commits), std::move(releases)};
}

std::map<std::string, std::vector<Commit>> assign_release_windows(const ChangeHistory& history) {
  validate_releases(history.releases);
  std::vector<const ReleaseSpec*> ordered;
  for (const auto& r : history.releases) ordered.push_back(&r);
  std::sort(ordered.begin(), ordered.end(), [](const ReleaseSpec* a, const ReleaseSpec* b) {
    return a->start_time < b->start_time;
  });
  for (std::size_t i = 1; i < ordered.size(); ++i) {
    // (s1, e1] and (s2, e2] with s1 <= s2 overlap iff s2 < e1.
    if (ordered[i]->start_time < ordered[i - 1]->end_time) {
      throw ConfigError("overlapping release windows '" + ordered[i - 1]->name + "' and '" +
                        ordered[i]->name + "'");
    }
  }

  std::map<std::string, std::vector<Commit>> windows;
  for (const auto* r : ordered) windows[r->name];
  for (const Commit& c : history.commits) {
    // First window whose end is >= timestamp; disjointness makes it unique.
    auto it = std::lower_bound(ordered.begin(), ordered.end(), c.timestamp,
                               [](const ReleaseSpec* r, std::int64_t t) { return r->end_time < t; });
    if (it != ordered.end() && (*it)->start_time < c.timestamp) {
      windows[(*it)->name].push_back(c);
    }
  }
  return windows;
}

std::vector<Commit> filter_fatty(const std::vector<Commit>& commits, std::size_t threshold) {
  if (threshold < 1) throw ValidationError("fatty threshold must be >= 1");
  std::vector<Commit> kept;
  std::copy_if(commits.begin(), commits.end(), std::back_inserter(kept),
               [&](const Commit& c) { return c.changes.size() <= threshold; });
  return kept;
}

std::vector<Commit> filter_source_files(const std::vector<Commit>& commits,
                                        const std::vector<std::string>& include_patterns) {
  if (include_patterns.empty()) throw ConfigError("include patterns must not be empty");
  const auto globs = compile_globs(include_patterns);
  std::vector<Commit> kept;
  for (const Commit& c : commits) {
    Commit filtered = c;
    std::erase_if(filtered.changes, [&](const FileChange& ch) {
      return std::none_of(globs.begin(), globs.end(),
                          [&](const Glob& g) { return g.matches(ch.path); });
    });
    if (!filtered.changes.empty()) kept.push_back(std::move(filtered));
  }
  return kept;
}

std::vector<Commit> filter_merges(const std::vector<Commit>& commits, bool include_merges) {
  if (include_merges) return commits;
  std::vector<Commit> kept;
  std::copy_if(commits.begin(), commits.end(), std::back_inserter(kept),
               [](const Commit& c) { return !c.is_merge; });
  return kept;
}

}  // namespace cochange
