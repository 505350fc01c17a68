#include "cochange/glob.hpp"

#include "cochange/error.hpp"

namespace cochange {

namespace {

// Validates bracket expressions; returns the index just past the closing ']'.
std::size_t bracket_end(std::string_view pattern, std::size_t open) {
  std::size_t i = open + 1;
  if (i < pattern.size() && (pattern[i] == '!' || pattern[i] == '^')) ++i;
  if (i < pattern.size() && pattern[i] == ']') ++i;  // literal ']' first
  while (i < pattern.size() && pattern[i] != ']') ++i;
  return i < pattern.size() ? i + 1 : std::string_view::npos;
}

bool bracket_matches(std::string_view expr, char c) {
  // expr excludes the outer brackets.
  bool negate = false;
  std::size_t i = 0;
  if (i < expr.size() && (expr[i] == '!' || expr[i] == '^')) {
    negate = true;
    ++i;
  }
  bool hit = false;
  while (i < expr.size()) {
    char lo = expr[i];
    if (i + 2 < expr.size() && expr[i + 1] == '-') {
      char hi = expr[i + 2];
      if (lo <= c && c <= hi) hit = true;
      i += 3;
    } else {
      if (lo == c) hit = true;
      ++i;
    }
  }
  return hit != negate;
}

bool match_from(std::string_view pat, std::string_view str) {
  std::size_t p = 0;
  std::size_t s = 0;
  while (p < pat.size()) {
    if (pat.compare(p, 2, "**") == 0) {
      std::size_t rest = p + 2;
      if (rest < pat.size() && pat[rest] == '/') {
        // "**/" : zero or more whole directories.
        std::string_view tail = pat.substr(rest + 1);
        if (match_from(tail, str.substr(s))) return true;
        for (std::size_t i = s; i < str.size(); ++i) {
          if (str[i] == '/' && match_from(tail, str.substr(i + 1))) return true;
        }
        return false;
      }
      std::string_view tail = pat.substr(rest);
      for (std::size_t i = s; i <= str.size(); ++i) {
        if (match_from(tail, str.substr(i))) return true;
      }
      return false;
    }
    const char c = pat[p];
    if (c == '*') {
      std::string_view tail = pat.substr(p + 1);
      for (std::size_t i = s; i <= str.size(); ++i) {
        if (match_from(tail, str.substr(i))) return true;
        if (i < str.size() && str[i] == '/') break;
      }
      return false;
    }
    if (s >= str.size()) return false;
    if (c == '?') {
      if (str[s] == '/') return false;
    } else if (c == '[') {
      std::size_t end = bracket_end(pat, p);
      if (str[s] == '/' || !bracket_matches(pat.substr(p + 1, end - p - 2), str[s])) return false;
      p = end;
      ++s;
      continue;
    } else if (c != str[s]) {
      return false;
    }
    ++p;
    ++s;
  }
  return s == str.size();
}

}  // namespace

Glob::Glob(std::string pattern) : pattern_(std::move(pattern)) {
  if (pattern_.empty()) throw ConfigError("empty glob pattern");
  for (std::size_t i = 0; i < pattern_.size(); ++i) {
    if (pattern_[i] == '[') {
      std::size_t end = bracket_end(pattern_, i);
      if (end == std::string::npos) throw ConfigError("invalid glob '" + pattern_ + "': unterminated '['");
      i = end - 1;
    }
  }
  basename_only_ = pattern_.find('/') == std::string::npos;
}

bool Glob::matches(std::string_view path) const {
  if (basename_only_) {
    auto slash = path.rfind('/');
    if (slash != std::string_view::npos) path = path.substr(slash + 1);
  }
  return match_from(pattern_, path);
}

std::vector<Glob> compile_globs(const std::vector<std::string>& patterns) {
  std::vector<Glob> globs;
  globs.reserve(patterns.size());
  for (const auto& p : patterns) globs.emplace_back(p);
  return globs;
}

}  // namespace cochange
