#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace cochange {

/// Path glob with `*`, `?`, `[...]` and `**`.
///
/// `*` and `?` never cross `/`; `**/` matches zero or more directories and a
/// trailing `**` matches the rest of the path. A pattern without `/` is
/// matched against the basename only, so `*.java` selects `src/A.java`.
class Glob {
 public:
  /// Throws ConfigError on an empty pattern or an unterminated `[`.
  explicit Glob(std::string pattern);

  bool matches(std::string_view path) const;
  const std::string& pattern() const noexcept { return pattern_; }

 private:
  std::string pattern_;
  bool basename_only_ = false;
};

std::vector<Glob> compile_globs(const std::vector<std::string>& patterns);

}  // namespace cochange
