#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace cochange {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitIo = 2;

/// Runs one subcommand. `args` excludes the program name.
/// Returns 0 on success, 1 on usage/validation errors, 2 on I/O errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cochange
