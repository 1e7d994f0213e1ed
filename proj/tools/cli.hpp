#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace nkdv::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitNumeric = 1;
inline constexpr int kExitInput = 2;

// Environment variable naming the default directory for files the CLI writes
// besides standard output (simulation slices).
inline constexpr const char* kOutputDirEnv = "NKDV_OUTPUT_DIR";

// Runs the command line `args` (args[0] is the program name). Results go to
// `out`, log lines and error messages to `err`. Returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nkdv::cli
