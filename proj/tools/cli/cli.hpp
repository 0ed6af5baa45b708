#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ssvep::cli {

// Exit codes: 0 success, 1 runtime or I/O failure, 2 usage error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitUsage = 2;

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// "start:step:end" (end inclusive within 1e-9) or "a,b,c".
std::vector<double> parse_values(const std::string& text);

}  // namespace ssvep::cli
