#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace wbpr::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;
inline constexpr int kExitParse = 2;
inline constexpr int kExitInput = 3;

// args excludes the program name. Human-readable output goes to `out`,
// diagnostics to `err`; artifacts are written to the paths named in args.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace wbpr::cli
