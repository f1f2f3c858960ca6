#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace lgce::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;
inline constexpr int kExitNumeric = 3;

/// Entry point of the `lgce` tool. Subcommands: convert, degrade, train,
/// finetune, enhance, eval, bdrate. Every subcommand prints a `config:` line
/// with all resolved settings before doing any work.
///
/// Log verbosity comes from the LGCE_LOG environment variable
/// (quiet | info | debug, default info).
int run(int argc, char** argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lgce::cli
