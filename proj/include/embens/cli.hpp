#ifndef EMBENS_CLI_HPP
#define EMBENS_CLI_HPP

#include <string>
#include <vector>

namespace embens {

// Exit code contract shared by all subcommands.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;         // unreadable/invalid input files or data
inline constexpr int kExitNoConvergence = 3; // iteration cap hit; outputs still written
inline constexpr int kExitSolver = 4;        // numerical solve failed
inline constexpr int kExitUsage = 5;         // bad flags or configuration

// Parses and runs one invocation; args excludes the program name.
int run_cli(const std::vector<std::string>& args);

} // namespace embens

#endif
