#pragma once

#include <iosfwd>

namespace mmlp {

/// Exit codes of the command-line tool.
enum ExitCode : int { kExitOk = 0, kExitValidation = 1, kExitUsage = 2 };

/// Environment variable overriding the default oracle cap.
inline constexpr const char* kOracleCapEnv = "MMLP_ORACLE_CAP";

/// Entry point of the `mmlp` tool: gen-torus, gen-random, gen-lowerbound, solve,
/// run, adversary, eval, growth.
int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mmlp
