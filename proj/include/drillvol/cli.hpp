#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace drillvol::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  // validation, parse, numeric errors
inline constexpr int kExitUsage = 2;

/// Environment variable overriding the default output precision.
inline constexpr const char* kPrecisionEnv = "DRILLVOL_PRECISION";

/// Parses a numeric flag value: a plain decimal, or the literal tokens
/// `ln3/2` and `ln3`. Throws std::invalid_argument otherwise.
double parse_numeric_token(const std::string& token);

/// Entry point. `args` excludes the program name. Data goes to `out`;
/// diagnostics go to `err`, each prefixed `error:<category>:`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace drillvol::cli
