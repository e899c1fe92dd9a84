#pragma once

// Command-line front end. Exit codes: 0 ok, 1 mathematical failure (a
// violation, an insufficient bound, a rejected certificate), 2 usage error,
// 3 I/O failure. Payloads go to `out`; diagnostics and timing to `err`.

#include <ostream>
#include <string>
#include <vector>

namespace qchar {

inline constexpr int kExitOk = 0;
inline constexpr int kExitMath = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitIo = 3;

/// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace qchar
