#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pvalent::cli {

/// Exit codes: 0 success, 1 domain or usage error (error JSON on `err`),
/// 2 I/O error. `selftest` also exits 1 when a criterion fails.
inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitIo = 2;

/// Runs one subcommand. `args` excludes the program name. Series files named
/// "-" are read from `in`.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace pvalent::cli
