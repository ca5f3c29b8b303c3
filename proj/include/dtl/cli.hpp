#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dtl {

// Exit codes: 0 success, 1 domain error, 2 usage error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitUsage = 2;

// Runs one subcommand. `args` excludes the program name. Data goes to `out` (or --out FILE),
// diagnostics and the run manifest (when writing to `out`) to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Hex SHA-256 of a byte string or of a file's contents.
std::string sha256_hex(const std::string& bytes);
std::string sha256_file(const std::string& path);

}  // namespace dtl
