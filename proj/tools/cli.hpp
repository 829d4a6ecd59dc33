#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace polyiso::cli {

inline constexpr const char* kVersion = "0.1.0";

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitNumerical = 3;
inline constexpr int kExitUnknownCommand = 64;

// Runs one subcommand. Artifacts go to --out; a short report goes to `out`,
// one-line diagnostics to `err`.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

std::string sha256_hex(const std::string& bytes);

}  // namespace polyiso::cli
