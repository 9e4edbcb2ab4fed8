#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ecx::cli {

inline constexpr const char* kToolVersion = "0.1.0";

/// Runs one `ecx` invocation. `args` excludes the program name. Returns the
/// process exit code; errors are written to `err` as one JSON object.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

std::string sha256_hex(const std::string& bytes);

} // namespace ecx::cli
