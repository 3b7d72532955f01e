#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "jratio/complex_geometry.hpp"

namespace jratio::cli {

inline constexpr std::string_view kToolVersion = "0.1.0";

enum ExitCode : int {
  kOk = 0,
  kViolation = 1,
  kBadArguments = 2,
  kNotConverged = 3,
};

/// Parses `RE+IMi`, `RE-IMi`, `IMi` or a bare real. Returns nullopt on any
/// malformed or non-finite input.
std::optional<ComplexPoint> parse_complex(std::string_view text);

/// Shortest round-trip text for a complex value in the `RE+IMi` syntax.
std::string format_complex(ComplexPoint z);

/// Runs the tool on `args` (without the program name). Payloads go to `out`
/// (or to --output), diagnostics to `err`. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace jratio::cli
