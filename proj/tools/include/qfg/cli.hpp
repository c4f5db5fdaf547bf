#pragma once

// qfg command dispatch. Exit codes: 0 success, 2 bad input, 3 numerical or
// domain failure, 4 verification failure.

#include <ostream>
#include <span>
#include <string>

#include <nlohmann/json.hpp>

#include "qfisher/error.hpp"

namespace qfg {

inline constexpr int kExitOk = 0;
inline constexpr int kExitBadInput = 2;
inline constexpr int kExitNumerical = 3;
inline constexpr int kExitVerifyFailed = 4;

int exit_code_for(qfisher::ErrorKind kind) noexcept;

/// args excludes the program name.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

/// Ordered JSON with numbers printed as %.12g (always carrying a '.' or an
/// exponent) and negative zero folded to 0.0.
std::string format_number(double v);
std::string dump(const nlohmann::ordered_json& j);

}  // namespace qfg
