#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace escset {

inline constexpr int kExitOk = 0;
inline constexpr int kExitContract = 1;
inline constexpr int kExitVerification = 2;

/// Runs one command line (without the program name). Exit codes: 0 success,
/// 1 usage or contract error, 2 failed verification.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace escset
