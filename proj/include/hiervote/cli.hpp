#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace hiervote::cli {

// Exit codes
inline constexpr int kOk = 0;
inline constexpr int kCheckFailed = 1;
inline constexpr int kInvalidInput = 2;

/// Runs one command line (without the program name). Data goes to `out`,
/// diagnostics and run metadata to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// "%.12g"
std::string format_number(double value);

}  // namespace hiervote::cli
