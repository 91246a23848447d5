#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ccmm::cli {

/// Exit codes.
constexpr int kOk = 0;
constexpr int kVerificationFailure = 1;
constexpr int kUsageError = 2;

/// Runs one command line (without the program name). Everything printed goes
/// to `out`/`err`; `in` feeds verbs that read standard input.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

/// Convenience overload using the process streams.
int run(const std::vector<std::string>& args);

}  // namespace ccmm::cli
