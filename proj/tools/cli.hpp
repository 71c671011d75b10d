#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace nnm::cli {

/// Process exit codes.
enum ExitCode : int {
    kOk = 0,
    kCheckFailed = 1,  // an axiom or an equivalence check failed
    kUsage = 2,
    kRange = 3,  // value outside the generator range
    kDivisionByAlphaZero = 4,
    kDiverged = 5,
    kMaxIters = 6,  // iteration budget exhausted without convergence
    kNumeric = 7,   // non-finite iterate or distance
    kDomain = 8,    // argument outside an operation's domain
};

/// Newline-, comma- or whitespace-separated reals. Throws UsageError.
std::vector<double> parse_number_list(std::string_view text);

/// Runs one command line (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace nnm::cli
