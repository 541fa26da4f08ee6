#ifndef HADROW_TOOLS_CLI_HPP_
#define HADROW_TOOLS_CLI_HPP_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace hadrow::cli {

enum ExitCode : int {
    kSuccess = 0,
    kVerificationFailed = 1,
    kUsageError = 2,
    kIoError = 3,
};

/// Runs one invocation. `args` excludes the program name. Data goes to
/// `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Parses "a..b" (half-open) ranges and single indices separated by commas;
/// the result is sorted and deduplicated. Throws std::invalid_argument.
std::vector<std::uint64_t> parse_index_list(std::string_view text);

}  // namespace hadrow::cli

#endif  // HADROW_TOOLS_CLI_HPP_
