#ifndef GM_CLI_HPP
#define GM_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace gm::cli {

/// Stable exit codes.
enum ExitCode : int { kHolds = 0, kVerdictFails = 1, kInputError = 2, kNumericError = 3 };

/**
 * Entry point behind the `gmtool` binary. Subcommands: check, analyze,
 * sweep, majorize. Output goes to `out`, diagnostics to `err`.
 */
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// "3,1,1" -> {3, 1, 1}; throws InputError on malformed entries.
std::vector<double> parse_real_list(const std::string& text);
std::vector<std::size_t> parse_count_list(const std::string& text);

}  // namespace gm::cli

#endif
