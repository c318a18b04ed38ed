#ifndef SPLITROOTS_CLI_HPP
#define SPLITROOTS_CLI_HPP

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace splitroots::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomainError = 1;
inline constexpr int kExitUsage = 2;

/// Entry point for the splitroots command line. Subcommands: theory,
/// piecewise, scan, stats, table, volume.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// 12 significant digits, half-to-even, from the exact binary value.
std::string format_real(double v);

/// Leading digit and negative decimal exponent, "1(3)" for 1.x * 10^-3.
std::string leading_digit_notation(double v);

/// "2..4", "7" or "2,3,5".
std::vector<int> parse_int_list(std::string_view text);

} // namespace splitroots::cli

#endif
