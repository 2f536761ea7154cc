#ifndef PAULI_CLI_HPP
#define PAULI_CLI_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace pauli {

inline constexpr const char *tool_version = "1.0.0";

/// 64-bit FNV-1a.
std::uint64_t fnv1a(std::string_view text);

/// "lo:hi:step" into lo, lo + step, ..., hi (inclusive, rounded count).
std::vector<double> parse_range(const std::string &spec);

/// Exit status: 0 when every requested check passes, 1 on a failed
/// check, 2 on a usage or configuration error.
int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

} // namespace pauli

#endif
