/**
 * @file cli.hpp
 * @brief Command-line front end: `analyze`, `simulate`, `riskbudget`.
 *
 * Exit codes: 0 success, 1 data error, 2 usage error. Failures print a
 * single `error kind=...` line on the error stream.
 */

#pragma once

#include <ostream>
#include <string_view>
#include <vector>

#include "pacomp/composite.hpp"

namespace pacomp
{

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// "unit" or a comma-separated list of positive numbers.
std::vector<double> parse_number_list(std::string_view text);

/// "lo:hi:count" -> count values linearly spaced over [lo, hi].
std::vector<double> parse_grid(std::string_view text);

} // namespace pacomp
