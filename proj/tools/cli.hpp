#pragma once

#include <complex>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace poncelet_cli {

/// Parses "re+imi" style literals: "0.2+0.3i", "-0.5", "0.3i", "-i",
/// "0.4714+-0.3333i". Throws std::invalid_argument on malformed input.
std::complex<double> parse_complex(std::string_view text);

/// Comma separated list of complex literals.
std::vector<std::complex<double>> parse_complex_list(std::string_view text);

/// Entry point shared by the executable and the tests. args excludes the
/// program name. Exit codes: 0 success, 1 asserted invariant violated,
/// 2 input or validation error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace poncelet_cli
