#pragma once

#include <complex>
#include <iosfwd>
#include <string>
#include <vector>

namespace bergkern::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kFailure = 1;  // uncertified or failed computation
inline constexpr int kUsage = 2;

// "0.3", "0.3+0.2i", "-0.1-2e-3i", "0.5i". Throws std::invalid_argument.
std::complex<double> parse_complex(const std::string& text);

// "1.5,2,3" -> {1.5, 2, 3}. Throws std::invalid_argument.
std::vector<double> parse_list(const std::string& text);

// Runs the command line `args` (without the program name). Results go to
// `out` unless --out names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace bergkern::cli
