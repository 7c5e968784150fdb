#pragma once

#include <complex>
#include <string>
#include <vector>

namespace lfa::cli {

// exit-code contract: 0 ok, 2 usage, 3 math domain, 4 nonconvergence,
// 5 calibration bound violated
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitMathDomain = 3;
inline constexpr int kExitNonconvergence = 4;
inline constexpr int kExitBoundViolation = 5;

// "a+bi" with optional signs and decimal exponents; "2", "2i", "-i",
// "1e-3-2.5i" all parse
std::complex<double> parse_complex(const std::string& text);

std::vector<double> parse_grid(const std::string& text);

int run(int argc, const char* const* argv);

}  // namespace lfa::cli
