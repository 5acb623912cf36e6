#pragma once

#include "vbir/sensitivity.hpp"

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace vbir::cli {

enum ExitCode : int { Ok = 0, CheckFailed = 1, UsageError = 2 };

/// Runs one command; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Arithmetic over numbers and `pi`: "pi/2", "3pi/4", "-0.25*pi", "1.2".
double parse_phase(std::string_view expr);

/// "alpha=2,r=0.5,theta=pi/4"; a leading bare number is alpha.
sensitivity::InputStateSpec parse_state(std::string_view kind, std::string_view params);

}  // namespace vbir::cli
