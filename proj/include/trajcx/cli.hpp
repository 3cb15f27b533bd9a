#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace trajcx {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitUsage = 2;

// Entry point of the trajcx command line, minus the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace trajcx
