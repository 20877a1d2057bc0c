#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace plumbcalc::cli {

// Exit codes of run().
inline constexpr int kOk = 0;
inline constexpr int kDomainError = 1;
inline constexpr int kUsageError = 2;
inline constexpr int kOutOfScope = 3;
inline constexpr int kInternalError = 4;

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace plumbcalc::cli
