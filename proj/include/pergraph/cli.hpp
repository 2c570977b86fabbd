#pragma once

#include <iosfwd>

namespace pergraph::cli {

inline constexpr int kOk = 0;
inline constexpr int kCheckFailed = 1;
inline constexpr int kInputError = 2;

/// Entry point of the pergraph tool: generate | bands | report | check | mass.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace pergraph::cli
