#pragma once

#include <iosfwd>

namespace scatterlab {

inline constexpr const char* kVersion = "0.1.0";

/// Entry point of the `scatterlab` tool. Exit codes: 0 ok, 2 invalid input,
/// 3 guard exceeded, 4 verification failure.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv);

}  // namespace scatterlab
