#pragma once

#include <iosfwd>

namespace scholarviz::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitIo = 2;

/// Entry point shared by the `scholarviz` binary and the CLI tests.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace scholarviz::cli
