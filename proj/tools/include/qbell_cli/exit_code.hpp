#pragma once

#include <exception>

namespace qbell::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitNumerical = 2;

// 2 for numerical assertion or convergence failures, 1 otherwise.
int exit_code_for(const std::exception& e);

}  // namespace qbell::cli
