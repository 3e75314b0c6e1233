#pragma once

#include <cstdint>

#include "listrec/linalg.hpp"

namespace listrec {

/// Knobs shared by the exhaustive kernels. threads <= 0 uses the OpenMP default.
struct ExecOptions {
    std::uint64_t budget = kDefaultEnumerationBudget;
    int threads = 0;
};

/// Budget from LISTREC_BUDGET when set and valid, else the default.
std::uint64_t budget_from_env();

int resolve_threads(int requested);

}  // namespace listrec
