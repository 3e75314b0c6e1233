#include "listrec/exec.hpp"

#include <charconv>
#include <cstdlib>
#include <cstring>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace listrec {

std::uint64_t budget_from_env() {
    const char* env = std::getenv("LISTREC_BUDGET");
    if (env == nullptr) return kDefaultEnumerationBudget;
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(env, env + std::strlen(env), v);
    if (ec != std::errc() || *ptr != '\0' || v == 0) return kDefaultEnumerationBudget;
    return v;
}

int resolve_threads(int requested) {
#ifdef _OPENMP
    return requested > 0 ? requested : omp_get_max_threads();
#else
    (void)requested;
    return 1;
#endif
}

}  // namespace listrec
