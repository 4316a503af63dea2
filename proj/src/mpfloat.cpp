#include "jcdress/mpfloat.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

namespace jcdress::mp {

long env_precision_floor() {
    const char* s = std::getenv("JCDRESS_PRECISION_BITS");
    if (!s || !*s) return 0;
    char* end = nullptr;
    long v = std::strtol(s, &end, 10);
    if (end == s || *end != '\0' || v <= 0) return 0;
    return std::min(v, kPrecisionCap);
}

long initial_precision(long k) {
    long p = std::max(128L, 64L + 2L * std::max(k, 0L));
    p = std::max(p, env_precision_floor());
    return std::min(p, kPrecisionCap);
}

} // namespace jcdress::mp
