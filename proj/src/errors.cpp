#include "approxdeg/errors.hpp"

#include <cstdlib>

namespace approxdeg {

std::size_t domain_size_limit() {
    if (const char* env = std::getenv("APPROXDEG_SIZE_LIMIT")) {
        const long long v = std::atoll(env);
        if (v > 0) return static_cast<std::size_t>(v);
    }
    return 1'000'000;
}

std::size_t lp_size_limit() { return 5'000'000; }

}  // namespace approxdeg
