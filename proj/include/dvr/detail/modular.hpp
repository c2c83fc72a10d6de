#pragma once

#include <cstdint>
#include <stdexcept>

namespace dvr::detail {

inline bool is_prime(std::int64_t p) {
    if (p < 2) return false;
    for (std::int64_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

// Inverse of a in Z/pZ for prime p, a != 0 mod p.
inline std::int64_t mod_inverse(std::int64_t a, std::int64_t p) {
    std::int64_t r0 = p, r1 = ((a % p) + p) % p;
    std::int64_t t0 = 0, t1 = 1;
    if (r1 == 0) throw std::domain_error("mod_inverse: zero has no inverse");
    while (r1 != 0) {
        const std::int64_t q = r0 / r1;
        std::int64_t tmp = r0 - q * r1;
        r0 = r1;
        r1 = tmp;
        tmp = t0 - q * t1;
        t0 = t1;
        t1 = tmp;
    }
    return ((t0 % p) + p) % p;
}

}  // namespace dvr::detail
