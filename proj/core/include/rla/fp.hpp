#pragma once

#include <cstdint>
#include <stdexcept>

// Prime-field scalar arithmetic. Residues are kept canonical in [0, p);
// products are accumulated in 64 bits and reduced once per accumulation
// chain, which is safe for p <= 2^15 (p^2 < 2^30 leaves 34 bits of slack).

namespace rla::fp {

constexpr uint32_t kMaxModulus = 1u << 15;

inline bool is_prime(uint32_t p) {
    if (p < 2) return false;
    for (uint32_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

// Valid moduli for this library: odd primes, 3 <= p <= 2^15.
inline void check_modulus(uint32_t p) {
    if (p < 3 || p > kMaxModulus || !is_prime(p))
        throw std::invalid_argument("fp: modulus must be a prime in [3, 2^15]");
}

inline uint32_t norm(int64_t x, uint32_t p) {
    int64_t r = x % static_cast<int64_t>(p);
    if (r < 0) r += p;
    return static_cast<uint32_t>(r);
}

inline uint32_t add(uint32_t a, uint32_t b, uint32_t p) {
    uint32_t s = a + b;
    return s >= p ? s - p : s;
}

inline uint32_t sub(uint32_t a, uint32_t b, uint32_t p) {
    return a >= b ? a - b : a + p - b;
}

inline uint32_t neg(uint32_t a, uint32_t p) { return a == 0 ? 0 : p - a; }

inline uint32_t mul(uint32_t a, uint32_t b, uint32_t p) {
    return static_cast<uint32_t>((static_cast<uint64_t>(a) * b) % p);
}

inline uint32_t pow(uint32_t a, uint64_t e, uint32_t p) {
    uint32_t base = a % p, r = 1;
    while (e > 0) {
        if (e & 1) r = mul(r, base, p);
        e >>= 1;
        if (e) base = mul(base, base, p);
    }
    return r;
}

// Fermat inverse; p prime.
inline uint32_t inv(uint32_t a, uint32_t p) {
    if (a % p == 0) throw std::domain_error("fp: inverse of zero");
    return pow(a, p - 2, p);
}

}  // namespace rla::fp
