#pragma once

#include <cstdint>
#include <vector>

namespace csurf {

// Arithmetic on machine-word residues. Moduli are capped at 2^31 - 1 so a
// product of two reduced residues fits in uint64_t without overflow.

inline constexpr uint64_t kMaxSmallModulus = (uint64_t(1) << 31) - 1;

inline uint64_t mod_add(uint64_t a, uint64_t b, uint64_t m) {
    uint64_t s = a + b;
    return s >= m ? s - m : s;
}

inline uint64_t mod_sub(uint64_t a, uint64_t b, uint64_t m) {
    return a >= b ? a - b : a + m - b;
}

inline uint64_t mod_neg(uint64_t a, uint64_t m) { return a == 0 ? 0 : m - a; }

inline uint64_t mod_mul(uint64_t a, uint64_t b, uint64_t m) { return (a * b) % m; }

uint64_t mod_pow(uint64_t base, uint64_t exp, uint64_t m);

/// Inverse of a mod m for gcd(a, m) = 1; throws PreconditionError otherwise.
uint64_t mod_inv(uint64_t a, uint64_t m);

/// Deterministic Miller-Rabin, valid for all n < 3.3e24 (we use n < 2^31).
bool is_prime_u64(uint64_t n);

/// Prime factorization by trial division; n must fit comfortably (n <= ~10^12).
std::vector<std::pair<uint64_t, unsigned>> factor_u64(uint64_t n);

}  // namespace csurf
