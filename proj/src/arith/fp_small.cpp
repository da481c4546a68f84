#include "csurf/arith/fp_small.hpp"

#include "csurf/errors.hpp"

namespace csurf {

uint64_t mod_pow(uint64_t base, uint64_t exp, uint64_t m) {
    uint64_t r = 1 % m;
    base %= m;
    while (exp) {
        if (exp & 1) r = mod_mul(r, base, m);
        base = mod_mul(base, base, m);
        exp >>= 1;
    }
    return r;
}

uint64_t mod_inv(uint64_t a, uint64_t m) {
    int64_t t = 0, new_t = 1;
    int64_t r = int64_t(m), new_r = int64_t(a % m);
    while (new_r != 0) {
        int64_t q = r / new_r;
        t -= q * new_t;
        std::swap(t, new_t);
        r -= q * new_r;
        std::swap(r, new_r);
    }
    if (r != 1) throw PreconditionError("mod_inv: argument not invertible");
    return uint64_t(t < 0 ? t + int64_t(m) : t);
}

namespace {

// Modular multiplication safe for 64-bit moduli (only used inside is_prime).
uint64_t mulmod_wide(uint64_t a, uint64_t b, uint64_t m) {
    return uint64_t((__uint128_t(a) * b) % m);
}

uint64_t powmod_wide(uint64_t base, uint64_t exp, uint64_t m) {
    uint64_t r = 1 % m;
    base %= m;
    while (exp) {
        if (exp & 1) r = mulmod_wide(r, base, m);
        base = mulmod_wide(base, base, m);
        exp >>= 1;
    }
    return r;
}

}  // namespace

bool is_prime_u64(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n % p == 0) return n == p;
    }
    uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) d >>= 1, ++s;
    for (uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        uint64_t x = powmod_wide(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod_wide(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

std::vector<std::pair<uint64_t, unsigned>> factor_u64(uint64_t n) {
    std::vector<std::pair<uint64_t, unsigned>> out;
    for (uint64_t d = 2; d * d <= n; d += (d == 2 ? 1 : 2)) {
        if (n % d == 0) {
            unsigned e = 0;
            while (n % d == 0) n /= d, ++e;
            out.emplace_back(d, e);
        }
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

}  // namespace csurf
