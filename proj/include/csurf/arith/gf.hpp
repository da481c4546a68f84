#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "csurf/arith/fp_small.hpp"

namespace csurf {

class FiniteField;
using FFPtr = std::shared_ptr<const FiniteField>;
class ZechTables;

// Polynomials over F_p as dense coefficient vectors, constant term first.
// These back both field-element arithmetic and modulus generation.
namespace fppoly {
using Poly = std::vector<uint64_t>;
void trim(Poly& f);
int degree(const Poly& f);  // -1 for the zero polynomial
Poly add(const Poly& a, const Poly& b, uint64_t p);
Poly sub(const Poly& a, const Poly& b, uint64_t p);
Poly mul(const Poly& a, const Poly& b, uint64_t p);
/// Remainder of f modulo the monic polynomial m.
Poly mod(Poly f, const Poly& m, uint64_t p);
Poly gcd(Poly a, Poly b, uint64_t p);
Poly pow_mod(const Poly& base, const mpz_class& exp, const Poly& m, uint64_t p);
bool is_irreducible(const Poly& f, uint64_t p);
}  // namespace fppoly

/// Finite field F_{p^k}, p >= 5 prime, as F_p[x]/(modulus).
///
/// The default modulus for each (p, k) is deterministic: the monic irreducible
/// of degree k whose coefficient vector (c_0, ..., c_{k-1}), read as a base-p
/// integer with c_0 least significant, is smallest. Reruns therefore agree.
class FiniteField : public std::enable_shared_from_this<FiniteField> {
public:
    static FFPtr make(uint64_t p, unsigned k);
    static FFPtr make_with_modulus(uint64_t p, std::vector<uint64_t> modulus);

    uint64_t p() const { return p_; }
    unsigned degree() const { return deg_; }
    const std::vector<uint64_t>& modulus() const { return modulus_; }
    mpz_class order() const;          // p^k
    bool order_fits_u64() const;
    uint64_t order_u64() const;       // requires order_fits_u64()

    /// Zech-logarithm tables, built lazily; null when the field exceeds the
    /// table cap. Enumeration kernels test this and fall back to generic ops.
    const ZechTables* zech() const;

    std::string to_string() const;

private:
    FiniteField(uint64_t p, unsigned k, std::vector<uint64_t> modulus);

    uint64_t p_;
    unsigned deg_;
    std::vector<uint64_t> modulus_;  // monic, size deg_+1
    mutable std::shared_ptr<ZechTables> zech_;
    mutable std::once_flag zech_once_;
};

/// Element of a FiniteField; coefficient vector of length k, reduced mod p.
class FFElem {
public:
    FFElem() = default;
    FFElem(FFPtr field, std::vector<uint64_t> coeffs);

    static FFElem zero(const FFPtr& field);
    static FFElem one(const FFPtr& field);
    static FFElem from_int(const FFPtr& field, const mpz_class& n);
    static FFElem from_u64(const FFPtr& field, uint64_t n);
    /// Generator image x of the polynomial representation.
    static FFElem gen(const FFPtr& field);

    const FFPtr& field() const { return field_; }
    const std::vector<uint64_t>& coeffs() const { return c_; }
    bool is_zero() const;
    bool is_one() const;

    FFElem operator+(const FFElem& o) const;
    FFElem operator-(const FFElem& o) const;
    FFElem operator*(const FFElem& o) const;
    FFElem operator-() const;
    FFElem& operator+=(const FFElem& o) { return *this = *this + o; }
    FFElem& operator-=(const FFElem& o) { return *this = *this - o; }
    FFElem& operator*=(const FFElem& o) { return *this = *this * o; }
    bool operator==(const FFElem& o) const;
    bool operator!=(const FFElem& o) const { return !(*this == o); }

    FFElem inv() const;  // throws NotAUnitError on zero
    FFElem pow(const mpz_class& e) const;
    /// x -> x^p, the absolute Frobenius.
    FFElem frobenius() const;
    /// x -> x^{p^m}.
    FFElem frobenius_pow(unsigned m) const;
    FFElem mul_small(int64_t n) const;

    /// Coefficients packed as a base-p integer; used as a canonical key.
    uint64_t packed() const;  // requires order_fits_u64()

    std::string to_string() const;

private:
    FFPtr field_;
    std::vector<uint64_t> c_;
};

/// The two roots of x^2 + x + 1 when p^k = 1 mod 3, else empty. Sorted by
/// packed value so the result is deterministic.
std::vector<FFElem> cube_roots_of_unity(const FFPtr& field);

}  // namespace csurf
