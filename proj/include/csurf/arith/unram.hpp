#pragma once

#include <memory>
#include <vector>

#include <gmpxx.h>

#include "csurf/arith/gf.hpp"

namespace csurf {

class UnramifiedRing;
using URPtr = std::shared_ptr<const UnramifiedRing>;

/// The unramified extension of Z_p of degree k, truncated at precision N:
/// Z[x]/(p^N, m(x)) for m the fixed monic lift of the residue-field modulus.
/// Reduction mod p recovers F_{p^k}.
class UnramifiedRing : public std::enable_shared_from_this<UnramifiedRing> {
public:
    static URPtr make(FFPtr residue, unsigned precision);

    const FFPtr& residue_field() const { return residue_; }
    uint64_t p() const { return residue_->p(); }
    unsigned degree() const { return residue_->degree(); }
    unsigned precision() const { return prec_; }
    const mpz_class& modulus_pN() const { return pN_; }
    const std::vector<mpz_class>& poly_modulus() const { return modulus_; }

private:
    UnramifiedRing(FFPtr residue, unsigned precision);
    FFPtr residue_;
    unsigned prec_;
    mpz_class pN_;
    std::vector<mpz_class> modulus_;  // monic, coefficients in [0, p)
};

/// Element of an UnramifiedRing: coefficient vector of length k mod p^N.
class UnramInt {
public:
    UnramInt() = default;
    UnramInt(URPtr ring, std::vector<mpz_class> coeffs);

    static UnramInt zero(const URPtr& R);
    static UnramInt one(const URPtr& R);
    static UnramInt from_int(const URPtr& R, const mpz_class& n);
    /// Embeds a rational with denominator prime to p.
    static UnramInt from_rational(const URPtr& R, const mpq_class& x);
    /// Lift of a residue-field element with coefficients in [0, p).
    static UnramInt lift(const URPtr& R, const FFElem& x);

    const URPtr& ring() const { return R_; }
    const std::vector<mpz_class>& coeffs() const { return c_; }
    bool is_zero() const;

    UnramInt operator+(const UnramInt& o) const;
    UnramInt operator-(const UnramInt& o) const;
    UnramInt operator*(const UnramInt& o) const;
    UnramInt operator-() const;
    UnramInt& operator+=(const UnramInt& o) { return *this = *this + o; }
    UnramInt& operator-=(const UnramInt& o) { return *this = *this - o; }
    UnramInt& operator*=(const UnramInt& o) { return *this = *this * o; }
    bool operator==(const UnramInt& o) const;
    bool operator!=(const UnramInt& o) const { return !(*this == o); }

    FFElem reduce() const;
    /// p-adic valuation, clamped to the ring precision N for zero-mod-p^N.
    unsigned valuation() const;
    /// Unit inverse via Newton iteration; throws NotAUnitError otherwise.
    UnramInt inv() const;
    UnramInt pow(const mpz_class& e) const;
    /// Exact division by p^v; requires valuation >= v. The result is only
    /// determined mod p^{N-v}; the caller tracks that through EisElem.
    UnramInt div_exact_p(unsigned v) const;
    UnramInt mul_pow_p(unsigned v) const;

    std::string to_string() const;

private:
    URPtr R_;
    std::vector<mpz_class> c_;
};

/// Multiplicative (Teichmueller) lift: reduces to x and satisfies
/// lift^{p^k} = lift at full ring precision.
UnramInt teichmuller_lift(const FFElem& x, const URPtr& R);

}  // namespace csurf
