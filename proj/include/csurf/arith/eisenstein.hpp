#pragma once

#include <array>
#include <memory>

#include "csurf/arith/unram.hpp"

namespace csurf {

class EisensteinRing;
using ERPtr = std::shared_ptr<const EisensteinRing>;

/// The ramified cubic extension of an unramified ring: elements
/// c0 + c1*P + c2*P^2 with P^3 = p exactly. P-adic precision is tracked per
/// element; the backing unramified precision N supports precision up to 3N.
class EisensteinRing : public std::enable_shared_from_this<EisensteinRing> {
public:
    static ERPtr make(URPtr base, int default_precision);

    const URPtr& base() const { return base_; }
    uint64_t p() const { return base_->p(); }
    int default_precision() const { return default_prec_; }
    int max_precision() const { return int(3 * base_->precision()); }
    const FFPtr& residue_field() const { return base_->residue_field(); }

private:
    EisensteinRing(URPtr base, int default_precision);
    URPtr base_;
    int default_prec_;
};

/// Element of an EisensteinRing carrying its own P-adic precision: the value
/// is known modulo P^prec. Operations take the minimum of input precisions;
/// division by P lowers precision by one and throws PrecisionExhausted below 1.
class EisElem {
public:
    EisElem() = default;
    EisElem(ERPtr ring, std::array<UnramInt, 3> comps, int prec);

    static EisElem zero(const ERPtr& R);
    static EisElem one(const ERPtr& R);
    static EisElem from_unram(const ERPtr& R, const UnramInt& x);
    static EisElem from_int(const ERPtr& R, const mpz_class& n);
    static EisElem from_rational(const ERPtr& R, const mpq_class& x);
    /// The uniformizing root P itself.
    static EisElem uniformizer_root(const ERPtr& R);

    const ERPtr& ring() const { return R_; }
    const std::array<UnramInt, 3>& comps() const { return c_; }
    int precision() const { return prec_; }

    EisElem operator+(const EisElem& o) const;
    EisElem operator-(const EisElem& o) const;
    EisElem operator*(const EisElem& o) const;
    EisElem operator-() const;
    EisElem& operator+=(const EisElem& o) { return *this = *this + o; }
    EisElem& operator-=(const EisElem& o) { return *this = *this - o; }
    EisElem& operator*=(const EisElem& o) { return *this = *this * o; }

    /// P-adic valuation in [0, prec]; the value prec means "zero to declared
    /// precision" (indistinguishable from infinity).
    int valuation() const;
    bool is_zero_at_precision() const { return valuation() >= prec_; }

    EisElem mul_by_root(int k = 1) const;  // multiply by P^k, k >= 0
    /// Exact division by P^k; requires valuation >= k.
    EisElem div_by_root(int k = 1) const;
    /// x truncated to (or re-declared at) precision m <= current capability.
    EisElem with_precision(int m) const;

    /// Reduction mod P into the residue field.
    FFElem reduce() const;

    /// The inertia generator P -> omega P applied coefficientwise;
    /// omega must be a Teichmueller cube root of unity in the base ring.
    EisElem apply_inertia(const UnramInt& omega) const;

    /// Difference valuation test: val(*this - o) >= m.
    bool congruent(const EisElem& o, int m) const;

    EisElem mul_small(int64_t n) const;

    std::string to_string() const;

private:
    ERPtr R_;
    std::array<UnramInt, 3> c_;
    int prec_ = 0;
};

/// Inverse of a unit (valuation 0) to the element's precision.
/// Throws NotAUnitError carrying the valuation when val > 0.
EisElem eisenstein_invert(const EisElem& x);

}  // namespace csurf
