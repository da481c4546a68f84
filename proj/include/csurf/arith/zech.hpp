#pragma once

#include <cstdint>
#include <vector>

#include "csurf/arith/gf.hpp"

namespace csurf {

/// Discrete-log representation of a small finite field F_q, q <= kZechCap.
///
/// Nonzero elements are stored as exponents i of a fixed primitive element g;
/// zero is the sentinel. Multiplication is exponent addition and addition goes
/// through the Zech logarithm z(i) = log(1 + g^i). This is the accelerated
/// kernel behind point enumeration and singular-point searches; the generic
/// FFElem path computes the same operations and the two are equivalence-tested.
class ZechTables {
public:
    static constexpr uint32_t kZechCap = 1u << 20;
    static constexpr uint32_t kZero = 0xffffffffu;

    explicit ZechTables(const FiniteField& field);

    uint32_t q() const { return q_; }
    uint64_t p() const { return p_; }
    unsigned degree() const { return deg_; }

    uint32_t zero() const { return kZero; }
    uint32_t one() const { return 0; }
    bool is_zero(uint32_t a) const { return a == kZero; }

    uint32_t mul(uint32_t a, uint32_t b) const {
        if (a == kZero || b == kZero) return kZero;
        uint32_t s = a + b;
        return s >= qm1_ ? s - qm1_ : s;
    }

    uint32_t add(uint32_t a, uint32_t b) const {
        if (a == kZero) return b;
        if (b == kZero) return a;
        // a + b = g^a (1 + g^{b-a})
        uint32_t d = b >= a ? b - a : b + qm1_ - a;
        uint32_t z = zech_[d];
        if (z == kZero) return kZero;
        uint32_t s = a + z;
        return s >= qm1_ ? s - qm1_ : s;
    }

    uint32_t neg(uint32_t a) const {
        if (a == kZero) return kZero;
        uint32_t s = a + neg_log_;
        return s >= qm1_ ? s - qm1_ : s;
    }

    uint32_t sub(uint32_t a, uint32_t b) const { return add(a, neg(b)); }

    uint32_t inv(uint32_t a) const {
        if (a == kZero) return kZero;  // caller guards
        return a == 0 ? 0 : qm1_ - a;
    }

    uint32_t pow(uint32_t a, uint64_t e) const {
        if (a == kZero) return e == 0 ? 0 : kZero;
        return uint32_t((uint64_t(a) * (e % qm1_)) % qm1_);
    }

    /// Square roots: g^i is a square iff i is even.
    bool sqrt(uint32_t a, uint32_t out[2]) const;

    /// All cube roots of a (zero, one, or three of them).
    int cube_roots(uint32_t a, uint32_t out[3]) const;

    /// Solve a t^2 + b t + c = 0 (a != 0); returns count of distinct roots.
    int solve_quadratic(uint32_t a, uint32_t b, uint32_t c, uint32_t out[2]) const;

    // Conversion to/from the packed base-p encoding used by FFElem::packed().
    uint32_t from_packed(uint64_t v) const { return log_[v]; }
    uint64_t to_packed(uint32_t a) const { return a == kZero ? 0 : exp_[a]; }
    uint32_t from_elem(const FFElem& x) const { return log_[x.packed()]; }
    FFElem to_elem(const FFPtr& field, uint32_t a) const;

private:
    uint32_t q_, qm1_;
    uint64_t p_;
    unsigned deg_;
    uint32_t neg_log_;  // log(-1)
    std::vector<uint32_t> exp_;   // exponent -> packed value
    std::vector<uint32_t> log_;   // packed value -> exponent (kZero at 0)
    std::vector<uint32_t> zech_;  // i -> log(1 + g^i)
};

}  // namespace csurf
