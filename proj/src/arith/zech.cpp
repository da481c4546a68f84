#include "csurf/arith/zech.hpp"

#include "csurf/errors.hpp"

namespace csurf {

namespace {

// Packed base-p arithmetic used only while building the tables.
struct PackedOps {
    uint64_t p;
    unsigned k;
    std::vector<uint64_t> modulus;

    void unpack(uint64_t v, uint64_t* c) const {
        for (unsigned i = 0; i < k; ++i) {
            c[i] = v % p;
            v /= p;
        }
    }
    uint64_t pack(const uint64_t* c) const {
        uint64_t v = 0;
        for (unsigned i = k; i-- > 0;) v = v * p + c[i];
        return v;
    }
    uint64_t mul(uint64_t a, uint64_t b) const {
        uint64_t ca[8], cb[8], prod[16] = {0};
        unpack(a, ca);
        unpack(b, cb);
        for (unsigned i = 0; i < k; ++i) {
            if (!ca[i]) continue;
            for (unsigned j = 0; j < k; ++j)
                prod[i + j] = (prod[i + j] + ca[i] * cb[j]) % p;
        }
        // reduce by the monic modulus
        for (unsigned d = 2 * k - 2; d >= k && d < 16; --d) {
            uint64_t c = prod[d];
            if (!c) continue;
            prod[d] = 0;
            for (unsigned i = 0; i < k; ++i)
                prod[d - k + i] = (prod[d - k + i] + (p - modulus[i] % p) * c) % p;
        }
        return pack(prod);
    }
    uint64_t pow(uint64_t a, uint64_t e) const {
        uint64_t r = 1;
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }
};

}  // namespace

ZechTables::ZechTables(const FiniteField& field) {
    p_ = field.p();
    deg_ = field.degree();
    uint64_t q = field.order_u64();
    if (q > kZechCap) throw PreconditionError("field too large for Zech tables");
    if (deg_ > 8) throw PreconditionError("Zech tables limited to degree <= 8");
    q_ = uint32_t(q);
    qm1_ = q_ - 1;

    PackedOps ops{p_, deg_, field.modulus()};

    // Find the smallest primitive element in packed order.
    auto qm1_factors = factor_u64(qm1_);
    uint64_t g = 0;
    for (uint64_t cand = 2; cand < q; ++cand) {
        bool primitive = true;
        for (auto [l, e] : qm1_factors) {
            (void)e;
            if (ops.pow(cand, qm1_ / l) == 1) {
                primitive = false;
                break;
            }
        }
        if (primitive) {
            g = cand;
            break;
        }
    }
    if (g == 0) throw Error("no primitive element found (unreachable)");

    exp_.assign(qm1_, 0);
    log_.assign(q_, kZero);
    uint64_t acc = 1;
    for (uint32_t i = 0; i < qm1_; ++i) {
        exp_[i] = uint32_t(acc);
        log_[acc] = i;
        acc = ops.mul(acc, g);
    }
    if (acc != 1) throw Error("primitive element order mismatch (unreachable)");

    zech_.assign(qm1_, kZero);
    for (uint32_t i = 0; i < qm1_; ++i) {
        uint64_t v = exp_[i];
        uint64_t c0 = v % p_;
        uint64_t w = v - c0 + (c0 + 1) % p_;
        zech_[i] = w == 0 ? kZero : log_[w];
    }
    neg_log_ = qm1_ / 2;  // log(-1); q is odd
}

bool ZechTables::sqrt(uint32_t a, uint32_t out[2]) const {
    if (a == kZero) {
        out[0] = kZero;
        out[1] = kZero;
        return true;
    }
    if (a & 1) return false;
    out[0] = a / 2;
    out[1] = mul(out[0], neg_log_);
    return true;
}

int ZechTables::cube_roots(uint32_t a, uint32_t out[3]) const {
    if (a == kZero) {
        out[0] = kZero;
        return 1;
    }
    if (qm1_ % 3 != 0) {
        uint64_t inv3 = mod_inv(3 % qm1_, qm1_);
        out[0] = uint32_t((uint64_t(a) * inv3) % qm1_);
        return 1;
    }
    if (a % 3 != 0) return 0;
    uint32_t r = a / 3;
    uint32_t step = qm1_ / 3;
    for (int i = 0; i < 3; ++i) out[i] = uint32_t((r + uint64_t(i) * step) % qm1_);
    return 3;
}

int ZechTables::solve_quadratic(uint32_t a, uint32_t b, uint32_t c, uint32_t out[2]) const {
    // t = (-b +- sqrt(b^2 - 4ac)) / (2a), char != 2
    uint32_t four = from_packed(4 % p_ == 0 ? 0 : 4 % p_);
    uint32_t disc = sub(mul(b, b), mul(four, mul(a, c)));
    uint32_t r[2];
    if (!sqrt(disc, r)) return 0;
    uint32_t two_a = mul(from_packed(2), a);
    uint32_t inv2a = inv(two_a);
    if (is_zero(disc)) {
        out[0] = mul(neg(b), inv2a);
        return 1;
    }
    out[0] = mul(add(neg(b), r[0]), inv2a);
    out[1] = mul(add(neg(b), r[1]), inv2a);
    return 2;
}

FFElem ZechTables::to_elem(const FFPtr& field, uint32_t a) const {
    uint64_t v = to_packed(a);
    std::vector<uint64_t> c(deg_);
    for (unsigned i = 0; i < deg_; ++i) {
        c[i] = v % p_;
        v /= p_;
    }
    return FFElem(field, std::move(c));
}

}  // namespace csurf
