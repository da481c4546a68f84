#include "csurf/arith/eisenstein.hpp"

#include <sstream>

#include "csurf/errors.hpp"

namespace csurf {

EisensteinRing::EisensteinRing(URPtr base, int default_precision)
    : base_(std::move(base)), default_prec_(default_precision) {}

ERPtr EisensteinRing::make(URPtr base, int default_precision) {
    if (default_precision < 1) throw PreconditionError("Eisenstein precision must be >= 1");
    if (default_precision > int(3 * base->precision()))
        throw PreconditionError("Eisenstein precision exceeds 3x unramified precision");
    return ERPtr(new EisensteinRing(std::move(base), default_precision));
}

EisElem::EisElem(ERPtr ring, std::array<UnramInt, 3> comps, int prec)
    : R_(std::move(ring)), c_(std::move(comps)), prec_(prec) {
    if (prec_ < 1) throw PrecisionExhausted("EisElem constructed below precision 1");
    if (prec_ > R_->max_precision()) prec_ = R_->max_precision();
}

EisElem EisElem::zero(const ERPtr& R) {
    auto z = UnramInt::zero(R->base());
    return EisElem(R, {z, z, z}, R->max_precision());
}

EisElem EisElem::one(const ERPtr& R) {
    auto z = UnramInt::zero(R->base());
    return EisElem(R, {UnramInt::one(R->base()), z, z}, R->max_precision());
}

EisElem EisElem::from_unram(const ERPtr& R, const UnramInt& x) {
    // an exactly-constructed value is good to the full storage capacity
    auto z = UnramInt::zero(R->base());
    return EisElem(R, {x, z, z}, R->max_precision());
}

EisElem EisElem::from_int(const ERPtr& R, const mpz_class& n) {
    return from_unram(R, UnramInt::from_int(R->base(), n));
}

EisElem EisElem::from_rational(const ERPtr& R, const mpq_class& x) {
    return from_unram(R, UnramInt::from_rational(R->base(), x));
}

EisElem EisElem::uniformizer_root(const ERPtr& R) {
    auto z = UnramInt::zero(R->base());
    return EisElem(R, {z, UnramInt::one(R->base()), z}, R->max_precision());
}

namespace {
void check_same_ring(const EisElem& a, const EisElem& b) {
    if (a.ring().get() != b.ring().get()) throw PreconditionError("EisElem: mixed rings");
}
}  // namespace

EisElem EisElem::operator+(const EisElem& o) const {
    check_same_ring(*this, o);
    return EisElem(R_, {c_[0] + o.c_[0], c_[1] + o.c_[1], c_[2] + o.c_[2]},
                   std::min(prec_, o.prec_));
}

EisElem EisElem::operator-(const EisElem& o) const {
    check_same_ring(*this, o);
    return EisElem(R_, {c_[0] - o.c_[0], c_[1] - o.c_[1], c_[2] - o.c_[2]},
                   std::min(prec_, o.prec_));
}

EisElem EisElem::operator-() const { return EisElem(R_, {-c_[0], -c_[1], -c_[2]}, prec_); }

EisElem EisElem::operator*(const EisElem& o) const {
    check_same_ring(*this, o);
    // (a0 + a1 P + a2 P^2)(b0 + b1 P + b2 P^2) with P^3 = p:
    const auto& a = c_;
    const auto& b = o.c_;
    UnramInt d0 = a[0] * b[0] + (a[1] * b[2] + a[2] * b[1]).mul_pow_p(1);
    UnramInt d1 = a[0] * b[1] + a[1] * b[0] + (a[2] * b[2]).mul_pow_p(1);
    UnramInt d2 = a[0] * b[2] + a[1] * b[1] + a[2] * b[0];
    return EisElem(R_, {std::move(d0), std::move(d1), std::move(d2)},
                   std::min(prec_, o.prec_));
}

int EisElem::valuation() const {
    int best = prec_;
    for (int i = 0; i < 3; ++i) {
        if (c_[size_t(i)].is_zero()) continue;
        int v = int(3 * c_[size_t(i)].valuation()) + i;
        best = std::min(best, v);
    }
    return std::min(best, prec_);
}

EisElem EisElem::mul_by_root(int k) const {
    if (k < 0) throw PreconditionError("mul_by_root: negative power");
    EisElem r = *this;
    for (int i = 0; i < k; ++i) {
        std::array<UnramInt, 3> n = {r.c_[2].mul_pow_p(1), r.c_[0], r.c_[1]};
        int np = std::min(r.prec_ + 1, R_->max_precision());
        r = EisElem(R_, std::move(n), np);
    }
    return r;
}

EisElem EisElem::div_by_root(int k) const {
    if (k < 0) throw PreconditionError("div_by_root: negative power");
    if (k == 0) return *this;
    if (valuation() < k)
        throw PreconditionError("div_by_root: valuation too small for exact division");
    EisElem r = *this;
    for (int i = 0; i < k; ++i) {
        if (r.prec_ - 1 < 1)
            throw PrecisionExhausted("div_by_root: precision would drop below 1");
        // c0 = p * (new c2); the stored representative must be divisible.
        std::array<UnramInt, 3> n = {r.c_[1], r.c_[2], r.c_[0].div_exact_p(1)};
        r = EisElem(R_, std::move(n), r.prec_ - 1);
    }
    return r;
}

EisElem EisElem::with_precision(int m) const {
    if (m < 1) throw PrecisionExhausted("with_precision below 1");
    return EisElem(R_, c_, std::min(m, R_->max_precision()));
}

FFElem EisElem::reduce() const { return c_[0].reduce(); }

EisElem EisElem::apply_inertia(const UnramInt& omega) const {
    return EisElem(R_, {c_[0], c_[1] * omega, c_[2] * omega * omega}, prec_);
}

bool EisElem::congruent(const EisElem& o, int m) const {
    EisElem d = *this - o;
    return d.valuation() >= std::min(m, d.precision());
}

EisElem EisElem::mul_small(int64_t n) const {
    return *this * from_int(R_, mpz_class(long(n)));
}

std::string EisElem::to_string() const {
    std::ostringstream os;
    os << c_[0].to_string() << " + " << c_[1].to_string() << "*P + " << c_[2].to_string()
       << "*P^2 (mod P^" << prec_ << ")";
    return os.str();
}

EisElem eisenstein_invert(const EisElem& x) {
    int v = x.valuation();
    if (v > 0) throw NotAUnitError("eisenstein_invert: valuation " + std::to_string(v), v);
    const ERPtr& R = x.ring();
    // Newton: y <- y(2 - x y) from the residue inverse; quadratic convergence.
    EisElem y = EisElem::from_unram(R, UnramInt::lift(R->base(), x.reduce().inv()));
    y = y.with_precision(x.precision());
    EisElem two = EisElem::from_int(R, 2).with_precision(x.precision());
    for (int prec = 1; prec < x.precision(); prec *= 2) y = y * (two - x * y);
    return y.with_precision(x.precision());
}

}  // namespace csurf
