#include "csurf/arith/unram.hpp"

#include <sstream>

#include "csurf/errors.hpp"

namespace csurf {

UnramifiedRing::UnramifiedRing(FFPtr residue, unsigned precision)
    : residue_(std::move(residue)), prec_(precision) {
    mpz_ui_pow_ui(pN_.get_mpz_t(), residue_->p(), prec_);
    modulus_.reserve(residue_->modulus().size());
    for (uint64_t c : residue_->modulus()) modulus_.emplace_back(static_cast<unsigned long>(c));
}

URPtr UnramifiedRing::make(FFPtr residue, unsigned precision) {
    if (precision < 1) throw PreconditionError("unramified precision must be >= 1");
    return URPtr(new UnramifiedRing(std::move(residue), precision));
}

UnramInt::UnramInt(URPtr ring, std::vector<mpz_class> coeffs)
    : R_(std::move(ring)), c_(std::move(coeffs)) {
    c_.resize(R_->degree());
    for (auto& x : c_) {
        x %= R_->modulus_pN();
        if (x < 0) x += R_->modulus_pN();
    }
}

UnramInt UnramInt::zero(const URPtr& R) {
    return UnramInt(R, std::vector<mpz_class>(R->degree(), 0));
}

UnramInt UnramInt::one(const URPtr& R) { return from_int(R, 1); }

UnramInt UnramInt::from_int(const URPtr& R, const mpz_class& n) {
    std::vector<mpz_class> c(R->degree(), 0);
    c[0] = n;
    return UnramInt(R, std::move(c));
}

UnramInt UnramInt::from_rational(const URPtr& R, const mpq_class& x) {
    mpz_class den = x.get_den();
    if (mpz_divisible_ui_p(den.get_mpz_t(), static_cast<unsigned long>(R->p())))
        throw PreconditionError("from_rational: denominator divisible by p");
    mpz_class deninv;
    if (!mpz_invert(deninv.get_mpz_t(), den.get_mpz_t(), R->modulus_pN().get_mpz_t()))
        throw PreconditionError("from_rational: denominator not invertible mod p^N");
    return from_int(R, x.get_num() * deninv);
}

UnramInt UnramInt::lift(const URPtr& R, const FFElem& x) {
    if (x.field().get() != R->residue_field().get())
        throw PreconditionError("lift: residue field mismatch");
    std::vector<mpz_class> c;
    c.reserve(x.coeffs().size());
    for (uint64_t v : x.coeffs()) c.emplace_back(static_cast<unsigned long>(v));
    return UnramInt(R, std::move(c));
}

bool UnramInt::is_zero() const {
    for (const auto& x : c_)
        if (x != 0) return false;
    return true;
}

namespace {
void check_same_ring(const UnramInt& a, const UnramInt& b) {
    if (a.ring().get() != b.ring().get()) throw PreconditionError("UnramInt: mixed rings");
}
}  // namespace

UnramInt UnramInt::operator+(const UnramInt& o) const {
    check_same_ring(*this, o);
    std::vector<mpz_class> r(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) r[i] = c_[i] + o.c_[i];
    return UnramInt(R_, std::move(r));
}

UnramInt UnramInt::operator-(const UnramInt& o) const {
    check_same_ring(*this, o);
    std::vector<mpz_class> r(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) r[i] = c_[i] - o.c_[i];
    return UnramInt(R_, std::move(r));
}

UnramInt UnramInt::operator-() const {
    std::vector<mpz_class> r(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) r[i] = -c_[i];
    return UnramInt(R_, std::move(r));
}

UnramInt UnramInt::operator*(const UnramInt& o) const {
    check_same_ring(*this, o);
    size_t k = c_.size();
    const mpz_class& pN = R_->modulus_pN();
    std::vector<mpz_class> prod(2 * k - 1, 0);
    for (size_t i = 0; i < k; ++i) {
        if (c_[i] == 0) continue;
        for (size_t j = 0; j < k; ++j) {
            prod[i + j] += c_[i] * o.c_[j];
        }
    }
    // reduce by the monic lifted modulus
    const auto& m = R_->poly_modulus();
    for (size_t d = 2 * k - 2; d >= k && d + 1 > 0; --d) {
        if (prod[d] == 0) continue;
        mpz_class c = prod[d] % pN;
        prod[d] = 0;
        for (size_t i = 0; i < k; ++i) prod[d - k + i] -= c * m[i];
        if (d == k) break;
    }
    prod.resize(k);
    return UnramInt(R_, std::move(prod));
}

bool UnramInt::operator==(const UnramInt& o) const {
    check_same_ring(*this, o);
    return c_ == o.c_;
}

FFElem UnramInt::reduce() const {
    std::vector<uint64_t> r(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) {
        mpz_class m = c_[i] % R_->p();
        r[i] = mpz_get_ui(m.get_mpz_t());
    }
    return FFElem(R_->residue_field(), std::move(r));
}

unsigned UnramInt::valuation() const {
    unsigned best = R_->precision();
    for (const auto& x : c_) {
        if (x == 0) continue;
        mpz_class t = x;
        unsigned v = 0;
        while (v < best && mpz_divisible_ui_p(t.get_mpz_t(), static_cast<unsigned long>(R_->p()))) {
            t /= R_->p();
            ++v;
        }
        best = std::min(best, v);
        if (best == 0) break;
    }
    return best;
}

UnramInt UnramInt::inv() const {
    unsigned v = valuation();
    if (v > 0) throw NotAUnitError("UnramInt: not a unit", long(v));
    // Newton: y <- y (2 - x y), starting from the residue inverse.
    UnramInt y = lift(R_, reduce().inv());
    UnramInt two = from_int(R_, 2);
    // precision doubles each step
    for (unsigned prec = 1; prec < R_->precision(); prec *= 2) y = y * (two - *this * y);
    return y;
}

UnramInt UnramInt::pow(const mpz_class& e) const {
    if (e < 0) return inv().pow(-e);
    UnramInt r = one(R_);
    if (e == 0) return r;
    size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (size_t i = bits; i-- > 0;) {
        r = r * r;
        if (mpz_tstbit(e.get_mpz_t(), i)) r = r * *this;
    }
    return r;
}

UnramInt UnramInt::div_exact_p(unsigned v) const {
    if (v == 0) return *this;
    mpz_class pv;
    mpz_ui_pow_ui(pv.get_mpz_t(), R_->p(), v);
    std::vector<mpz_class> r(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) {
        if (!mpz_divisible_p(c_[i].get_mpz_t(), pv.get_mpz_t()))
            throw PreconditionError("div_exact_p: valuation too small");
        r[i] = c_[i] / pv;
    }
    return UnramInt(R_, std::move(r));
}

UnramInt UnramInt::mul_pow_p(unsigned v) const {
    mpz_class pv;
    mpz_ui_pow_ui(pv.get_mpz_t(), R_->p(), v);
    std::vector<mpz_class> r(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) r[i] = c_[i] * pv;
    return UnramInt(R_, std::move(r));
}

std::string UnramInt::to_string() const {
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < c_.size(); ++i) {
        if (i) os << ", ";
        os << c_[i].get_str();
    }
    os << "]";
    return os.str();
}

UnramInt teichmuller_lift(const FFElem& x, const URPtr& R) {
    if (x.is_zero()) return UnramInt::zero(R);
    UnramInt z = UnramInt::lift(R, x);
    mpz_class q = R->residue_field()->order();
    // z -> z^q gains one digit of the fixed point per step
    for (unsigned i = 0; i < R->precision(); ++i) z = z.pow(q);
    return z;
}

}  // namespace csurf
