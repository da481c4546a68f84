#include "csurf/arith/gf.hpp"

#include <algorithm>
#include <sstream>

#include "csurf/arith/zech.hpp"
#include "csurf/errors.hpp"

namespace csurf {

namespace fppoly {

void trim(Poly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

int degree(const Poly& f) {
    for (int i = int(f.size()) - 1; i >= 0; --i)
        if (f[i] != 0) return i;
    return -1;
}

Poly add(const Poly& a, const Poly& b, uint64_t p) {
    Poly r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < r.size(); ++i) {
        uint64_t x = i < a.size() ? a[i] : 0;
        uint64_t y = i < b.size() ? b[i] : 0;
        r[i] = mod_add(x, y, p);
    }
    trim(r);
    return r;
}

Poly sub(const Poly& a, const Poly& b, uint64_t p) {
    Poly r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < r.size(); ++i) {
        uint64_t x = i < a.size() ? a[i] : 0;
        uint64_t y = i < b.size() ? b[i] : 0;
        r[i] = mod_sub(x, y, p);
    }
    trim(r);
    return r;
}

Poly mul(const Poly& a, const Poly& b, uint64_t p) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    }
    trim(r);
    return r;
}

Poly mod(Poly f, const Poly& m, uint64_t p) {
    int dm = degree(m);
    if (dm < 0) throw PreconditionError("fppoly::mod by zero polynomial");
    uint64_t lead_inv = mod_inv(m[dm], p);
    trim(f);
    while (degree(f) >= dm) {
        int df = degree(f);
        uint64_t c = mod_mul(f[df], lead_inv, p);
        for (int i = 0; i <= dm; ++i)
            f[df - dm + i] = mod_sub(f[df - dm + i], mod_mul(c, m[i], p), p);
        trim(f);
    }
    return f;
}

Poly gcd(Poly a, Poly b, uint64_t p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        a = mod(a, b, p);
        std::swap(a, b);
    }
    if (!a.empty()) {
        uint64_t inv = mod_inv(a[degree(a)], p);
        for (auto& c : a) c = mod_mul(c, inv, p);
    }
    return a;
}

Poly pow_mod(const Poly& base, const mpz_class& exp, const Poly& m, uint64_t p) {
    Poly r{1};
    Poly b = mod(base, m, p);
    size_t bits = mpz_sizeinbase(exp.get_mpz_t(), 2);
    if (exp == 0) return r;
    for (size_t i = bits; i-- > 0;) {
        r = mod(mul(r, r, p), m, p);
        if (mpz_tstbit(exp.get_mpz_t(), i)) r = mod(mul(r, b, p), m, p);
    }
    return r;
}

bool is_irreducible(const Poly& f, uint64_t p) {
    int k = degree(f);
    if (k <= 0) return false;
    if (k == 1) return true;
    Poly x{0, 1};
    mpz_class pk;
    mpz_ui_pow_ui(pk.get_mpz_t(), p, k);
    // x^{p^k} = x mod f, and gcd(x^{p^{k/l}} - x, f) = 1 for primes l | k.
    Poly xq = pow_mod(x, pk, f, p);
    if (sub(xq, x, p) != Poly{}) return false;
    for (auto [l, e] : factor_u64(k)) {
        (void)e;
        mpz_class pkl;
        mpz_ui_pow_ui(pkl.get_mpz_t(), p, k / l);
        Poly g = gcd(sub(pow_mod(x, pkl, f, p), x, p), f, p);
        if (degree(g) != 0) return false;
    }
    return true;
}

}  // namespace fppoly

FiniteField::FiniteField(uint64_t p, unsigned k, std::vector<uint64_t> modulus)
    : p_(p), deg_(k), modulus_(std::move(modulus)) {}

FFPtr FiniteField::make(uint64_t p, unsigned k) {
    if (p > kMaxSmallModulus) throw PreconditionError("prime too large (must be < 2^31)");
    if (!is_prime_u64(p) || p < 5) throw PreconditionError("p must be a prime >= 5");
    if (k == 0) throw PreconditionError("extension degree must be >= 1");
    // one canonical instance per (p, k): pointer identity doubles as field
    // identity throughout the library
    static std::mutex mu;
    static std::map<std::pair<uint64_t, unsigned>, FFPtr> registry;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(p, k);
    auto it = registry.find(key);
    if (it != registry.end()) return it->second;

    FFPtr built;
    if (k == 1) {
        built = make_with_modulus(p, {0, 1});
    } else {
        // smallest monic irreducible of degree k in the base-p coefficient order
        fppoly::Poly f(k + 1, 0);
        f[k] = 1;
        for (;;) {
            if (fppoly::is_irreducible(f, p)) break;
            // increment (f[0], ..., f[k-1]) as a base-p counter
            unsigned i = 0;
            while (i < k) {
                f[i] = (f[i] + 1) % p;
                if (f[i] != 0) break;
                ++i;
            }
            if (i == k) throw Error("no irreducible polynomial found (unreachable)");
        }
        built = make_with_modulus(p, f);
    }
    registry.emplace(key, built);
    return built;
}

FFPtr FiniteField::make_with_modulus(uint64_t p, std::vector<uint64_t> modulus) {
    if (p > kMaxSmallModulus) throw PreconditionError("prime too large (must be < 2^31)");
    if (!is_prime_u64(p) || p < 5) throw PreconditionError("p must be a prime >= 5");
    fppoly::trim(modulus);
    int k = fppoly::degree(modulus);
    if (k < 1) throw PreconditionError("modulus must have degree >= 1");
    if (modulus[k] != 1) throw PreconditionError("modulus must be monic");
    if (k > 1 && !fppoly::is_irreducible(modulus, p))
        throw PreconditionError("modulus is reducible");
    return FFPtr(new FiniteField(p, unsigned(k), std::move(modulus)));
}

mpz_class FiniteField::order() const {
    mpz_class q;
    mpz_ui_pow_ui(q.get_mpz_t(), p_, deg_);
    return q;
}

bool FiniteField::order_fits_u64() const {
    mpz_class q = order();
    return q.fits_ulong_p();
}

uint64_t FiniteField::order_u64() const {
    if (!order_fits_u64()) throw PreconditionError("field order exceeds 64 bits");
    return mpz_get_ui(order().get_mpz_t());
}

const ZechTables* FiniteField::zech() const {
    std::call_once(zech_once_, [this] {
        if (order_fits_u64() && order_u64() <= ZechTables::kZechCap)
            zech_ = std::make_shared<ZechTables>(*this);
    });
    return zech_.get();
}

std::string FiniteField::to_string() const {
    std::ostringstream os;
    os << "GF(" << p_;
    if (deg_ > 1) os << "^" << deg_;
    os << ")";
    return os.str();
}

FFElem::FFElem(FFPtr field, std::vector<uint64_t> coeffs)
    : field_(std::move(field)), c_(std::move(coeffs)) {
    c_.resize(field_->degree(), 0);
    for (auto& x : c_) x %= field_->p();
}

FFElem FFElem::zero(const FFPtr& field) {
    return FFElem(field, std::vector<uint64_t>(field->degree(), 0));
}

FFElem FFElem::one(const FFPtr& field) { return from_u64(field, 1); }

FFElem FFElem::from_u64(const FFPtr& field, uint64_t n) {
    std::vector<uint64_t> c(field->degree(), 0);
    c[0] = n % field->p();
    return FFElem(field, std::move(c));
}

FFElem FFElem::from_int(const FFPtr& field, const mpz_class& n) {
    mpz_class r = n % field->p();
    if (r < 0) r += field->p();
    return from_u64(field, mpz_get_ui(r.get_mpz_t()));
}

FFElem FFElem::gen(const FFPtr& field) {
    std::vector<uint64_t> c(field->degree(), 0);
    if (field->degree() == 1) {
        // x is congruent to 0 mod the degree-1 modulus x; return 0
        return FFElem(field, std::move(c));
    }
    c[1] = 1;
    return FFElem(field, std::move(c));
}

bool FFElem::is_zero() const {
    for (auto x : c_)
        if (x) return false;
    return true;
}

bool FFElem::is_one() const {
    if (c_.empty() || c_[0] != 1) return false;
    for (size_t i = 1; i < c_.size(); ++i)
        if (c_[i]) return false;
    return true;
}

namespace {
void check_same_field(const FFElem& a, const FFElem& b) {
    if (a.field().get() != b.field().get())
        throw PreconditionError("FFElem: mixed fields");
}
}  // namespace

FFElem FFElem::operator+(const FFElem& o) const {
    check_same_field(*this, o);
    std::vector<uint64_t> r(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) r[i] = mod_add(c_[i], o.c_[i], field_->p());
    return FFElem(field_, std::move(r));
}

FFElem FFElem::operator-(const FFElem& o) const {
    check_same_field(*this, o);
    std::vector<uint64_t> r(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) r[i] = mod_sub(c_[i], o.c_[i], field_->p());
    return FFElem(field_, std::move(r));
}

FFElem FFElem::operator-() const {
    std::vector<uint64_t> r(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) r[i] = mod_neg(c_[i], field_->p());
    return FFElem(field_, std::move(r));
}

FFElem FFElem::operator*(const FFElem& o) const {
    check_same_field(*this, o);
    fppoly::Poly prod = fppoly::mul(c_, o.c_, field_->p());
    prod = fppoly::mod(std::move(prod), field_->modulus(), field_->p());
    return FFElem(field_, std::move(prod));
}

bool FFElem::operator==(const FFElem& o) const {
    check_same_field(*this, o);
    return c_ == o.c_;
}

FFElem FFElem::inv() const {
    if (is_zero()) throw NotAUnitError("FFElem: inverse of zero", 1);
    // extended Euclid in F_p[x] against the modulus
    uint64_t p = field_->p();
    fppoly::Poly r0 = field_->modulus(), r1 = c_;
    fppoly::trim(r1);
    fppoly::Poly t0{}, t1{1};
    while (!r1.empty()) {
        // r0 = q r1 + r2
        fppoly::Poly q;
        {
            fppoly::Poly rem = r0;
            int d1 = fppoly::degree(r1);
            uint64_t li = mod_inv(r1[d1], p);
            q.assign(std::max<int>(fppoly::degree(rem) - d1 + 1, 0), 0);
            while (fppoly::degree(rem) >= d1) {
                int dr = fppoly::degree(rem);
                uint64_t cq = mod_mul(rem[dr], li, p);
                q[dr - d1] = cq;
                for (int i = 0; i <= d1; ++i)
                    rem[dr - d1 + i] = mod_sub(rem[dr - d1 + i], mod_mul(cq, r1[i], p), p);
                fppoly::trim(rem);
            }
            r0 = std::move(rem);
        }
        std::swap(r0, r1);
        fppoly::Poly t2 = fppoly::sub(t0, fppoly::mul(q, t1, p), p);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    // r0 is a nonzero constant gcd
    uint64_t scale = mod_inv(r0[0], p);
    fppoly::Poly res(t0);
    for (auto& x : res) x = mod_mul(x, scale, p);
    return FFElem(field_, std::move(res));
}

FFElem FFElem::pow(const mpz_class& e) const {
    if (e < 0) return inv().pow(-e);
    FFElem r = one(field_);
    if (e == 0) return r;
    size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (size_t i = bits; i-- > 0;) {
        r = r * r;
        if (mpz_tstbit(e.get_mpz_t(), i)) r = r * *this;
    }
    return r;
}

FFElem FFElem::frobenius() const { return pow(mpz_class(field_->p())); }

FFElem FFElem::frobenius_pow(unsigned m) const {
    FFElem r = *this;
    for (unsigned i = 0; i < m % field_->degree(); ++i) r = r.frobenius();
    return r;
}

FFElem FFElem::mul_small(int64_t n) const {
    uint64_t p = field_->p();
    int64_t m = n % int64_t(p);
    if (m < 0) m += p;
    std::vector<uint64_t> r(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) r[i] = mod_mul(c_[i], uint64_t(m), p);
    return FFElem(field_, std::move(r));
}

uint64_t FFElem::packed() const {
    uint64_t v = 0;
    for (size_t i = c_.size(); i-- > 0;) v = v * field_->p() + c_[i];
    return v;
}

std::string FFElem::to_string() const {
    std::ostringstream os;
    if (field_->degree() == 1) {
        os << c_[0];
        return os.str();
    }
    bool first = true;
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        if (!first) os << "+";
        first = false;
        if (i == 0 || c_[i] != 1) os << c_[i];
        if (i >= 1) {
            if (c_[i] != 1) os << "*";
            os << "t";
            if (i > 1) os << "^" << i;
        }
    }
    if (first) os << "0";
    return os.str();
}

}  // namespace csurf
