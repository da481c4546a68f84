#include "csurf/arith/gf_poly.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <sstream>

#include "csurf/errors.hpp"

namespace csurf {

GFPoly::GFPoly(FFPtr field, std::vector<FFElem> coeffs)
    : field_(std::move(field)), c_(std::move(coeffs)) {
    trim();
}

void GFPoly::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

GFPoly GFPoly::zero(const FFPtr& field) { return GFPoly(field, {}); }

GFPoly GFPoly::one(const FFPtr& field) { return GFPoly(field, {FFElem::one(field)}); }

GFPoly GFPoly::x(const FFPtr& field) {
    return GFPoly(field, {FFElem::zero(field), FFElem::one(field)});
}

GFPoly GFPoly::from_coeffs(const FFPtr& field, std::initializer_list<int64_t> c) {
    std::vector<FFElem> v;
    for (int64_t a : c) v.push_back(FFElem::from_int(field, mpz_class(long(a))));
    return GFPoly(field, std::move(v));
}

FFElem GFPoly::coeff(int i) const {
    if (i < 0 || i >= int(c_.size())) return FFElem::zero(field_);
    return c_[size_t(i)];
}

const FFElem& GFPoly::leading() const {
    if (c_.empty()) throw PreconditionError("leading() of zero polynomial");
    return c_.back();
}

GFPoly GFPoly::operator+(const GFPoly& o) const {
    std::vector<FFElem> r(std::max(c_.size(), o.c_.size()), FFElem::zero(field_));
    for (size_t i = 0; i < r.size(); ++i) {
        if (i < c_.size()) r[i] += c_[i];
        if (i < o.c_.size()) r[i] += o.c_[i];
    }
    return GFPoly(field_, std::move(r));
}

GFPoly GFPoly::operator-(const GFPoly& o) const {
    std::vector<FFElem> r(std::max(c_.size(), o.c_.size()), FFElem::zero(field_));
    for (size_t i = 0; i < r.size(); ++i) {
        if (i < c_.size()) r[i] += c_[i];
        if (i < o.c_.size()) r[i] -= o.c_[i];
    }
    return GFPoly(field_, std::move(r));
}

GFPoly GFPoly::operator*(const GFPoly& o) const {
    if (is_zero() || o.is_zero()) return zero(field_);
    std::vector<FFElem> r(c_.size() + o.c_.size() - 1, FFElem::zero(field_));
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].is_zero()) continue;
        for (size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
    }
    return GFPoly(field_, std::move(r));
}

GFPoly GFPoly::operator*(const FFElem& s) const {
    std::vector<FFElem> r;
    r.reserve(c_.size());
    for (const auto& a : c_) r.push_back(a * s);
    return GFPoly(field_, std::move(r));
}

std::pair<GFPoly, GFPoly> GFPoly::divmod(const GFPoly& d) const {
    if (d.is_zero()) throw PreconditionError("polynomial division by zero");
    GFPoly rem = *this;
    int dd = d.degree();
    FFElem li = d.leading().inv();
    std::vector<FFElem> q(std::max(degree() - dd + 1, 0), FFElem::zero(field_));
    while (rem.degree() >= dd) {
        int dr = rem.degree();
        FFElem c = rem.c_.back() * li;
        q[size_t(dr - dd)] = c;
        for (int i = 0; i <= dd; ++i) rem.c_[size_t(dr - dd + i)] -= c * d.c_[size_t(i)];
        rem.trim();
    }
    return {GFPoly(field_, std::move(q)), rem};
}

GFPoly GFPoly::monic() const {
    if (is_zero()) return *this;
    return *this * leading().inv();
}

GFPoly GFPoly::derivative() const {
    if (c_.size() <= 1) return zero(field_);
    std::vector<FFElem> r;
    r.reserve(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) r.push_back(c_[i].mul_small(int64_t(i)));
    return GFPoly(field_, std::move(r));
}

FFElem GFPoly::eval(const FFElem& x) const {
    FFElem r = FFElem::zero(field_);
    for (size_t i = c_.size(); i-- > 0;) r = r * x + c_[i];
    return r;
}

GFPoly GFPoly::pow_mod(const mpz_class& e, const GFPoly& m) const {
    GFPoly r = one(field_);
    if (e == 0) return r;
    GFPoly b = mod(m);
    size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (size_t i = bits; i-- > 0;) {
        r = (r * r).mod(m);
        if (mpz_tstbit(e.get_mpz_t(), i)) r = (r * b).mod(m);
    }
    return r;
}

std::string GFPoly::to_string() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (size_t i = c_.size(); i-- > 0;) {
        if (c_[i].is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        os << "(" << c_[i].to_string() << ")";
        if (i == 1) os << "*T";
        if (i > 1) os << "*T^" << i;
    }
    return os.str();
}

GFPoly gf_gcd(GFPoly a, GFPoly b) {
    while (!b.is_zero()) {
        GFPoly r = a.mod(b);
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

namespace {

// Squarefree decomposition in characteristic p; returns (g_i, i) with
// f = unit * prod g_i^i and each g_i squarefree.
std::vector<std::pair<GFPoly, unsigned>> squarefree_decompose(const GFPoly& f0) {
    std::vector<std::pair<GFPoly, unsigned>> out;
    const FFPtr& F = f0.field();
    uint64_t p = F->p();
    GFPoly f = f0.monic();
    unsigned pe = 1;  // current multiplicity scale from p-th root descents

    std::function<void(const GFPoly&, unsigned)> run = [&](const GFPoly& g, unsigned scale) {
        GFPoly d = g.derivative();
        if (d.is_zero()) {
            // g = h(x^p); take p-th root of coefficients
            std::vector<FFElem> hc;
            for (int i = 0; i <= g.degree(); i += int(p))
                hc.push_back(g.coeff(i).frobenius_pow(F->degree() * 1 - 1));
            // p-th root in F_{p^k}: x -> x^{p^{k-1}}
            GFPoly h(F, std::move(hc));
            run(h, scale * unsigned(p));
            return;
        }
        GFPoly c = gf_gcd(g, d), w = g.divmod(c).first;
        unsigned i = 1;
        while (w.degree() > 0) {
            GFPoly y = gf_gcd(w, c);
            GFPoly fac = w.divmod(y).first;
            if (fac.degree() > 0) out.emplace_back(fac.monic(), i * scale);
            w = std::move(y);
            c = c.divmod(w).first;
            ++i;
        }
        if (c.degree() > 0) run(c, scale * unsigned(p));
    };
    run(f, pe);
    return out;
}

// Distinct-degree split of a squarefree monic polynomial: pairs (product, d).
std::vector<std::pair<GFPoly, unsigned>> distinct_degree(const GFPoly& f) {
    const FFPtr& F = f.field();
    mpz_class q = F->order();
    std::vector<std::pair<GFPoly, unsigned>> out;
    GFPoly h = GFPoly::x(F);
    GFPoly g = f;
    unsigned d = 0;
    while (g.degree() > 0 && int(2 * (d + 1)) <= g.degree()) {
        ++d;
        h = h.pow_mod(q, g);
        GFPoly gd = gf_gcd(h - GFPoly::x(F), g);
        if (gd.degree() > 0) {
            out.emplace_back(gd, d);
            g = g.divmod(gd).first;
            h = h.mod(g);
        }
    }
    if (g.degree() > 0) out.emplace_back(g, unsigned(g.degree()));
    return out;
}

// Cantor-Zassenhaus equal-degree splitting (q odd).
void equal_degree(const GFPoly& f, unsigned d, SplitMix64& rng, std::vector<GFPoly>& out) {
    if (f.degree() == int(d)) {
        out.push_back(f.monic());
        return;
    }
    const FFPtr& F = f.field();
    mpz_class qd;
    mpz_pow_ui(qd.get_mpz_t(), F->order().get_mpz_t(), d);
    mpz_class e = (qd - 1) / 2;
    for (;;) {
        // random polynomial of degree < deg f
        std::vector<FFElem> rc;
        for (int i = 0; i < f.degree(); ++i) {
            std::vector<uint64_t> cv(F->degree());
            for (auto& x : cv) x = rng.below(F->p());
            rc.emplace_back(F, std::move(cv));
        }
        GFPoly r(F, std::move(rc));
        if (r.is_zero()) continue;
        GFPoly g = gf_gcd(r, f);
        if (g.degree() > 0 && g.degree() < f.degree()) {
            equal_degree(g, d, rng, out);
            equal_degree(f.divmod(g).first, d, rng, out);
            return;
        }
        GFPoly s = r.pow_mod(e, f) - GFPoly::one(F);
        g = gf_gcd(s, f);
        if (g.degree() > 0 && g.degree() < f.degree()) {
            equal_degree(g, d, rng, out);
            equal_degree(f.divmod(g).first, d, rng, out);
            return;
        }
    }
}

bool poly_less(const GFPoly& a, const GFPoly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    for (int i = a.degree(); i >= 0; --i) {
        const auto& ca = a.coeff(i).coeffs();
        const auto& cb = b.coeff(i).coeffs();
        if (ca != cb) return ca < cb;
    }
    return false;
}

}  // namespace

FFFactorization ff_factor(const GFPoly& f, uint64_t seed) {
    if (f.is_zero()) throw PreconditionError("ff_factor: zero polynomial");
    FFFactorization result;
    result.unit = f.leading();
    if (f.degree() == 0) return result;
    SplitMix64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    for (auto& [sq, mult] : squarefree_decompose(f)) {
        for (auto& [prod, d] : distinct_degree(sq)) {
            std::vector<GFPoly> fs;
            equal_degree(prod, d, rng, fs);
            for (auto& g : fs) result.factors.emplace_back(g, mult);
        }
    }
    std::sort(result.factors.begin(), result.factors.end(),
              [](const auto& a, const auto& b) { return poly_less(a.first, b.first); });
    return result;
}

std::vector<FFElem> gf_roots(const GFPoly& f, uint64_t seed) {
    std::vector<FFElem> roots;
    if (f.is_zero()) throw PreconditionError("gf_roots: zero polynomial");
    // strip to the part splitting over F_q: gcd(f, x^q - x)
    const FFPtr& F = f.field();
    if (f.degree() == 0) return roots;
    GFPoly xq = GFPoly::x(F).pow_mod(F->order(), f);
    GFPoly g = gf_gcd(xq - GFPoly::x(F), f);
    if (g.degree() == 0) return roots;
    auto fac = ff_factor(g, seed);
    for (auto& [h, mult] : fac.factors) {
        (void)mult;
        if (h.degree() == 1) roots.push_back(-(h.coeff(0) * h.coeff(1).inv()));
    }
    std::sort(roots.begin(), roots.end(),
              [](const FFElem& a, const FFElem& b) { return a.coeffs() < b.coeffs(); });
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
}

std::vector<FFElem> gf_roots_exhaustive(const GFPoly& f) {
    const FFPtr& F = f.field();
    if (!F->order_fits_u64() || F->order_u64() > 2'000'000)
        throw EnumerationTooLarge("field too large for exhaustive root search");
    uint64_t q = F->order_u64(), p = F->p();
    std::vector<FFElem> roots;
    for (uint64_t v = 0; v < q; ++v) {
        uint64_t t = v;
        std::vector<uint64_t> c(F->degree());
        for (auto& x : c) {
            x = t % p;
            t /= p;
        }
        FFElem e(F, std::move(c));
        if (f.eval(e).is_zero()) roots.push_back(e);
    }
    return roots;
}

bool gf_poly_irreducible(const GFPoly& f) {
    if (f.degree() <= 0) return false;
    if (f.degree() == 1) return true;
    auto fac = ff_factor(f);
    return fac.factors.size() == 1 && fac.factors[0].second == 1;
}

std::vector<FFElem> cube_roots_of_unity(const FFPtr& field) {
    // roots of x^2 + x + 1
    GFPoly f = GFPoly::from_coeffs(field, {1, 1, 1});
    return gf_roots(f);
}

namespace {

// powers 1, g, g^2, ... of the embedded small-field generator in the big field
const std::vector<FFElem>& embedding_powers(const FFPtr& small, const FFPtr& big) {
    static std::mutex mu;
    static std::map<std::pair<const FiniteField*, const FiniteField*>, std::vector<FFElem>>
        cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(small.get(), big.get());
    auto it = cache.find(key);
    if (it == cache.end()) {
        std::vector<FFElem> mc;
        for (uint64_t c : small->modulus()) mc.push_back(FFElem::from_u64(big, c));
        GFPoly m(big, std::move(mc));
        auto roots = gf_roots(m);
        if (roots.empty()) throw Error("embed: modulus has no root in the big field");
        std::vector<FFElem> pw;
        FFElem acc = FFElem::one(big);
        for (unsigned i = 0; i < small->degree(); ++i) {
            pw.push_back(acc);
            acc = acc * roots[0];
        }
        it = cache.emplace(key, std::move(pw)).first;
    }
    return it->second;
}

}  // namespace

FFElem embed(const FFElem& x, const FFPtr& big) {
    const FFPtr& small = x.field();
    if (small.get() == big.get()) return x;
    if (small->p() != big->p()) throw PreconditionError("embed: different characteristic");
    if (big->degree() % small->degree() != 0)
        throw PreconditionError("embed: degree does not divide");
    if (small->degree() == 1) {
        // prime field: constants map to constants
        return FFElem::from_u64(big, x.coeffs()[0]);
    }
    const auto& powers = embedding_powers(small, big);
    FFElem out = FFElem::zero(big);
    for (size_t i = 0; i < x.coeffs().size(); ++i)
        out += powers[i].mul_small(int64_t(x.coeffs()[i]));
    return out;
}

std::optional<FFElem> descend(const FFElem& x, const FFPtr& small) {
    const FFPtr& big = x.field();
    if (small.get() == big.get()) return x;
    if (small->p() != big->p() || big->degree() % small->degree() != 0)
        throw PreconditionError("descend: fields incompatible");
    uint64_t p = big->p();
    unsigned D = big->degree(), d = small->degree();
    if (d == 1) {
        for (size_t i = 1; i < x.coeffs().size(); ++i)
            if (x.coeffs()[i] != 0) return std::nullopt;
        return FFElem::from_u64(small, x.coeffs()[0]);
    }
    const auto& powers = embedding_powers(small, big);
    // solve sum a_i powers[i] = x over F_p by Gaussian elimination (D x d)
    std::vector<std::vector<uint64_t>> M(D, std::vector<uint64_t>(d + 1, 0));
    for (unsigned i = 0; i < D; ++i) {
        for (unsigned j = 0; j < d; ++j) M[i][j] = powers[j].coeffs()[i];
        M[i][d] = x.coeffs()[i];
    }
    unsigned row = 0;
    std::vector<int> pivot_col(d, -1);
    for (unsigned col = 0; col < d && row < D; ++col) {
        unsigned sel = row;
        while (sel < D && M[sel][col] == 0) ++sel;
        if (sel == D) continue;
        std::swap(M[sel], M[row]);
        uint64_t inv = mod_inv(M[row][col], p);
        for (unsigned j = col; j <= d; ++j) M[row][j] = mod_mul(M[row][j], inv, p);
        for (unsigned i = 0; i < D; ++i) {
            if (i == row || M[i][col] == 0) continue;
            uint64_t f = M[i][col];
            for (unsigned j = col; j <= d; ++j)
                M[i][j] = mod_sub(M[i][j], mod_mul(f, M[row][j], p), p);
        }
        pivot_col[col] = int(row);
        ++row;
    }
    std::vector<uint64_t> a(d, 0);
    for (unsigned col = 0; col < d; ++col)
        if (pivot_col[col] >= 0) a[col] = M[size_t(pivot_col[col])][d];
    // consistency: rows without pivots must have zero rhs, and the solution
    // must reproduce x
    FFElem check = FFElem::zero(big);
    for (unsigned j = 0; j < d; ++j) check += powers[j].mul_small(int64_t(a[j]));
    if (!(check == x)) return std::nullopt;
    return FFElem(small, std::move(a));
}

}  // namespace csurf
