#include "csurf/curve/group.hpp"

#include <algorithm>
#include <numeric>

#include "csurf/arith/gf_poly.hpp"
#include "csurf/arith/zform.hpp"
#include "csurf/errors.hpp"

namespace csurf {

namespace {

constexpr uint64_t kGroupFieldCap = 1'000'000;

// Dense polynomials of tiny degree in Zech form, used for per-line cubic
// root-finding during enumeration.
struct ZPoly {
    const ZechTables* z;
    std::vector<uint32_t> c;  // constant first; may carry zero leading entries

    void trim() {
        while (!c.empty() && z->is_zero(c.back())) c.pop_back();
    }
    int degree() const {
        for (int i = int(c.size()) - 1; i >= 0; --i)
            if (!z->is_zero(c[size_t(i)])) return i;
        return -1;
    }
};

ZPoly zp_mul(const ZPoly& a, const ZPoly& b) {
    const ZechTables* z = a.z;
    if (a.c.empty() || b.c.empty()) return ZPoly{z, {}};
    ZPoly r{z, std::vector<uint32_t>(a.c.size() + b.c.size() - 1, z->zero())};
    for (size_t i = 0; i < a.c.size(); ++i) {
        if (z->is_zero(a.c[i])) continue;
        for (size_t j = 0; j < b.c.size(); ++j)
            r.c[i + j] = z->add(r.c[i + j], z->mul(a.c[i], b.c[j]));
    }
    r.trim();
    return r;
}

ZPoly zp_mod(ZPoly f, const ZPoly& m) {
    const ZechTables* z = f.z;
    int dm = m.degree();
    uint32_t li = z->inv(m.c[size_t(dm)]);
    f.trim();
    while (f.degree() >= dm) {
        int df = f.degree();
        uint32_t q = z->mul(f.c[size_t(df)], li);
        for (int i = 0; i <= dm; ++i)
            f.c[size_t(df - dm + i)] =
                z->sub(f.c[size_t(df - dm + i)], z->mul(q, m.c[size_t(i)]));
        f.trim();
    }
    return f;
}

ZPoly zp_gcd(ZPoly a, ZPoly b) {
    a.trim();
    b.trim();
    while (b.degree() >= 0) {
        ZPoly r = zp_mod(a, b);
        a = b;
        b = r;
    }
    if (a.degree() >= 0) {
        const ZechTables* z = a.z;
        uint32_t li = z->inv(a.c[size_t(a.degree())]);
        for (auto& x : a.c) x = z->mul(x, li);
    }
    return a;
}

ZPoly zp_powmod_xq(const ZPoly& m) {
    // x^q mod m by square-and-multiply on the exponent q
    const ZechTables* z = m.z;
    uint64_t q = z->q();
    ZPoly r{z, {z->one()}};
    ZPoly base{z, {z->zero(), z->one()}};
    base = zp_mod(base, m);
    uint64_t e = q;
    while (e) {
        if (e & 1) r = zp_mod(zp_mul(r, base), m);
        base = zp_mod(zp_mul(base, base), m);
        e >>= 1;
    }
    return r;
}

ZPoly zp_pow_mod(ZPoly base, uint64_t e, const ZPoly& m) {
    const ZechTables* z = m.z;
    ZPoly r{z, {z->one()}};
    base = zp_mod(std::move(base), m);
    while (e) {
        if (e & 1) r = zp_mod(zp_mul(r, base), m);
        base = zp_mod(zp_mul(base, base), m);
        e >>= 1;
    }
    return r;
}

ZPoly zp_derivative(const ZPoly& f) {
    const ZechTables* z = f.z;
    ZPoly r{z, {}};
    if (f.c.size() <= 1) return r;
    r.c.assign(f.c.size() - 1, z->zero());
    for (size_t i = 1; i < f.c.size(); ++i) {
        uint64_t m = i % z->p();
        if (m == 0 || z->is_zero(f.c[i])) continue;
        uint32_t mult = z->from_packed(m);
        r.c[i - 1] = z->mul(f.c[i], mult);
    }
    r.trim();
    return r;
}

// Quotient of f by (x - r); valid only when r is a root.
ZPoly zp_deflate(const ZPoly& f, uint32_t r) {
    const ZechTables* z = f.z;
    int d = f.degree();
    std::vector<uint32_t> qc(size_t(d), z->zero());
    uint32_t carry = f.c[size_t(d)];
    for (int i = d - 1; i >= 0; --i) {
        qc[size_t(i)] = carry;
        carry = z->add(f.c[size_t(i)], z->mul(carry, r));
    }
    ZPoly q{z, std::move(qc)};
    q.trim();
    return q;
}

// All roots in F_q of a polynomial of degree <= 3 (not identically zero),
// without multiplicity.
void zp_roots(const ZPoly& f0, std::vector<uint32_t>& out) {
    out.clear();
    const ZechTables* z = f0.z;
    ZPoly f = f0;
    f.trim();
    int d = f.degree();
    if (d <= 0) return;
    if (d == 1) {
        out.push_back(z->mul(z->neg(f.c[0]), z->inv(f.c[1])));
        return;
    }
    if (d == 2) {
        uint32_t r[2];
        int n = z->solve_quadratic(f.c[2], f.c[1], f.c[0], r);
        for (int i = 0; i < n; ++i) out.push_back(r[i]);
        return;
    }
    // cubic: restrict to the part splitting over F_q
    ZPoly xq = zp_powmod_xq(f);
    ZPoly xqmx = xq;
    if (xqmx.c.size() < 2) xqmx.c.resize(2, z->zero());
    xqmx.c[1] = z->sub(xqmx.c[1], z->one());
    ZPoly g = zp_gcd(f, xqmx);
    int dg = g.degree();
    if (dg <= 0) return;
    if (dg < 3) {
        zp_roots(g, out);
        return;
    }
    // fully split squarefree-or-not cubic; peel a repeated root if present
    ZPoly h = zp_gcd(g, zp_derivative(g));
    if (h.degree() >= 1) {
        std::vector<uint32_t> sub;
        zp_roots(h, sub);
        ZPoly rest = g;
        for (uint32_t r : sub) {
            out.push_back(r);
            while (rest.degree() >= 1) {
                ZPoly chk = rest;
                ZPoly lin{z, {z->neg(r), z->one()}};
                if (zp_mod(chk, lin).degree() >= 0) break;
                rest = zp_deflate(rest, r);
            }
        }
        std::vector<uint32_t> more;
        if (rest.degree() >= 1) zp_roots(rest, more);
        for (uint32_t r : more) out.push_back(r);
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return;
    }
    // squarefree split cubic: separate with deterministic shift powers
    uint64_t half = (z->q() - 1) / 2;
    for (uint64_t s = 0;; ++s) {
        uint64_t sv = s % z->q();
        ZPoly shift{z, {sv == 0 ? z->zero() : z->from_packed(uint32_t(sv)), z->one()}};
        ZPoly pw = zp_pow_mod(shift, half, g);
        if (pw.c.empty()) pw.c.resize(1, z->zero());
        pw.c[0] = z->sub(pw.c[0], z->one());
        ZPoly h2 = zp_gcd(g, pw);
        if (h2.degree() >= 1 && h2.degree() < 3) {
            std::vector<uint32_t> sub;
            zp_roots(h2, sub);
            ZPoly rest = g;
            for (uint32_t r : sub) {
                out.push_back(r);
                rest = zp_deflate(rest, r);
            }
            std::vector<uint32_t> more;
            zp_roots(rest, more);
            for (uint32_t r : more) out.push_back(r);
            std::sort(out.begin(), out.end());
            out.erase(std::unique(out.begin(), out.end()), out.end());
            return;
        }
    }
}

struct ZPoint {
    uint32_t x, y, w;
};

}  // namespace

struct CurveGroupEngine::Impl {
    const ZechTables* z = nullptr;
    ZForm form;                       // the cubic
    std::array<ZForm, 3> partials;    // gradient
    uint32_t half_inv;                // 1/2 in log form

    ZPoint load(const CurvePoint& P) const {
        return {z->from_elem(P.xyz[0]), z->from_elem(P.xyz[1]), z->from_elem(P.xyz[2])};
    }

    uint32_t evalP(const ZPoint& P) const {
        uint32_t v[3] = {P.x, P.y, P.w};
        return form.eval(v);
    }

    ZPoint comb(uint32_t a, const ZPoint& P, uint32_t b, const ZPoint& Q) const {
        return {z->add(z->mul(a, P.x), z->mul(b, Q.x)),
                z->add(z->mul(a, P.y), z->mul(b, Q.y)),
                z->add(z->mul(a, P.w), z->mul(b, Q.w))};
    }

    ZPoint normalize(ZPoint P) const {
        uint32_t lead = !z->is_zero(P.x) ? P.x : (!z->is_zero(P.y) ? P.y : P.w);
        if (z->is_zero(lead)) throw Error("curve group: zero projective point");
        uint32_t inv = z->inv(lead);
        return {z->mul(P.x, inv), z->mul(P.y, inv), z->mul(P.w, inv)};
    }

    bool eq(const ZPoint& A, const ZPoint& B) const {
        return A.x == B.x && A.y == B.y && A.w == B.w;
    }

    // third intersection of the line through P, Q with the curve
    ZPoint third(const ZPoint& P, const ZPoint& Q) const {
        if (!eq(P, Q)) {
            // B(a,b) = F(aP + bQ) = ab(c21 a + c12 b)
            uint32_t B11 = evalP(comb(z->one(), P, z->one(), Q));
            uint32_t B1m1 = evalP(comb(z->one(), P, z->neg(z->one()), Q));
            uint32_t c21 = z->mul(z->sub(B11, B1m1), half_inv);
            uint32_t c12 = z->mul(z->add(B11, B1m1), half_inv);
            if (z->is_zero(c21) && z->is_zero(c12))
                throw Error("curve group: line lies on the curve");
            return normalize(comb(z->neg(c12), P, c21, Q));
        }
        // tangent line at P: pick a second point B with grad(P) . B = 0
        uint32_t v[3] = {P.x, P.y, P.w};
        uint32_t g0 = partials[0].eval(v), g1 = partials[1].eval(v), g2 = partials[2].eval(v);
        ZPoint B{};
        // kernel candidates of the gradient functional
        ZPoint cands[3] = {{g1, z->neg(g0), z->zero()},
                           {g2, z->zero(), z->neg(g0)},
                           {z->zero(), g2, z->neg(g1)}};
        bool found = false;
        for (const auto& cand : cands) {
            if (z->is_zero(cand.x) && z->is_zero(cand.y) && z->is_zero(cand.w)) continue;
            ZPoint N = normalize(cand);
            if (!eq(N, normalize(P))) {
                B = N;
                found = true;
                break;
            }
        }
        if (!found) throw Error("curve group: no tangent direction (singular point?)");
        // F(aP + bB) = b^2 (c12 a + c03 b)
        uint32_t c03 = evalP(B);
        uint32_t B11 = evalP(comb(z->one(), P, z->one(), B));
        uint32_t B1m1 = evalP(comb(z->one(), P, z->neg(z->one()), B));
        uint32_t c12 = z->mul(z->add(B11, B1m1), half_inv);
        if (z->is_zero(c12) && z->is_zero(c03))
            throw Error("curve group: tangent line lies on the curve");
        return normalize(comb(z->neg(c03), P, c12, B));
    }
};

uint64_t CurveGroupEngine::key(const CurvePoint& P) const {
    const ZechTables* z = impl_->z;
    auto enc = [&](const FFElem& e) -> uint64_t {
        uint32_t l = z->from_elem(e);
        return l == ZechTables::kZero ? uint64_t(z->q() - 1) : l;
    };
    return (enc(P.xyz[0]) << 42) | (enc(P.xyz[1]) << 21) | enc(P.xyz[2]);
}

CurveGroupEngine::CurveGroupEngine(const PlaneCubic& curve, const CurvePoint& origin)
    : field_(curve.field), curve_(curve), origin_(origin) {
    if (!field_->order_fits_u64() || field_->order_u64() > kGroupFieldCap)
        throw EnumerationTooLarge("curve group: field exceeds the 10^6 enumeration cap");
    const ZechTables* z = field_->zech();
    if (!z) throw EnumerationTooLarge("curve group: field exceeds table cap");
    impl_ = std::make_shared<Impl>();
    impl_->z = z;
    impl_->form = ZForm(curve.form, z);
    for (unsigned i = 0; i < 3; ++i) impl_->partials[i] = ZForm(curve.form.partial(i), z);
    impl_->half_inv = z->inv(z->from_packed(2));
    if (!on_curve(origin_)) throw PreconditionError("curve group: origin not on the curve");

    // enumerate: chart w = 1 by solving the restriction in y per x, then w = 0
    uint64_t q = field_->order_u64();
    auto push = [&](ZPoint P) {
        P = impl_->normalize(P);
        points_.push_back(CurvePoint{
            {z->to_elem(field_, P.x), z->to_elem(field_, P.y), z->to_elem(field_, P.w)}});
    };
    std::vector<uint32_t> roots;
    for (uint64_t xv = 0; xv < q; ++xv) {
        uint32_t x = z->from_packed(xv);
        uint32_t coeffs[4];
        uint32_t fixed[3] = {x, 0, z->one()};
        impl_->form.restrict_var(1, fixed, coeffs, 3);
        ZPoly f{z, {coeffs[0], coeffs[1], coeffs[2], coeffs[3]}};
        if (f.degree() < 0) throw Error("curve group: curve contains a line");
        zp_roots(f, roots);
        for (uint32_t y : roots) push({x, y, z->one()});
    }
    {
        // w = 0: points (x : 1 : 0) plus possibly (1 : 0 : 0)
        uint32_t coeffs[4];
        uint32_t fixed[3] = {0, z->one(), z->zero()};
        impl_->form.restrict_var(0, fixed, coeffs, 3);
        ZPoly f{z, {coeffs[0], coeffs[1], coeffs[2], coeffs[3]}};
        if (f.degree() >= 0) {
            zp_roots(f, roots);
            for (uint32_t x : roots) push({x, z->one(), z->zero()});
        }
        uint32_t v100[3] = {z->one(), z->zero(), z->zero()};
        if (z->is_zero(impl_->form.eval(v100))) push({z->one(), z->zero(), z->zero()});
    }
    std::sort(points_.begin(), points_.end(), [&](const CurvePoint& A, const CurvePoint& B) {
        return key(A) < key(B);
    });
    points_.erase(std::unique(points_.begin(), points_.end()), points_.end());
}

bool CurveGroupEngine::on_curve(const CurvePoint& P) const {
    ZPoint zp = impl_->load(P);
    return impl_->z->is_zero(impl_->evalP(zp));
}

CurvePoint CurveGroupEngine::third(const CurvePoint& P, const CurvePoint& Q) const {
    ZPoint R = impl_->third(impl_->load(P), impl_->load(Q));
    const ZechTables* z = impl_->z;
    return CurvePoint{{z->to_elem(field_, R.x), z->to_elem(field_, R.y), z->to_elem(field_, R.w)}};
}

CurvePoint CurveGroupEngine::add(const CurvePoint& P, const CurvePoint& Q) const {
    return third(third(P, Q), origin_);
}

CurvePoint CurveGroupEngine::neg(const CurvePoint& P) const { return third(P, origin_); }

CurvePoint CurveGroupEngine::mul(uint64_t n, const CurvePoint& P) const {
    CurvePoint acc = origin_;
    CurvePoint base = P;
    while (n) {
        if (n & 1) acc = add(acc, base);
        base = add(base, base);
        n >>= 1;
    }
    return acc;
}

void CurveGroupEngine::compute_structure() {
    if (structured_) return;
    structured_ = true;
    uint64_t n = points_.size();
    auto nf = factor_u64(n);

    // p-part shapes from torsion counts
    b_ = 1;
    a_ = 1;
    for (auto [l, e] : nf) {
        unsigned alpha = 0;
        // alpha = largest i with #ker(l^i) == l^{2i}
        for (unsigned i = 1; i <= e / 2; ++i) {
            uint64_t li = 1;
            for (unsigned t = 0; t < i; ++t) li *= l;
            uint64_t cnt = 0;
            for (const auto& P : points_)
                if (mul(li, P) == origin_) ++cnt;
            uint64_t expect = li * li;
            if (cnt == expect)
                alpha = i;
            else
                break;
        }
        unsigned beta = e - alpha;
        for (unsigned t = 0; t < alpha; ++t) a_ *= l;
        for (unsigned t = 0; t < beta; ++t) b_ *= l;
    }

    // generator of order b
    auto order_of = [&](const CurvePoint& P) {
        uint64_t ord = b_;
        for (auto [l, e] : factor_u64(b_)) {
            (void)e;
            while (ord % l == 0 && mul(ord / l, P) == origin_) ord /= l;
        }
        return mul(ord, P) == origin_ ? ord : uint64_t(0);
    };
    CurvePoint g1 = origin_;
    bool found = false;
    for (const auto& P : points_) {
        if (order_of(P) == b_) {
            g1 = P;
            found = true;
            break;
        }
    }
    if (!found) throw Error("curve group: no element of exponent order (broken counts)");
    gens_ = {g1};

    // hash of <g1> with discrete logs
    std::unordered_map<uint64_t, uint64_t> h1;
    {
        CurvePoint acc = origin_;
        for (uint64_t i = 0; i < b_; ++i) {
            h1[key(acc)] = i;
            acc = add(acc, g1);
        }
    }

    if (a_ > 1) {
        // find P whose first multiple inside <g1> is the a-th, then correct it
        CurvePoint g2 = origin_;
        bool got = false;
        for (const auto& P : points_) {
            if (h1.count(key(P))) continue;
            uint64_t k = 1;
            CurvePoint acc = P;
            while (!h1.count(key(acc))) {
                acc = add(acc, P);
                ++k;
            }
            if (k == a_) {
                // a*P = d*g1 with a | d; replace P by P - (d/a) g1
                uint64_t d = h1[key(acc)];
                if (d % a_ != 0) continue;
                g2 = add(P, mul(b_ - (d / a_) % b_, g1));
                if (mul(a_, g2) == origin_) {
                    got = true;
                    break;
                }
            }
        }
        if (!got) throw Error("curve group: no complement generator found");
        gens_.push_back(g2);
    }

    // coordinates and closure verification
    coords_.clear();
    CurvePoint rowstart = origin_;
    for (uint64_t i = 0; i < b_; ++i) {
        CurvePoint cur = rowstart;
        for (uint64_t j = 0; j < a_; ++j) {
            auto [it, fresh] = coords_.emplace(key(cur), std::make_pair(i, j));
            if (!fresh) throw Error("curve group: generator combination collision");
            if (a_ > 1) cur = add(cur, gens_[1]);
        }
        rowstart = add(rowstart, g1);
    }
    if (coords_.size() != n) throw Error("curve group: closure does not cover the points");
    for (const auto& P : points_)
        if (!coords_.count(key(P))) throw Error("curve group: enumerated point outside closure");
}

std::pair<uint64_t, uint64_t> CurveGroupEngine::dlog(const CurvePoint& P) const {
    auto it = coords_.find(key(P));
    if (it == coords_.end()) throw PreconditionError("dlog: point not in the group table");
    return it->second;
}

std::vector<CurvePoint> flexes_rational_over(const PlaneCubic& c, const FFPtr& field) {
    // Flexes of the base-changed curve with residue degree 1 over `field`,
    // their coordinates descended from the flex computation field.
    PlaneCubic cb = c.field.get() == field.get() ? c : base_change(c, field);
    FlexData fd = flexes(cb);
    std::vector<CurvePoint> out;
    for (size_t i = 0; i < fd.points.size(); ++i) {
        if (fd.degrees[i] != 1) continue;
        if (fd.field.get() == field.get()) {
            out.push_back(fd.points[i]);
            continue;
        }
        std::array<FFElem, 3> down;
        bool ok = true;
        for (size_t t = 0; t < 3 && ok; ++t) {
            auto d = descend(fd.points[i].xyz[t], field);
            if (!d) ok = false;
            else down[t] = *d;
        }
        if (!ok) throw Error("flexes_rational_over: degree-1 flex fails to descend");
        out.push_back(normalize_point(down));
    }
    return out;
}

CurveGroup group_structure(const PlaneCubic& c, unsigned ext_degree) {
    FFPtr FQ = ext_degree == 1 && c.field->degree() == 1
                   ? c.field
                   : FiniteField::make(c.field->p(), c.field->degree() * ext_degree);
    if (!FQ->order_fits_u64() || FQ->order_u64() > kGroupFieldCap)
        throw EnumerationTooLarge("group_structure: field above the 10^6 cap");
    auto flx = flexes_rational_over(c, FQ);
    if (flx.empty())
        throw PreconditionError("group_structure: no flex rational over the field");
    PlaneCubic cb = base_change(c, FQ);
    CurveGroup G;
    G.field = FQ;
    G.curve = cb;
    G.origin = flx.front();
    G.engine = std::make_shared<CurveGroupEngine>(cb, G.origin);
    G.engine->compute_structure();
    G.order = G.engine->order();
    G.inv_a = G.engine->inv_a();
    G.inv_b = G.engine->inv_b();
    G.generators = G.engine->generators();
    return G;
}

std::vector<CurvePoint> three_torsion(const CurveGroup& G) {
    std::vector<CurvePoint> out;
    for (const auto& P : G.engine->points())
        if (G.engine->mul(3, P) == G.origin) out.push_back(P);
    return out;
}

namespace {

FlexSubgroup flex_subgroup_impl(const CurveGroup& G, bool require_all) {
    PlaneCubic base = G.curve;
    auto flx = flexes_rational_over(base, G.field);
    if (require_all && flx.size() != 9) {
        FlexData fd = flexes(base);
        std::string missing;
        for (unsigned d : fd.degrees)
            if (d != 1) missing += (missing.empty() ? "" : ", ") + std::to_string(d);
        throw PreconditionError("flex_difference_subgroup: flexes not all rational; "
                                "missing degrees " + missing);
    }
    FlexSubgroup S;
    S.flexes = flx;
    // BFS closure of classes [P_i - O] with witness bookkeeping
    std::vector<CurvePoint> frontier = {G.origin};
    S.elements = {G.origin};
    S.witnesses = {std::vector<int>(flx.size(), 0)};
    auto contains = [&](const CurvePoint& P) {
        for (const auto& Q : S.elements)
            if (Q == P) return true;
        return false;
    };
    bool grew = true;
    while (grew) {
        grew = false;
        size_t cur = S.elements.size();
        for (size_t e = 0; e < cur; ++e) {
            for (size_t i = 0; i < flx.size(); ++i) {
                // element + ([flex_i] - [O]) ; as points: add(element, flex_i)
                CurvePoint nxt = G.engine->add(S.elements[e], flx[i]);
                if (!contains(nxt)) {
                    auto w = S.witnesses[e];
                    w[i] += 1;
                    S.elements.push_back(nxt);
                    S.witnesses.push_back(std::move(w));
                    grew = true;
                }
            }
        }
    }
    return S;
}

}  // namespace

FlexSubgroup flex_difference_subgroup(const CurveGroup& G) {
    return flex_subgroup_impl(G, true);
}

FlexSubgroup flex_difference_subgroup_partial(const CurveGroup& G) {
    return flex_subgroup_impl(G, false);
}

}  // namespace csurf
