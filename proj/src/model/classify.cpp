#include "csurf/model/classify.hpp"

#include <algorithm>
#include <numeric>

#include "csurf/arith/gf_poly.hpp"
#include "csurf/arith/zform.hpp"
#include "csurf/errors.hpp"

namespace csurf {

const char* reduction_type_name(ReductionType t) {
    switch (t) {
        case ReductionType::Smooth: return "Smooth";
        case ReductionType::ConeOverSmoothCubic: return "ConeOverSmoothCubic";
        case ReductionType::ThreePlanes: return "ThreePlanes";
        case ReductionType::TriplePlane: return "TriplePlane";
        case ReductionType::OtherSingular: return "OtherSingular";
    }
    return "?";
}

namespace {

// ---- small linear algebra over a finite field ----

// Inverse of an n x n matrix; nullopt when singular.
std::optional<std::vector<std::vector<FFElem>>> fmat_inverse(
    std::vector<std::vector<FFElem>> A, const FFPtr& F) {
    size_t n = A.size();
    auto I = std::vector<std::vector<FFElem>>(n, std::vector<FFElem>(n, FFElem::zero(F)));
    for (size_t i = 0; i < n; ++i) I[i][i] = FFElem::one(F);
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && A[piv][col].is_zero()) ++piv;
        if (piv == n) return std::nullopt;
        std::swap(A[piv], A[col]);
        std::swap(I[piv], I[col]);
        FFElem inv = A[col][col].inv();
        for (size_t j = 0; j < n; ++j) {
            A[col][j] = A[col][j] * inv;
            I[col][j] = I[col][j] * inv;
        }
        for (size_t i = 0; i < n; ++i) {
            if (i == col || A[i][col].is_zero()) continue;
            FFElem f = A[i][col];
            for (size_t j = 0; j < n; ++j) {
                A[i][j] -= f * A[col][j];
                I[i][j] -= f * I[col][j];
            }
        }
    }
    return I;
}

// ---- form slicing helpers ----

// Restriction to {lastvar = 0} as a form in one fewer variable.
HForm<FFElem> restrict_last(const HForm<FFElem>& F) {
    unsigned n = F.nvars();
    HForm<FFElem> out(n - 1, F.degree(), F.zero_sample());
    for (size_t i = 0; i < F.coeffs().size(); ++i) {
        const auto& e = F.table().exponents(i);
        if (e[n - 1] != 0) continue;
        std::array<uint8_t, 4> f{};
        for (unsigned v = 0; v + 1 < n; ++v) f[v] = e[v];
        out.set_coeff(f, F.coeff_at(i));
    }
    return out;
}

// Coefficient form of lastvar^j (a form of degree deg - j in n-1 variables).
HForm<FFElem> coeff_of_last_power(const HForm<FFElem>& F, unsigned j) {
    unsigned n = F.nvars();
    HForm<FFElem> out(n - 1, F.degree() - j, F.zero_sample());
    for (size_t i = 0; i < F.coeffs().size(); ++i) {
        const auto& e = F.table().exponents(i);
        if (e[n - 1] != j) continue;
        std::array<uint8_t, 4> f{};
        for (unsigned v = 0; v + 1 < n; ++v) f[v] = e[v];
        out.set_coeff(f, F.coeff_at(i));
    }
    return out;
}

// A linear (n-1)-var form lifted to n vars with lastvar coefficient c.
std::vector<FFElem> lift_linear(const std::vector<FFElem>& m, const FFElem& c) {
    std::vector<FFElem> out = m;
    out.push_back(c);
    return out;
}

HForm<FFElem> embed_form(const HForm<FFElem>& F, const FFPtr& big) {
    return F.map_coeffs(FFElem::zero(big), [&](const FFElem& x) { return embed(x, big); });
}

std::vector<FFElem> normalize_linear(std::vector<FFElem> v) {
    for (const auto& c : v) {
        if (!c.is_zero()) {
            FFElem inv = c.inv();
            for (auto& d : v) d = d * inv;
            return v;
        }
    }
    throw PreconditionError("normalize_linear: zero form");
}

// Does the linear form L divide F? Checked by restricting F to ker L.
bool divides(const std::vector<FFElem>& L, const HForm<FFElem>& F) {
    unsigned n = F.nvars();
    const FFPtr& K = L[0].field();
    // kernel basis of L: standard vectors adjusted at the pivot coordinate
    size_t piv = 0;
    while (piv < n && L[piv].is_zero()) ++piv;
    if (piv == n) throw PreconditionError("divides: zero linear form");
    FFElem lp_inv = L[piv].inv();
    std::vector<std::vector<FFElem>> kernel;
    for (size_t j = 0; j < n; ++j) {
        if (j == piv) continue;
        std::vector<FFElem> b(n, FFElem::zero(K));
        b[j] = FFElem::one(K);
        b[piv] = -(L[j] * lp_inv);
        kernel.push_back(std::move(b));
    }
    // substitute x_i -> sum_u kernel[u][i] y_u and require the zero form
    std::vector<std::vector<FFElem>> M(n, std::vector<FFElem>(n, FFElem::zero(K)));
    for (size_t i = 0; i < n; ++i)
        for (size_t u = 0; u + 1 < n; ++u) M[i][u] = kernel[u][i];
    HForm<FFElem> R = F.substitute(M);
    return R.is_zero();
}

// Quotient F / L for a verified linear divisor.
HForm<FFElem> divide_by_linear(const std::vector<FFElem>& L, const HForm<FFElem>& F) {
    unsigned n = F.nvars();
    const FFPtr& K = L[0].field();
    // coordinates y = A x with y_0 = L(x); then F(A^{-1} y) has all monomials
    // divisible by y_0
    std::vector<std::vector<FFElem>> A(n, std::vector<FFElem>(n, FFElem::zero(K)));
    for (size_t j = 0; j < n; ++j) A[0][j] = L[j];
    size_t piv = 0;
    while (L[piv].is_zero()) ++piv;
    size_t row = 1;
    for (size_t j = 0; j < n; ++j) {
        if (j == piv) continue;
        A[row][j] = FFElem::one(K);
        ++row;
    }
    auto Ainv = fmat_inverse(A, K);
    if (!Ainv) throw Error("divide_by_linear: completion not invertible");
    HForm<FFElem> G = F.substitute(*Ainv);  // G(y) = F(A^{-1} y)
    // divide by y_0
    HForm<FFElem> Q(n, F.degree() - 1, F.zero_sample());
    for (size_t i = 0; i < G.coeffs().size(); ++i) {
        const auto& e = G.table().exponents(i);
        if (G.coeff_at(i).is_zero()) continue;
        if (e[0] == 0) throw Error("divide_by_linear: form not divisible");
        std::array<uint8_t, 4> f = e;
        f[0] = uint8_t(f[0] - 1);
        Q.set_coeff(f, G.coeff_at(i));
    }
    // back to x coordinates
    return Q.substitute(A);
}

// All linear factors of a binary form (n = 2), over extension fields.
std::vector<LinearFactor> factor_binary(const HForm<FFElem>& F) {
    const FFPtr& K = F.coeffs()[0].field();
    unsigned d = F.degree();
    // F = sum c_i x0^{d-i} x1^i ; dehomogenize u = x0/x1 -> poly in u of
    // degree d - (multiplicity of x1 = 0 root at x0)
    std::vector<FFElem> uc;  // coefficient of u^k is coeff of x0^k x1^{d-k}
    for (unsigned k = 0; k <= d; ++k) {
        std::array<uint8_t, 4> e{};
        e[0] = uint8_t(k);
        e[1] = uint8_t(d - k);
        uc.push_back(F.coeff(e));
    }
    GFPoly f(K, std::move(uc));
    std::vector<LinearFactor> out;
    unsigned inf_mult = unsigned(d - unsigned(f.degree()));  // factor x1^inf_mult
    if (inf_mult > 0) {
        // the line x1 = 0
        out.push_back(LinearFactor{K, {FFElem::zero(K), FFElem::one(K)}, inf_mult});
    }
    for (auto& [fac, mult] : ff_factor(f).factors) {
        unsigned delta = unsigned(fac.degree());
        FFPtr big = delta == 1 ? K : FiniteField::make(K->p(), K->degree() * delta);
        GFPoly fb = delta == 1 ? fac
                               : GFPoly(big, [&] {
                                     std::vector<FFElem> cc;
                                     for (const auto& c : fac.coeffs())
                                         cc.push_back(embed(c, big));
                                     return cc;
                                 }());
        for (const auto& r : gf_roots(fb)) {
            // root u = r: factor x0 - r x1
            out.push_back(LinearFactor{big,
                                       normalize_linear({FFElem::one(big), -r}),
                                       mult});
        }
    }
    return out;
}

// forward declaration
std::optional<std::vector<LinearFactor>> split_linear(const HForm<FFElem>& F,
                                                      unsigned base_degree_cap);

// Try to peel one linear factor off F (degree >= 1, nvars >= 3) and recurse.
std::optional<std::vector<LinearFactor>> split_with_slice(const HForm<FFElem>& F,
                                                          unsigned base_degree_cap) {
    unsigned n = F.nvars();
    const FFPtr& K = F.coeffs()[0].field();
    unsigned d = F.degree();

    HForm<FFElem> slice = restrict_last(F);
    if (slice.is_zero()) {
        // lastvar divides F
        std::vector<FFElem> L(n, FFElem::zero(K));
        L[n - 1] = FFElem::one(K);
        HForm<FFElem> Q = divide_by_linear(L, F);
        auto rest = split_linear(Q, base_degree_cap);
        if (!rest) return std::nullopt;
        rest->push_back(LinearFactor{K, L, 1});
        return rest;
    }
    auto slice_factors = split_linear(slice, base_degree_cap);
    if (!slice_factors) return std::nullopt;  // restriction of a split form splits

    // coefficient forms of lastvar powers
    std::vector<HForm<FFElem>> Fj;
    for (unsigned j = 0; j <= d; ++j) Fj.push_back(coeff_of_last_power(F, j));

    for (const auto& mf : *slice_factors) {
        const FFPtr& Km = mf.field;
        // lift everything to Km
        std::vector<HForm<FFElem>> Fjm;
        for (auto& G : Fj)
            Fjm.push_back(G.map_coeffs(FFElem::zero(Km),
                                       [&](const FFElem& x) { return embed(x, Km); }));
        // m-tilde as (n-1)-var linear form over Km
        HForm<FFElem> mt(n - 1, 1, FFElem::zero(Km));
        for (unsigned v = 0; v + 1 < n; ++v) {
            std::array<uint8_t, 4> ev{};
            ev[v] = 1;
            mt.set_coeff(ev, mf.coeffs[v]);
        }
        // T(c) = sum_j Fj * (-mt)^j * c^{d-j}: coefficient of c^{d-j} is
        // Fj * (-mt)^j, a degree-d form in n-1 vars over Km.
        std::vector<HForm<FFElem>> c_coeff(d + 1, HForm<FFElem>(n - 1, d, FFElem::zero(Km)));
        HForm<FFElem> neg_mt = HForm<FFElem>(n - 1, 1, FFElem::zero(Km)) - mt;
        HForm<FFElem> pw(n - 1, 0, FFElem::zero(Km));
        pw.set_coeff_at(0, FFElem::one(Km));
        for (unsigned j = 0; j <= d; ++j) {
            c_coeff[d - j] = Fjm[j] * pw;
            if (j < d) pw = pw * neg_mt;
        }
        // per-monomial univariate polynomials in c; gcd them
        GFPoly g = GFPoly::zero(Km);
        size_t nmono = c_coeff[0].coeffs().size();
        for (size_t t = 0; t < nmono; ++t) {
            std::vector<FFElem> cc;
            for (unsigned k = 0; k <= d; ++k) cc.push_back(c_coeff[k].coeff_at(t));
            GFPoly mono_poly(Km, std::move(cc));
            g = gf_gcd(g, mono_poly);
            if (g.degree() == 0) break;
        }
        std::vector<std::pair<FFPtr, FFElem>> candidates;
        if (g.is_zero()) {
            // T identically zero cannot happen for nonzero F (it would make
            // every c a divisor); treat as no candidates
        } else if (g.degree() >= 1) {
            for (auto& [fac, mult] : ff_factor(g).factors) {
                (void)mult;
                unsigned delta = unsigned(fac.degree());
                // true factors of a cubic sit in small extensions; anything
                // beyond this cannot divide and is skipped unverified
                if (Km->degree() * delta > 4 * base_degree_cap) continue;
                FFPtr big = delta == 1
                                ? Km
                                : FiniteField::make(Km->p(), Km->degree() * delta);
                GFPoly fb = delta == 1 ? fac : GFPoly(big, [&] {
                    std::vector<FFElem> cc;
                    for (const auto& cf : fac.coeffs()) cc.push_back(embed(cf, big));
                    return cc;
                }());
                for (const auto& r : gf_roots(fb)) candidates.emplace_back(big, r);
            }
        }
        // c = 0 candidate (lastvar-free factor)
        candidates.emplace_back(Km, FFElem::zero(Km));

        for (auto& [Kc, cval] : candidates) {
            // L = m-tilde + c * lastvar over Kc
            std::vector<FFElem> L;
            for (unsigned v = 0; v + 1 < n; ++v) L.push_back(embed(mf.coeffs[v], Kc));
            L.push_back(cval);
            L = normalize_linear(std::move(L));
            HForm<FFElem> Fc = embed_form(F, Kc);
            if (!divides(L, Fc)) continue;
            HForm<FFElem> Q = divide_by_linear(L, Fc);
            auto rest = split_linear(Q, base_degree_cap);
            if (!rest) continue;
            rest->push_back(LinearFactor{Kc, L, 1});
            return rest;
        }
    }
    return std::nullopt;
}

// Complete splitting into linear factors for degree <= 3 forms; factors are
// returned unmerged (one entry per peel) and get consolidated by the caller.
std::optional<std::vector<LinearFactor>> split_linear(const HForm<FFElem>& F,
                                                      unsigned base_degree_cap) {
    unsigned d = F.degree();
    if (F.is_zero()) throw PreconditionError("split_linear: zero form");
    if (d == 0) return std::vector<LinearFactor>{};
    unsigned n = F.nvars();
    if (n == 1) {
        std::vector<LinearFactor> one;
        const FFPtr& K = F.coeffs()[0].field();
        one.push_back(LinearFactor{K, {FFElem::one(K)}, d});
        return one;
    }
    if (n == 2) return factor_binary(F);
    if (d == 1) {
        std::vector<FFElem> L;
        const FFPtr& K = F.coeffs()[0].field();
        for (unsigned v = 0; v < n; ++v) {
            std::array<uint8_t, 4> ev{};
            ev[v] = 1;
            L.push_back(F.coeff(ev));
        }
        return std::vector<LinearFactor>{LinearFactor{K, normalize_linear(L), 1}};
    }
    return split_with_slice(F, base_degree_cap);
}

}  // namespace

SplitResult factor_into_linear(const HForm<FFElem>& F) {
    if (F.degree() > 3) throw PreconditionError("factor_into_linear: degree > 3");
    SplitResult out;
    auto res = split_linear(F, 3);
    if (!res) return out;
    out.splits = true;
    // canonicalize each factor to its true field of definition so equal
    // factors found over different extensions merge correctly
    for (auto& f : *res) {
        unsigned deg = f.field->degree();
        for (unsigned d = 1; d < deg; ++d) {
            if (deg % d != 0) continue;
            FFPtr small = FiniteField::make(f.field->p(), d);
            std::vector<FFElem> down;
            bool ok = true;
            for (const auto& c : f.coeffs) {
                auto dc = descend(c, small);
                if (!dc) {
                    ok = false;
                    break;
                }
                down.push_back(*dc);
            }
            if (ok) {
                f.field = small;
                f.coeffs = std::move(down);
                break;
            }
        }
    }
    for (auto& f : *res) {
        bool merged = false;
        for (auto& g : out.factors) {
            if (g.field.get() == f.field.get() && g.coeffs == f.coeffs) {
                g.multiplicity += f.multiplicity;
                merged = true;
                break;
            }
        }
        if (!merged) out.factors.push_back(f);
    }
    return out;
}

namespace {

// Budget for the optional degree 5/6 sweeps: |F_{p^k}|^2 table operations.
constexpr uint64_t kExtraSweepBudget = 300'000'000ULL;

// One singular-point sweep over F_{p^k}; returns true when a point is found.
bool sweep_surface_singular(const HForm<FFElem>& F, unsigned k, SurfaceSmoothness& out) {
    const FFPtr& base = F.coeffs()[0].field();
    FFPtr big = (k == 1) ? base : FiniteField::make(base->p(), base->degree() * k);
    if (!big->order_fits_u64() || big->order_u64() > ZechTables::kZechCap)
        throw EnumerationTooLarge("surface smoothness sweep: field exceeds table cap");
    const ZechTables* z = big->zech();
    HForm<FFElem> Fb = embed_form(F, big);
    std::array<ZForm, 4> parts;
    for (unsigned i = 0; i < 4; ++i) parts[i] = ZForm(Fb.partial(i), z);
    uint64_t q = big->order_u64();

    auto singular_at = [&](uint32_t x, uint32_t y, uint32_t zz, uint32_t w) {
        uint32_t v[4] = {x, y, zz, w};
        for (unsigned i = 0; i < 4; ++i)
            if (!z->is_zero(parts[i].eval(v))) return false;
        return true;
    };
    auto found = [&](uint32_t x, uint32_t y, uint32_t zz, uint32_t w) {
        std::array<FFElem, 4> pt = {z->to_elem(big, x), z->to_elem(big, y),
                                    z->to_elem(big, zz), z->to_elem(big, w)};
        // normalize and compute residue degree over the base
        size_t piv = 0;
        while (pt[piv].is_zero()) ++piv;
        FFElem inv = pt[piv].inv();
        for (auto& c : pt) c = c * inv;
        unsigned d = 1;
        std::array<FFElem, 4> f = pt;
        for (;;) {
            for (auto& c : f) c = c.frobenius_pow(base->degree());
            if (f == pt) break;
            ++d;
        }
        out.singular_point = std::vector<FFElem>(pt.begin(), pt.end());
        out.point_field = big;
        out.point_degree = d;
        out.smooth = false;
    };

    uint32_t one = z->one();
    // chart w = 1: per (x, y), z-candidates from the first nonzero restricted
    // quadratic among the partials
    for (uint64_t xv = 0; xv < q; ++xv) {
        uint32_t x = z->from_packed(xv);
        for (uint64_t yv = 0; yv < q; ++yv) {
            uint32_t y = z->from_packed(yv);
            uint32_t fixed[4] = {x, y, 0, one};
            uint32_t qq[4];
            uint32_t* lead = nullptr;
            for (unsigned i = 0; i < 4 && !lead; ++i) {
                parts[i].restrict_var(2, fixed, qq, 2);
                if (!z->is_zero(qq[0]) || !z->is_zero(qq[1]) || !z->is_zero(qq[2]))
                    lead = qq;
            }
            if (!lead) {
                // all partials vanish identically in z on this line
                for (uint64_t zv = 0; zv < q; ++zv) {
                    uint32_t zz = z->from_packed(zv);
                    if (singular_at(x, y, zz, one)) {
                        found(x, y, zz, one);
                        return true;
                    }
                }
                continue;
            }
            uint32_t roots[2];
            int nroots = 0;
            if (!z->is_zero(lead[2]))
                nroots = z->solve_quadratic(lead[2], lead[1], lead[0], roots);
            else if (!z->is_zero(lead[1])) {
                roots[0] = z->mul(z->neg(lead[0]), z->inv(lead[1]));
                nroots = 1;
            }
            for (int r = 0; r < nroots; ++r)
                if (singular_at(x, y, roots[r], one)) {
                    found(x, y, roots[r], one);
                    return true;
                }
        }
    }
    // plane w = 0, z = 1: per x, y-candidates
    for (uint64_t xv = 0; xv < q; ++xv) {
        uint32_t x = z->from_packed(xv);
        uint32_t fixed[4] = {x, 0, one, z->zero()};
        uint32_t qq[4];
        uint32_t* lead = nullptr;
        for (unsigned i = 0; i < 4 && !lead; ++i) {
            parts[i].restrict_var(1, fixed, qq, 2);
            if (!z->is_zero(qq[0]) || !z->is_zero(qq[1]) || !z->is_zero(qq[2])) lead = qq;
        }
        if (!lead) {
            for (uint64_t yv = 0; yv < q; ++yv) {
                uint32_t y = z->from_packed(yv);
                if (singular_at(x, y, one, z->zero())) {
                    found(x, y, one, z->zero());
                    return true;
                }
            }
            continue;
        }
        uint32_t roots[2];
        int nroots = 0;
        if (!z->is_zero(lead[2]))
            nroots = z->solve_quadratic(lead[2], lead[1], lead[0], roots);
        else if (!z->is_zero(lead[1])) {
            roots[0] = z->mul(z->neg(lead[0]), z->inv(lead[1]));
            nroots = 1;
        }
        for (int r = 0; r < nroots; ++r)
            if (singular_at(x, roots[r], one, z->zero())) {
                found(x, roots[r], one, z->zero());
                return true;
            }
    }
    // line w = z = 0, y = 1 and the point (1:0:0:0)
    for (uint64_t xv = 0; xv < q; ++xv) {
        uint32_t x = z->from_packed(xv);
        if (singular_at(x, one, z->zero(), z->zero())) {
            found(x, one, z->zero(), z->zero());
            return true;
        }
    }
    if (singular_at(one, z->zero(), z->zero(), z->zero())) {
        found(one, z->zero(), z->zero(), z->zero());
        return true;
    }
    return false;
}

}  // namespace

SurfaceSmoothness surface_is_smooth(const HForm<FFElem>& F) {
    if (F.nvars() != 4 || F.degree() != 3)
        throw PreconditionError("surface_is_smooth: need a quaternary cubic");
    if (F.is_zero()) throw PreconditionError("surface_is_smooth: zero form");
    SurfaceSmoothness out;
    const FFPtr& base = F.coeffs()[0].field();
    for (unsigned k = 1; k <= 6; ++k) {
        if (k >= 5) {
            // optional assurance sweeps, only within the work budget
            mpz_class q2 = base->order();
            mpz_pow_ui(q2.get_mpz_t(), q2.get_mpz_t(), 2 * k);
            if (q2 > kExtraSweepBudget) break;
        }
        if (sweep_surface_singular(F, k, out)) return out;
        out.searched_degree = k;
    }
    out.smooth = true;
    return out;
}

namespace {

// Rational singular points over F_p (exhaustive over P^3(F_p)).
std::vector<std::array<uint64_t, 4>> rational_singular_points(const HForm<FFElem>& F) {
    const FFPtr& Fp = F.coeffs()[0].field();
    std::array<HForm<FFElem>, 4> parts = {F.partial(0), F.partial(1), F.partial(2),
                                          F.partial(3)};
    std::vector<std::array<uint64_t, 4>> out;
    uint64_t p = Fp->p();
    auto check = [&](std::array<uint64_t, 4> pt) {
        std::vector<FFElem> v;
        for (uint64_t c : pt) v.push_back(FFElem::from_u64(Fp, c));
        for (auto& P : parts)
            if (!P.eval(v).is_zero()) return;
        out.push_back(pt);
    };
    for (uint64_t a = 0; a < p; ++a)
        for (uint64_t b = 0; b < p; ++b)
            for (uint64_t c = 0; c < p; ++c) check({1, a, b, c});
    for (uint64_t b = 0; b < p; ++b)
        for (uint64_t c = 0; c < p; ++c) check({0, 1, b, c});
    for (uint64_t c = 0; c < p; ++c) check({0, 0, 1, c});
    check({0, 0, 0, 1});
    return out;
}

}  // namespace

Classification classify_reduction(const CubicSurfaceModel& m) {
    Classification out;
    FFPtr Fp = FiniteField::make(m.p, 1);
    out.special_fibre = reduce_form_mod_p(m.form, Fp);
    const HForm<FFElem>& Fbar = out.special_fibre;

    // products of planes first (they are never smooth and never cones)
    SplitResult split = factor_into_linear(Fbar);
    if (split.splits) {
        out.plane_factors = split;
        if (split.factors.size() == 1 && split.factors[0].multiplicity == 3) {
            out.type = ReductionType::TriplePlane;
        } else {
            bool all_simple = true;
            unsigned total = 0;
            for (auto& f : split.factors) {
                total += f.multiplicity;
                if (f.multiplicity != 1) all_simple = false;
            }
            // three distinct planes; repeated-plane patterns are outside the
            // classification list
            out.type = (all_simple && total == 3) ? ReductionType::ThreePlanes
                                                  : ReductionType::OtherSingular;
        }
        return out;
    }

    auto rat_sing = rational_singular_points(Fbar);
    if (rat_sing.empty()) {
        SurfaceSmoothness cert = surface_is_smooth(Fbar);
        out.smoothness = cert;
        out.type = cert.smooth ? ReductionType::Smooth : ReductionType::OtherSingular;
        return out;
    }
    if (rat_sing.size() == 1) {
        // candidate cone: move the singular point to (0:0:0:1) over F_p and
        // check that the form then has no X3 and a smooth ternary part
        std::array<uint64_t, 4> v = rat_sing[0];
        // invertible completion with last column = v
        size_t piv = 0;
        while (v[piv] == 0) ++piv;
        std::vector<std::vector<FFElem>> M(4, std::vector<FFElem>(4, FFElem::zero(Fp)));
        size_t col = 0;
        for (size_t j = 0; j < 4; ++j) {
            if (j == piv) continue;
            M[j][col] = FFElem::one(Fp);
            ++col;
        }
        for (size_t j = 0; j < 4; ++j) M[j][3] = FFElem::from_u64(Fp, v[j]);
        HForm<FFElem> moved = Fbar.substitute(M);
        bool x3free = true;
        for (size_t i = 0; i < moved.coeffs().size(); ++i)
            if (moved.table().exponents(i)[3] != 0 && !moved.coeff_at(i).is_zero())
                x3free = false;
        if (x3free) {
            HForm<FFElem> base3(3, 3, FFElem::zero(Fp));
            for (size_t i = 0; i < moved.coeffs().size(); ++i) {
                const auto& e = moved.table().exponents(i);
                if (e[3] != 0) continue;
                base3.set_coeff({e[0], e[1], e[2], 0}, moved.coeff_at(i));
            }
            PlaneCubic base{Fp, base3};
            auto cert = is_smooth(base);
            if (cert.smooth) {
                out.type = ReductionType::ConeOverSmoothCubic;
                out.cone = ConeData{v, base};
                return out;
            }
        }
    }
    // singular but not a cone over a smooth cubic and not a plane union
    SurfaceSmoothness cert;
    cert.smooth = false;
    cert.point_field = Fp;
    cert.point_degree = 1;
    std::vector<FFElem> pt;
    for (uint64_t c : rat_sing[0]) pt.push_back(FFElem::from_u64(Fp, c));
    cert.singular_point = pt;
    out.smoothness = cert;
    out.type = ReductionType::OtherSingular;
    return out;
}

}  // namespace csurf
