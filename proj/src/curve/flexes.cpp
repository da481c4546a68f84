#include "csurf/curve/flexes.hpp"

#include <algorithm>
#include <numeric>

#include "csurf/arith/gf_poly.hpp"
#include "csurf/arith/zech.hpp"
#include "csurf/errors.hpp"

namespace csurf {

namespace {

// f(x, 1, z) -> polynomial in z with GFPoly-in-x coefficients is what the
// Sylvester matrix needs; here we extract coefficient j of z as a GFPoly in x.
GFPoly z_coefficient_poly(const HForm<FFElem>& f, unsigned j, const FFPtr& F) {
    std::vector<FFElem> c(4, FFElem::zero(F));
    for (size_t i = 0; i < f.coeffs().size(); ++i) {
        const auto& e = f.table().exponents(i);
        if (e[2] != j) continue;
        c[e[0]] += f.coeff_at(i);  // x-degree e[0], y set to 1
    }
    return GFPoly(F, std::move(c));
}

// 6x6 determinant of univariate polynomials by Laplace expansion with subset
// memoization.
GFPoly poly_matrix_det(const std::vector<std::vector<GFPoly>>& A, const FFPtr& F) {
    size_t n = A.size();
    std::vector<GFPoly> memo(size_t(1) << n, GFPoly::zero(F));
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        unsigned m = unsigned(__builtin_popcount(mask));
        size_t row = n - m;
        GFPoly acc = GFPoly::zero(F);
        int sign = 1;
        for (size_t col = 0; col < n; ++col) {
            if (!(mask & (1u << col))) continue;
            unsigned sub = mask & ~(1u << col);
            GFPoly term = (m == 1) ? A[row][col] : A[row][col] * memo[sub];
            acc = (sign > 0) ? acc + term : acc - term;
            sign = -sign;
        }
        memo[mask] = acc;
    }
    return memo[(size_t(1) << n) - 1];
}

// Resultant of f and h with respect to z after setting y = 1, as a
// polynomial in x. Requires the z^3 coefficient of f to be a nonzero constant.
GFPoly resultant_z_dehom(const HForm<FFElem>& f, const HForm<FFElem>& h, const FFPtr& F) {
    std::vector<GFPoly> fc(4, GFPoly::zero(F)), hc(4, GFPoly::zero(F));
    for (unsigned j = 0; j <= 3; ++j) {
        fc[j] = z_coefficient_poly(f, j, F);
        hc[j] = z_coefficient_poly(h, j, F);
    }
    std::vector<std::vector<GFPoly>> S(6, std::vector<GFPoly>(6, GFPoly::zero(F)));
    // rows 0..2: coefficients of f from z^3 down, shifted
    for (size_t r = 0; r < 3; ++r)
        for (size_t j = 0; j <= 3; ++j) S[r][r + j] = fc[3 - j];
    for (size_t r = 0; r < 3; ++r)
        for (size_t j = 0; j <= 3; ++j) S[r + 3][r + j] = hc[3 - j];
    return poly_matrix_det(S, F);
}

// Univariate restriction z -> f(x0, y0, z) over the field of x0.
GFPoly restrict_to_z(const HForm<FFElem>& f, const FFElem& x0, const FFElem& y0) {
    const FFPtr& F = x0.field();
    std::vector<FFElem> c(4, FFElem::zero(F));
    for (size_t i = 0; i < f.coeffs().size(); ++i) {
        const auto& e = f.table().exponents(i);
        FFElem t = f.coeff_at(i);
        for (int r = 0; r < e[0]; ++r) t = t * x0;
        for (int r = 0; r < e[1]; ++r) t = t * y0;
        c[e[2]] += t;
    }
    return GFPoly(F, std::move(c));
}

struct CandidateCenters {
    // deterministic third-column candidates for the coordinate change
    std::vector<std::array<int64_t, 3>> pts = {
        {0, 0, 1}, {0, 1, 0}, {1, 0, 0}, {0, 1, 1}, {1, 0, 1}, {1, 1, 0},
        {1, 1, 1}, {1, 2, 1}, {2, 1, 1}, {1, 1, 2}, {1, 2, 3}, {3, 1, 2},
        {1, 4, 2}, {2, 3, 1}, {4, 1, 3}, {1, 3, 4}};
};

}  // namespace

FlexData flexes(const PlaneCubic& c) {
    if (c.field->p() < 5) throw PreconditionError("flexes: requires p >= 5");
    auto cert = is_smooth(c);
    if (!cert.smooth) throw PreconditionError("flexes: curve is singular");
    HForm<FFElem> hess = hessian(c);
    if (hess.is_zero()) throw Error("flexes: vanishing Hessian on a smooth cubic");
    const FFPtr& F = c.field;

    // choose a coordinate change M (third column v with f(v) != 0) and compute
    // the dehomogenized resultant
    CandidateCenters centers;
    for (const auto& v : centers.pts) {
        std::vector<FFElem> vf;
        for (int64_t t : v) vf.push_back(FFElem::from_int(F, mpz_class(long(t))));
        if (c.form.eval(vf).is_zero()) continue;

        // complete v to an invertible matrix: columns e_j (j != i), v last,
        // where i is the first nonzero coordinate of v
        size_t piv = 0;
        while (vf[piv].is_zero()) ++piv;
        std::vector<std::vector<FFElem>> M(3, std::vector<FFElem>(3, FFElem::zero(F)));
        size_t col = 0;
        for (size_t j = 0; j < 3; ++j) {
            if (j == piv) continue;
            M[j][col] = FFElem::one(F);
            ++col;
        }
        for (size_t j = 0; j < 3; ++j) M[j][2] = vf[j];

        HForm<FFElem> f2 = c.form.substitute(M);
        HForm<FFElem> h2 = hessian(PlaneCubic{F, f2});
        GFPoly R = resultant_z_dehom(f2, h2, F);
        if (R.is_zero()) continue;  // shared component in this projection; retry
        // a drop below degree 9 means one projection sits at (1 : 0)
        bool include_infinity = R.degree() < 9;
        GFPoly Rred = R.divmod(gf_gcd(R, R.derivative())).first;

        // splitting degree for the (x:y) projections
        unsigned L = 1;
        for (auto& [fac, mult] : ff_factor(Rred).factors) {
            (void)mult;
            L = unsigned(std::lcm<uint64_t>(L, uint64_t(fac.degree())));
        }
        for (unsigned round = 0; round < 2; ++round) {
            if (F->degree() * L > 24) throw Error("flexes: splitting degree exceeds bound");
            FFPtr big = (L == 1) ? F : FiniteField::make(F->p(), F->degree() * L);
            auto lift_form = [&](const HForm<FFElem>& g) {
                return g.map_coeffs(FFElem::zero(big),
                                    [&](const FFElem& x) { return embed(x, big); });
            };
            HForm<FFElem> fb = lift_form(f2), hb = lift_form(h2);
            GFPoly Rb = Rred.map_coeffs([&](const FFElem& x) { return embed(x, big); });
            Rb = GFPoly(big, Rb.coeffs());
            std::vector<std::pair<FFElem, FFElem>> xy;  // projections (x0 : y0)
            for (const auto& r : gf_roots(Rb)) xy.emplace_back(r, FFElem::one(big));
            if (include_infinity) xy.emplace_back(FFElem::one(big), FFElem::zero(big));

            std::vector<CurvePoint> pts;
            unsigned extra = 1;
            for (auto& [x0, y0] : xy) {
                GFPoly fz = restrict_to_z(fb, x0, y0);
                GFPoly hz = restrict_to_z(hb, x0, y0);
                GFPoly g = gf_gcd(fz, hz);
                if (g.degree() < 1) continue;
                auto roots = gf_roots(g);
                if (int(roots.size()) < g.degree()) {
                    // z-roots need a further extension
                    for (auto& [fac, mult] : ff_factor(g).factors) {
                        (void)mult;
                        extra = unsigned(std::lcm<uint64_t>(extra, uint64_t(fac.degree())));
                    }
                }
                for (const auto& z0 : roots)
                    pts.push_back(normalize_point({x0, y0, z0}));
            }
            if (extra > 1 && round == 0) {
                L *= extra;
                continue;
            }
            // dedupe and sanity-check
            std::sort(pts.begin(), pts.end(), [](const CurvePoint& a, const CurvePoint& b) {
                for (int i = 0; i < 3; ++i)
                    if (!(a.xyz[size_t(i)] == b.xyz[size_t(i)]))
                        return a.xyz[size_t(i)].coeffs() < b.xyz[size_t(i)].coeffs();
                return false;
            });
            pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
            if (pts.size() != 9) break;  // bad projection; try the next center

            // undo the coordinate change: original point = M * (new point)
            FlexData out;
            out.field = big;
            for (auto& P : pts) {
                std::array<FFElem, 3> orig;
                for (size_t i = 0; i < 3; ++i) {
                    FFElem s = FFElem::zero(big);
                    for (size_t j = 0; j < 3; ++j) s += embed(M[i][j], big) * P.xyz[j];
                    orig[i] = s;
                }
                out.points.push_back(normalize_point(orig));
            }
            // verify on the original curve and Hessian, compute orbit degrees
            HForm<FFElem> fo = c.form.map_coeffs(FFElem::zero(big), [&](const FFElem& x) {
                return embed(x, big);
            });
            HForm<FFElem> ho = hess.map_coeffs(FFElem::zero(big), [&](const FFElem& x) {
                return embed(x, big);
            });
            for (auto& P : out.points)
                if (!eval_form(fo, P.xyz).is_zero() || !eval_form(ho, P.xyz).is_zero())
                    throw Error("flexes: candidate fails verification");
            unsigned base_deg = F->degree();
            for (auto& P : out.points) {
                unsigned d = 1;
                std::array<FFElem, 3> f3 = P.xyz;
                for (;;) {
                    for (auto& coord : f3) coord = coord.frobenius_pow(base_deg);
                    CurvePoint img = normalize_point(f3);
                    bool found = false;
                    for (const auto& Q : out.points)
                        if (Q == img) found = true;
                    if (!found) throw Error("flexes: set not Frobenius stable");
                    if (img == P) break;
                    ++d;
                }
                out.degrees.push_back(d);
            }
            out.curve = PlaneCubic{big, fo};
            return out;
        }
    }
    throw Error("flexes: no usable projection found");
}

std::vector<CurvePoint> flexes_exhaustive(const PlaneCubic& c, unsigned k) {
    FFPtr big = FiniteField::make(c.field->p(), c.field->degree() * k);
    if (!big->order_fits_u64() || big->order_u64() > ZechTables::kZechCap)
        throw EnumerationTooLarge("flexes_exhaustive: field too large");
    PlaneCubic cb = base_change(c, big);
    HForm<FFElem> hb = hessian(cb);
    std::vector<CurvePoint> out;
    uint64_t q = big->order_u64();
    auto scan = [&](std::array<FFElem, 3> pt) {
        if (eval_form(cb.form, pt).is_zero() && eval_form(hb, pt).is_zero())
            out.push_back(normalize_point(pt));
    };
    const ZechTables* z = big->zech();
    for (uint64_t a = 0; a < q; ++a)
        for (uint64_t b = 0; b < q; ++b)
            scan({z->to_elem(big, z->from_packed(a)), z->to_elem(big, z->from_packed(b)),
                  FFElem::one(big)});
    for (uint64_t a = 0; a < q; ++a)
        scan({z->to_elem(big, z->from_packed(a)), FFElem::one(big), FFElem::zero(big)});
    scan({FFElem::one(big), FFElem::zero(big), FFElem::zero(big)});
    return out;
}

}  // namespace csurf
