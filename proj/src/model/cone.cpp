#include "csurf/model/cone.hpp"

#include <numeric>

#include "csurf/errors.hpp"

namespace csurf {

bool ConeNormalForm::a_is_unit() const { return qval_p(a, p) == 0; }

HForm<mpq_class> ConeNormalForm::full_form() const {
    mpz_class ps;
    mpz_ui_pow_ui(ps.get_mpz_t(), p, s);
    HForm<mpq_class> F(4, 3, mpq_class(0));
    for (size_t i = 0; i < f.coeffs().size(); ++i) {
        const auto& e = f.table().exponents(i);
        F.set_coeff({e[0], e[1], e[2], 0}, f.coeff_at(i));
    }
    for (size_t i = 0; i < g.coeffs().size(); ++i) {
        const auto& e = g.table().exponents(i);
        F.add_coeff(e, g.coeff_at(i) * mpq_class(ps));
    }
    return F;
}

namespace {

// Split the transformed form into the X3-free part f and p^{-s} * (X3 part).
void decompose(const HForm<mpq_class>& F, uint64_t p, HForm<mpq_class>& f3,
               HForm<mpq_class>& g4, unsigned& s_out) {
    long s = kValInfinity;
    for (size_t i = 0; i < F.coeffs().size(); ++i) {
        const auto& e = F.table().exponents(i);
        if (e[3] == 0) continue;
        s = std::min(s, qval_p(F.coeff_at(i), p));
    }
    if (s == kValInfinity)
        throw PreconditionError("cone decomposition: the form does not involve X3");
    if (s < 1) throw PreconditionError("cone decomposition: X3 part is not divisible by p");
    f3 = HForm<mpq_class>(3, 3, mpq_class(0));
    g4 = HForm<mpq_class>(4, 3, mpq_class(0));
    mpz_class ps;
    mpz_ui_pow_ui(ps.get_mpz_t(), p, unsigned(s));
    for (size_t i = 0; i < F.coeffs().size(); ++i) {
        const auto& e = F.table().exponents(i);
        if (F.coeff_at(i) == 0) continue;
        if (e[3] == 0)
            f3.set_coeff({e[0], e[1], e[2], 0}, F.coeff_at(i));
        else
            g4.set_coeff(e, F.coeff_at(i) / mpq_class(ps));
    }
    s_out = unsigned(s);
}

}  // namespace

ConeNormalForm cone_normal_form(const CubicSurfaceModel& m) {
    Classification cls = classify_reduction(m);
    if (cls.type != ReductionType::ConeOverSmoothCubic)
        throw PreconditionError("cone_normal_form: reduction is not a cone over a smooth "
                                "cubic (got " +
                                std::string(reduction_type_name(cls.type)) + ")");
    // integral primitive lift of the vertex, in [0, p)
    ZVec v(4);
    for (size_t i = 0; i < 4; ++i) v[i] = mpz_class(static_cast<unsigned long>(cls.cone->vertex[i]));
    mpz_class g = 0;
    for (auto& c : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    for (auto& c : v) c /= g;
    ZMat M = complete_to_unimodular_last(v);

    std::vector<std::vector<mpq_class>> Mq(4, std::vector<mpq_class>(4));
    for (size_t i = 0; i < 4; ++i)
        for (size_t j = 0; j < 4; ++j) Mq[i][j] = mpq_class(M(i, j));
    HForm<mpq_class> F2 = m.form.substitute(Mq);

    ConeNormalForm nf;
    nf.p = m.p;
    nf.coordinate_change = M;
    decompose(F2, m.p, nf.f, nf.g, nf.s);
    std::array<uint8_t, 4> e3 = {0, 0, 0, 3};
    nf.a = nf.g.coeff(e3);

    // sanity: the reduction of f must be the smooth base curve
    FFPtr Fp = FiniteField::make(m.p, 1);
    HForm<FFElem> fbar = reduce_form_mod_p(nf.f, Fp);
    auto cert = is_smooth(PlaneCubic{Fp, fbar});
    if (!cert.smooth) throw Error("cone_normal_form: transformed base curve not smooth");
    return nf;
}

ReduceOutcome reduce_s(const ConeNormalForm& nf) {
    if (!nf.a_is_unit())
        throw PreconditionError("reduce_s: unit condition violated (a = 0 mod p)");
    if (nf.s < 3) throw PreconditionError("reduce_s: requires s >= 3");
    HForm<mpq_class> F = nf.full_form();
    // X_i -> p X_i for i = 0,1,2, then divide by p^3
    std::vector<std::vector<mpq_class>> D(4, std::vector<mpq_class>(4, mpq_class(0)));
    for (size_t i = 0; i < 4; ++i) D[i][i] = (i < 3) ? mpq_class(long(nf.p)) : mpq_class(1);
    HForm<mpq_class> F2 = scale_form_by_p(F.substitute(D), nf.p, -3);

    ReduceOutcome out;
    unsigned new_s = nf.s - 3;
    if (new_s == 0) {
        CubicSurfaceModel model{nf.p, F2};
        // min valuation must be 0 here: the X3^3 coefficient is now a unit
        FFPtr Fp = FiniteField::make(nf.p, 1);
        auto cert = surface_is_smooth(reduce_form_mod_p(F2, Fp));
        if (!cert.smooth)
            throw Error("reduce_s: special fibre at s = 0 failed the smoothness check");
        out.good_model = model;
        out.good_certificate = cert;
        return out;
    }
    ConeNormalForm next;
    next.p = nf.p;
    next.coordinate_change = nf.coordinate_change;
    next.reduce_steps = nf.reduce_steps + 1;
    decompose(F2, nf.p, next.f, next.g, next.s);
    if (next.s != new_s) throw Error("reduce_s: s did not drop by 3");
    std::array<uint8_t, 4> e3 = {0, 0, 0, 3};
    next.a = next.g.coeff(e3);
    out.cone = next;
    return out;
}

bool is_good_plane(const std::array<mpq_class, 4>& plane, const ConeNormalForm& nf) {
    long minval = kValInfinity;
    for (const auto& c : plane) minval = std::min(minval, qval_p(c, nf.p));
    if (minval == kValInfinity) throw PreconditionError("is_good_plane: zero plane");
    // normalize to a primitive p-integral form, then test the X3 coefficient
    mpq_class x3 = plane[3];
    if (x3 == 0) return false;
    return qval_p(x3, nf.p) == minval;
}

PlaneCubic good_plane_section(const ConeNormalForm& nf) {
    FFPtr Fp = FiniteField::make(nf.p, 1);
    HForm<FFElem> fbar = reduce_form_mod_p(nf.f, Fp);
    PlaneCubic c{Fp, fbar};
    auto cert = is_smooth(c);
    if (!cert.smooth) throw Error("good_plane_section: base curve not smooth");
    return c;
}

VertexLiftCheck vertex_no_lift_check(const ConeNormalForm& nf) {
    if (nf.s != 1 && nf.s != 2)
        throw PreconditionError("vertex_no_lift_check: requires s in {1, 2}");
    if (!nf.a_is_unit()) throw PreconditionError("vertex_no_lift_check: a must be a unit");
    uint64_t p = nf.p;
    uint64_t p3 = p * p * p;
    // integral coefficients of the full form mod p^3
    HForm<mpq_class> F = nf.full_form();
    std::vector<uint64_t> coeff;
    std::vector<std::array<uint8_t, 4>> exps;
    for (size_t i = 0; i < F.coeffs().size(); ++i) {
        if (F.coeff_at(i) == 0) continue;
        mpz_class c = qmod_pk(F.coeff_at(i), p, 3);
        if (c == 0) continue;
        coeff.push_back(mpz_get_ui(c.get_mpz_t()));
        exps.push_back(F.table().exponents(i));
    }
    auto eval_mod_p3 = [&](uint64_t x0, uint64_t x1, uint64_t x2, uint64_t x3) {
        uint64_t acc = 0;
        uint64_t v[4] = {x0, x1, x2, x3};
        for (size_t i = 0; i < coeff.size(); ++i) {
            uint64_t t = coeff[i];
            for (int k = 0; k < 4; ++k)
                for (int r = 0; r < exps[i][size_t(k)]; ++r) t = (t * v[size_t(k)]) % p3;
            acc = (acc + t) % p3;
        }
        return acc;
    };

    VertexLiftCheck out;
    // x0, x1, x2 run over multiples of p mod p^3; x3 over units mod p^3
    for (uint64_t a = 0; a < p * p; ++a)
        for (uint64_t b = 0; b < p * p; ++b)
            for (uint64_t c = 0; c < p * p; ++c)
                for (uint64_t d = 1; d < p3; ++d) {
                    if (d % p == 0) continue;
                    ++out.residues_checked;
                    if (eval_mod_p3(a * p, b * p, c * p, d) == 0) {
                        out.counterexample = {a * p, b * p, c * p, d};
                        return out;
                    }
                }
    out.verified = true;
    return out;
}

}  // namespace csurf
