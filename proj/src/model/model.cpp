#include "csurf/model/model.hpp"

#include "csurf/errors.hpp"

namespace csurf {

long qval_p(const mpq_class& x, uint64_t p) {
    if (x == 0) return kValInfinity;
    long v = 0;
    mpz_class num = x.get_num(), den = x.get_den();
    while (mpz_divisible_ui_p(num.get_mpz_t(), static_cast<unsigned long>(p))) {
        num /= p;
        ++v;
    }
    while (mpz_divisible_ui_p(den.get_mpz_t(), static_cast<unsigned long>(p))) {
        den /= p;
        --v;
    }
    return v;
}

CubicSurfaceModel normalize_flat(const HForm<mpq_class>& form, uint64_t p) {
    if (form.nvars() != 4 || form.degree() != 3)
        throw PreconditionError("normalize_flat: need a quaternary cubic");
    if (!is_prime_u64(p) || p < 5) throw PreconditionError("normalize_flat: p must be prime >= 5");
    if (form.is_zero()) throw PreconditionError("normalize_flat: zero form");
    long minval = kValInfinity;
    for (const auto& c : form.coeffs()) minval = std::min(minval, qval_p(c, p));
    return CubicSurfaceModel{p, scale_form_by_p(form, p, -minval)};
}

HForm<mpq_class> scale_form_by_p(const HForm<mpq_class>& f, uint64_t p, long e) {
    mpq_class s;
    mpz_class pe;
    mpz_ui_pow_ui(pe.get_mpz_t(), p, unsigned(e < 0 ? -e : e));
    if (e >= 0)
        s = mpq_class(pe);
    else
        s = mpq_class(1) / mpq_class(pe);
    HForm<mpq_class> out = f;
    return out.scale(s);
}

mpz_class qmod_pk(const mpq_class& x, uint64_t p, unsigned k) {
    if (qval_p(x, p) < 0) throw PreconditionError("qmod_pk: not p-integral");
    mpz_class pk;
    mpz_ui_pow_ui(pk.get_mpz_t(), p, k);
    mpz_class den = x.get_den();
    mpz_class deninv;
    if (!mpz_invert(deninv.get_mpz_t(), den.get_mpz_t(), pk.get_mpz_t()))
        throw PreconditionError("qmod_pk: denominator not invertible");
    mpz_class r = (x.get_num() * deninv) % pk;
    if (r < 0) r += pk;
    return r;
}

HForm<FFElem> reduce_form_mod_p(const HForm<mpq_class>& f, const FFPtr& Fp) {
    return f.map_coeffs(FFElem::zero(Fp), [&](const mpq_class& c) {
        return FFElem::from_int(Fp, qmod_pk(c, Fp->p(), 1));
    });
}

}  // namespace csurf
