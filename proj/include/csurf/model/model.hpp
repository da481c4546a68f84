#pragma once

#include <gmpxx.h>

#include "csurf/arith/gf.hpp"
#include "csurf/arith/hform.hpp"

namespace csurf {

/// Flat integral model of a cubic surface at p: a quaternary cubic over Q
/// scaled so every coefficient is p-integral and at least one is a p-unit.
struct CubicSurfaceModel {
    uint64_t p = 0;
    HForm<mpq_class> form;  // 4 variables, degree 3
};

/// p-adic valuation of a rational; returns +huge for zero.
long qval_p(const mpq_class& x, uint64_t p);

inline constexpr long kValInfinity = 1L << 40;

/// Scales by the unique power of p that makes min valuation 0.
CubicSurfaceModel normalize_flat(const HForm<mpq_class>& form, uint64_t p);

/// Value of a p-integral rational modulo p^k.
mpz_class qmod_pk(const mpq_class& x, uint64_t p, unsigned k);

/// Reduction of a p-integral form modulo p.
HForm<FFElem> reduce_form_mod_p(const HForm<mpq_class>& f, const FFPtr& Fp);

/// Multiply the coefficient of every monomial by p^(weighted degree) style
/// substitutions are expressed through HForm::substitute; this helper scales
/// the whole form by p^e (e may be negative).
HForm<mpq_class> scale_form_by_p(const HForm<mpq_class>& f, uint64_t p, long e);

}  // namespace csurf
