#pragma once

#include "csurf/arith/hform.hpp"
#include "csurf/arith/zech.hpp"

namespace csurf {

/// A homogeneous form flattened for Zech-table evaluation: nonzero
/// coefficients and exponent rows only, so inner loops are table lookups.
struct ZForm {
    const ZechTables* z = nullptr;
    unsigned nvars = 0;
    std::vector<uint32_t> coeff;
    std::vector<std::array<uint8_t, 4>> exps;

    ZForm() = default;
    ZForm(const HForm<FFElem>& f, const ZechTables* zt) : z(zt), nvars(f.nvars()) {
        for (size_t i = 0; i < f.coeffs().size(); ++i) {
            if (f.coeff_at(i).is_zero()) continue;
            coeff.push_back(zt->from_elem(f.coeff_at(i)));
            exps.push_back(f.table().exponents(i));
        }
    }

    uint32_t eval(const uint32_t* v) const {
        uint32_t acc = z->zero();
        for (size_t i = 0; i < coeff.size(); ++i) {
            uint32_t t = coeff[i];
            const auto& e = exps[i];
            for (unsigned k = 0; k < nvars && !z->is_zero(t); ++k)
                for (unsigned r = 0; r < e[k]; ++r) t = z->mul(t, v[k]);
            acc = z->add(acc, t);
        }
        return acc;
    }

    /// Coefficients of the restriction to variable `var` with the other
    /// variables fixed; out must hold degree+1 slots.
    void restrict_var(unsigned var, const uint32_t* v, uint32_t* out, unsigned deg) const {
        for (unsigned i = 0; i <= deg; ++i) out[i] = z->zero();
        for (size_t i = 0; i < coeff.size(); ++i) {
            uint32_t t = coeff[i];
            const auto& e = exps[i];
            for (unsigned k = 0; k < nvars; ++k) {
                if (k == var) continue;
                for (unsigned r = 0; r < e[k] && !z->is_zero(t); ++r) t = z->mul(t, v[k]);
            }
            out[e[var]] = z->add(out[e[var]], t);
        }
    }
};

}  // namespace csurf
