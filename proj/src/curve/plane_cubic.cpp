#include "csurf/curve/plane_cubic.hpp"

#include <sstream>

#include "csurf/arith/gf_poly.hpp"
#include "csurf/arith/zform.hpp"
#include "csurf/errors.hpp"

namespace csurf {

PlaneCubic make_plane_cubic(const FFPtr& field, const HForm<FFElem>& form) {
    if (form.nvars() != 3 || form.degree() != 3)
        throw PreconditionError("PlaneCubic needs a ternary cubic form");
    if (form.is_zero()) throw PreconditionError("PlaneCubic: zero form");
    return PlaneCubic{field, form};
}

CurvePoint normalize_point(std::array<FFElem, 3> xyz) {
    for (auto& c : xyz) {
        if (!c.is_zero()) {
            FFElem inv = c.inv();
            for (auto& d : xyz) d = d * inv;
            return CurvePoint{std::move(xyz)};
        }
    }
    throw PreconditionError("normalize_point: zero vector");
}

std::string CurvePoint::to_string() const {
    std::ostringstream os;
    os << "(" << xyz[0].to_string() << " : " << xyz[1].to_string() << " : "
       << xyz[2].to_string() << ")";
    return os.str();
}

FFElem eval_form(const HForm<FFElem>& f, const std::array<FFElem, 3>& pt) {
    return f.eval({pt[0], pt[1], pt[2]});
}

PlaneCubic base_change(const PlaneCubic& c, const FFPtr& big) {
    auto form = c.form.map_coeffs(FFElem::zero(big), [&](const FFElem& x) {
        return embed(x, big);
    });
    return PlaneCubic{big, form};
}

HForm<FFElem> hessian(const PlaneCubic& c) {
    std::vector<std::vector<HForm<FFElem>>> M(3);
    for (unsigned i = 0; i < 3; ++i)
        for (unsigned j = 0; j < 3; ++j) M[i].push_back(c.form.partial(i).partial(j));
    return form_matrix_det(M);
}

SmoothnessCertificate is_smooth(const PlaneCubic& c) {
    if (c.form.is_zero()) throw PreconditionError("is_smooth: zero form");
    std::array<HForm<FFElem>, 3> parts = {c.form.partial(0), c.form.partial(1),
                                          c.form.partial(2)};
    SmoothnessCertificate cert;
    for (unsigned k = 1; k <= 4; ++k) {
        FFPtr big = (k == 1 && c.field->degree() == 1)
                        ? c.field
                        : FiniteField::make(c.field->p(), c.field->degree() * k);
        if (!big->order_fits_u64() || big->order_u64() > ZechTables::kZechCap)
            throw EnumerationTooLarge("is_smooth: extension field exceeds table cap");
        const ZechTables* z = big->zech();
        std::array<ZForm, 3> zp = {ZForm(parts[0].map_coeffs(FFElem::zero(big),
                                                             [&](const FFElem& x) {
                                                                 return embed(x, big);
                                                             }),
                                         z),
                                   ZForm(parts[1].map_coeffs(FFElem::zero(big),
                                                             [&](const FFElem& x) {
                                                                 return embed(x, big);
                                                             }),
                                         z),
                                   ZForm(parts[2].map_coeffs(FFElem::zero(big),
                                                             [&](const FFElem& x) {
                                                                 return embed(x, big);
                                                             }),
                                         z)};
        uint32_t q = z->q();

        auto singular_at = [&](uint32_t x, uint32_t y, uint32_t w) {
            uint32_t v[3] = {x, y, w};
            return z->is_zero(zp[0].eval(v)) && z->is_zero(zp[1].eval(v)) &&
                   z->is_zero(zp[2].eval(v));
        };
        auto report = [&](uint32_t x, uint32_t y, uint32_t w) {
            cert.smooth = false;
            cert.point_field = big;
            std::array<FFElem, 3> pt = {z->to_elem(big, x), z->to_elem(big, y),
                                        z->to_elem(big, w)};
            CurvePoint P = normalize_point(pt);
            // residue degree of the point over the curve's base field
            unsigned d = 1;
            std::array<FFElem, 3> f = P.xyz;
            unsigned base_deg = c.field->degree();
            for (;;) {
                for (auto& coord : f) coord = coord.frobenius_pow(base_deg);
                if (normalize_point(f) == P) break;
                ++d;
            }
            cert.singular_point = P;
            cert.point_degree = d;
        };

        // chart w = 1: for each x, candidates are roots of the first partial
        // that is a nonzero quadratic in y
        uint32_t one = z->one();
        for (uint64_t xv = 0; xv < q; ++xv) {
            uint32_t x = z->from_packed(xv);
            uint32_t q0[4], q1[4], q2[4];
            uint32_t fixed[3] = {x, 0, one};
            zp[0].restrict_var(1, fixed, q0, 2);
            zp[1].restrict_var(1, fixed, q1, 2);
            zp[2].restrict_var(1, fixed, q2, 2);
            auto all_zero = [&](uint32_t* qq) {
                return z->is_zero(qq[0]) && z->is_zero(qq[1]) && z->is_zero(qq[2]);
            };
            uint32_t* lead = nullptr;
            if (!all_zero(q0)) lead = q0;
            else if (!all_zero(q1)) lead = q1;
            else if (!all_zero(q2)) lead = q2;
            if (lead == nullptr) {
                // all partials vanish on the whole line; scan it
                for (uint64_t yv = 0; yv < q; ++yv) {
                    uint32_t y = z->from_packed(yv);
                    if (singular_at(x, y, one)) {
                        report(x, y, one);
                        return cert;
                    }
                }
                continue;
            }
            uint32_t roots[2];
            int nroots = 0;
            if (!z->is_zero(lead[2])) {
                nroots = z->solve_quadratic(lead[2], lead[1], lead[0], roots);
            } else if (!z->is_zero(lead[1])) {
                roots[0] = z->mul(z->neg(lead[0]), z->inv(lead[1]));
                nroots = 1;
            } else {
                nroots = 0;  // nonzero constant: no root
            }
            for (int r = 0; r < nroots; ++r) {
                if (singular_at(x, roots[r], one)) {
                    report(x, roots[r], one);
                    return cert;
                }
            }
        }
        // line w = 0: points (x : 1 : 0) and (1 : 0 : 0)
        for (uint64_t xv = 0; xv < q; ++xv) {
            uint32_t x = z->from_packed(xv);
            if (singular_at(x, one, z->zero())) {
                report(x, one, z->zero());
                return cert;
            }
        }
        if (singular_at(one, z->zero(), z->zero())) {
            report(one, z->zero(), z->zero());
            return cert;
        }
        cert.searched_degree = k;
    }
    cert.smooth = true;
    return cert;
}

}  // namespace csurf
