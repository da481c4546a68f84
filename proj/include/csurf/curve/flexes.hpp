#pragma once

#include "csurf/curve/plane_cubic.hpp"

namespace csurf {

/// The nine inflection points of a smooth plane cubic, all realized over one
/// common extension of the curve's base field.
struct FlexData {
    FFPtr field;                     // F_{q^e}, smallest common field
    std::vector<CurvePoint> points;  // exactly 9, over `field`
    std::vector<unsigned> degrees;   // residue degree of each flex over F_q
    PlaneCubic curve;                // the curve base-changed to `field`
};

/// Computes the flexes as the intersection of the curve with its Hessian by
/// eliminating one variable (resultant), factoring, and solving back.
/// Requires c smooth and p >= 5; throws PreconditionError otherwise.
FlexData flexes(const PlaneCubic& c);

/// Independent oracle: exhaustive scan of P^2(F_{q^k}) for curve-and-Hessian
/// common zeros. Only for desk-sized fields.
std::vector<CurvePoint> flexes_exhaustive(const PlaneCubic& c, unsigned k);

}  // namespace csurf
