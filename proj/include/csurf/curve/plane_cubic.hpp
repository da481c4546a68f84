#pragma once

#include <optional>

#include "csurf/arith/gf.hpp"
#include "csurf/arith/hform.hpp"

namespace csurf {

/// A plane cubic curve over a finite field.
struct PlaneCubic {
    FFPtr field;
    HForm<FFElem> form;  // 3 variables, degree 3
};

PlaneCubic make_plane_cubic(const FFPtr& field, const HForm<FFElem>& form);

/// Point in P^2 over field_of(coords), normalized so the first nonzero
/// coordinate is 1.
struct CurvePoint {
    std::array<FFElem, 3> xyz;

    bool operator==(const CurvePoint& o) const { return xyz == o.xyz; }
    std::string to_string() const;
};

CurvePoint normalize_point(std::array<FFElem, 3> xyz);

/// Outcome of the smoothness test: a singular point over the extension where
/// it was found, or the exhausted search bound.
struct SmoothnessCertificate {
    bool smooth = false;
    unsigned searched_degree = 0;                 // extensions swept (smooth case)
    std::optional<CurvePoint> singular_point;     // over `point_field`
    FFPtr point_field;
    unsigned point_degree = 0;
};

/// Complete smoothness test: singular points of a plane cubic are common
/// zeros of the three partial-derivative conics, so isolated ones have degree
/// at most 4 over the base; a positive-dimensional singular locus forces a
/// repeated linear factor, which is rational and is caught by the degree-1
/// sweep. Sweeps F_{q^k}, k = 1..4.
SmoothnessCertificate is_smooth(const PlaneCubic& c);

/// Determinant of the matrix of second partials; a ternary cubic (or zero).
HForm<FFElem> hessian(const PlaneCubic& c);

/// Evaluate a ternary form at a point.
FFElem eval_form(const HForm<FFElem>& f, const std::array<FFElem, 3>& pt);

/// The curve base-changed to a bigger field (coefficients embedded).
PlaneCubic base_change(const PlaneCubic& c, const FFPtr& big);

}  // namespace csurf
