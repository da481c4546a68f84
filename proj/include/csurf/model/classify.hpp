#pragma once

#include <optional>

#include "csurf/curve/plane_cubic.hpp"
#include "csurf/model/model.hpp"

namespace csurf {

enum class ReductionType {
    Smooth,
    ConeOverSmoothCubic,
    ThreePlanes,
    TriplePlane,
    OtherSingular,
};

const char* reduction_type_name(ReductionType t);

/// A linear factor of a form, over its field of definition.
struct LinearFactor {
    FFPtr field;
    std::vector<FFElem> coeffs;  // nvars entries, normalized first unit = 1
    unsigned multiplicity = 1;
};

/// Outcome of the complete linear-factor decomposition of a form of degree
/// at most 3: either the full list of factors over their fields, or a
/// certificate that no such splitting exists.
struct SplitResult {
    bool splits = false;
    std::vector<LinearFactor> factors;
};

/// Decides whether F is a product of linear forms over the algebraic closure
/// and produces the factors when it is. Works by slicing away the last
/// variable, factoring the slice recursively, and solving for the missing
/// coefficient; complete for degree <= 3.
SplitResult factor_into_linear(const HForm<FFElem>& F);

/// Singular point search for a quaternary cubic over F_p. Sweeps extension
/// degrees 1..4, which is complete: a cubic surface with isolated
/// singularities has at most four of them (so residue degree <= 4), and every
/// positive-dimensional singular locus or reducible surface carries points of
/// degree <= 3. Degrees 5 and 6 are swept additionally when the field sizes
/// stay within the work budget.
struct SurfaceSmoothness {
    bool smooth = false;
    unsigned searched_degree = 0;
    std::optional<std::vector<FFElem>> singular_point;  // 4 coords over point_field
    FFPtr point_field;
    unsigned point_degree = 0;
};
SurfaceSmoothness surface_is_smooth(const HForm<FFElem>& F);

/// Cone detection data: the unique rational singular point and the smooth
/// base curve read off after moving it to (0:0:0:1).
struct ConeData {
    std::array<uint64_t, 4> vertex;  // coordinates in [0, p)
    PlaneCubic base;                 // over F_p
};

struct Classification {
    ReductionType type = ReductionType::OtherSingular;
    HForm<FFElem> special_fibre;  // over F_p
    std::optional<SurfaceSmoothness> smoothness;   // Smooth / OtherSingular data
    std::optional<ConeData> cone;                  // ConeOverSmoothCubic
    std::optional<SplitResult> plane_factors;      // ThreePlanes / TriplePlane
};

Classification classify_reduction(const CubicSurfaceModel& m);

}  // namespace csurf
