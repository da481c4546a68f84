#pragma once

#include "csurf/lattice/snf.hpp"
#include "csurf/model/classify.hpp"

namespace csurf {

/// Normal form of a model whose special fibre is a cone over a smooth plane
/// cubic: after a unimodular integral change of coordinates the vertex sits
/// at (0:0:0:1) and F = f(X0,X1,X2) + p^s g(X0,X1,X2,X3) with s maximal,
/// f reducing to a smooth curve, and g supported on X3-monomials.
struct ConeNormalForm {
    uint64_t p = 0;
    HForm<mpq_class> f;        // 3 variables, degree 3
    HForm<mpq_class> g;        // 4 variables, every monomial involves X3
    unsigned s = 0;
    mpq_class a;               // g(0,0,0,1), the X3^3 coefficient of g
    ZMat coordinate_change;    // unimodular; original = transformed o change
    unsigned reduce_steps = 0; // how many times the s-reduction has been applied

    bool a_is_unit() const;
    /// The full transformed integral form f + p^s g.
    HForm<mpq_class> full_form() const;
};

ConeNormalForm cone_normal_form(const CubicSurfaceModel& m);

/// Result of one s-reduction step: either a new normal form with s lowered
/// by 3, or, at s = 0, a model certified to have smooth reduction.
struct ReduceOutcome {
    std::optional<ConeNormalForm> cone;
    std::optional<CubicSurfaceModel> good_model;
    std::optional<SurfaceSmoothness> good_certificate;
};

/// Substitutes X_i -> p X_i (i <= 2), divides by p^3. Requires s >= 3 and a
/// a p-unit; throws PreconditionError otherwise.
ReduceOutcome reduce_s(const ConeNormalForm& nf);

/// A plane (given by an integral primitive linear form in the normal-form
/// coordinates) is good when its reduction misses the vertex (0:0:0:1),
/// i.e. the X3 coefficient is a p-unit.
bool is_good_plane(const std::array<mpq_class, 4>& plane, const ConeNormalForm& nf);

/// The plane section X3 = 0 of the special fibre: the smooth base curve.
PlaneCubic good_plane_section(const ConeNormalForm& nf);

/// Exhaustively verifies mod p^3 that no point with val(x0..x2) >= 1 and x3 a
/// unit satisfies F = 0: the vertex of the cone cannot lift. Requires
/// s in {1,2} and a a unit. Returns the counterexample if one exists (which
/// would signal a broken invariant).
struct VertexLiftCheck {
    bool verified = false;
    uint64_t residues_checked = 0;
    std::optional<std::array<uint64_t, 4>> counterexample;  // mod p^3
};
VertexLiftCheck vertex_no_lift_check(const ConeNormalForm& nf);

}  // namespace csurf
