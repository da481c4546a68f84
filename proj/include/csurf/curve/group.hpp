#pragma once

#include <memory>
#include <unordered_map>

#include "csurf/curve/flexes.hpp"
#include "csurf/curve/plane_cubic.hpp"

namespace csurf {

class CurveGroupEngine;

/// The Mordell-Weil-style group of F_Q-points of a smooth plane cubic under
/// the chord-tangent law with a flex as origin. Structure Z/a x Z/b with
/// a | b and a*b = order (a = 1 for cyclic groups).
struct CurveGroup {
    FFPtr field;
    PlaneCubic curve;    // base-changed to `field`
    CurvePoint origin;   // a flex rational over `field`
    uint64_t order = 0;
    uint64_t inv_a = 1, inv_b = 1;
    std::vector<CurvePoint> generators;  // orders (b) or (b, a)
    std::shared_ptr<CurveGroupEngine> engine;
};

/// Chord-tangent arithmetic plus full enumeration over a desk-sized field.
class CurveGroupEngine {
public:
    /// Enumerates all points; throws EnumerationTooLarge for |F_Q| > 10^6.
    CurveGroupEngine(const PlaneCubic& curve, const CurvePoint& origin);

    const std::vector<CurvePoint>& points() const { return points_; }
    uint64_t order() const { return points_.size(); }

    CurvePoint add(const CurvePoint& P, const CurvePoint& Q) const;
    CurvePoint neg(const CurvePoint& P) const;
    CurvePoint mul(uint64_t n, const CurvePoint& P) const;
    /// Third intersection of the line through P and Q (tangent when P = Q).
    CurvePoint third(const CurvePoint& P, const CurvePoint& Q) const;
    bool on_curve(const CurvePoint& P) const;
    const CurvePoint& origin() const { return origin_; }

    /// Structure data; computed once on demand.
    void compute_structure();
    uint64_t inv_a() const { return a_; }
    uint64_t inv_b() const { return b_; }
    const std::vector<CurvePoint>& generators() const { return gens_; }
    /// Coordinates (i, j) with P = i*g_b + j*g_a (j = 0 when cyclic).
    std::pair<uint64_t, uint64_t> dlog(const CurvePoint& P) const;

private:
    friend struct CurveGroupEngineAccess;
    uint64_t key(const CurvePoint& P) const;
    CurvePoint from_key(uint64_t k) const;

    FFPtr field_;
    PlaneCubic curve_;
    CurvePoint origin_;
    std::vector<CurvePoint> points_;
    bool structured_ = false;
    uint64_t a_ = 1, b_ = 1;
    std::vector<CurvePoint> gens_;
    std::unordered_map<uint64_t, std::pair<uint64_t, uint64_t>> coords_;
    struct Impl;
    std::shared_ptr<Impl> impl_;
};

/// Enumerates the group of F_{q^k}-points with a flex origin (the first flex
/// rational over that field). Throws EnumerationTooLarge above the 10^6 cap
/// and PreconditionError when no flex is rational over the field.
CurveGroup group_structure(const PlaneCubic& c, unsigned ext_degree);

/// The flexes of c that are rational over `field` (a subset of the nine).
std::vector<CurvePoint> flexes_rational_over(const PlaneCubic& c, const FFPtr& field);

/// Points P with 3P = O.
std::vector<CurvePoint> three_torsion(const CurveGroup& G);

/// Subgroup generated by the differences of flexes, with witnesses: each
/// element carries the flex-multiplicity vector that produces it.
struct FlexSubgroup {
    std::vector<CurvePoint> elements;
    std::vector<std::vector<int>> witnesses;  // per element, one int per flex
    std::vector<CurvePoint> flexes;           // the rational flexes used
};

/// Requires all nine flexes rational over G.field; throws PreconditionError
/// listing the missing degrees otherwise.
FlexSubgroup flex_difference_subgroup(const CurveGroup& G);

/// Same subgroup but allowing fewer rational flexes (used by edge-case tests).
FlexSubgroup flex_difference_subgroup_partial(const CurveGroup& G);

}  // namespace csurf
