#include "csurf/lattice/cohomology.hpp"

#include "csurf/errors.hpp"

namespace csurf {

ZMat restrict_action(const ZMat& generator, const ZMat& S) {
    auto X = solve_integer_matrix(S, generator * S);
    if (!X) throw PreconditionError("sublattice not stable under the action");
    return *X;
}

namespace {

ZMat acting_matrix(const LatticeAction& action, const std::optional<ZMat>& sublattice) {
    if (!sublattice) return action.generator;
    return restrict_action(action.generator, *sublattice);
}

ZMat norm_matrix(const ZMat& g, unsigned order) {
    ZMat N = ZMat::identity(g.rows());
    ZMat P = g;
    for (unsigned i = 1; i < order; ++i) {
        N = N + P;
        P = P * g;
    }
    return N;
}

}  // namespace

FixedPart h0(const LatticeAction& action, const std::optional<ZMat>& sublattice) {
    ZMat g = acting_matrix(action, sublattice);
    ZMat K = integer_kernel(g - ZMat::identity(g.rows()));
    FixedPart out;
    out.rank = K.cols();
    out.basis = sublattice ? (*sublattice) * K : K;
    return out;
}

std::vector<mpz_class> h1_cyclic(const LatticeAction& action,
                                 const std::optional<ZMat>& sublattice) {
    ZMat g = acting_matrix(action, sublattice);
    size_t r = g.rows();
    ZMat N = norm_matrix(g, action.order);
    ZMat K = integer_kernel(N);  // saturated, so the image lands inside
    if (K.cols() == 0) return {};
    ZMat img = g - ZMat::identity(r);
    auto coords = solve_integer_matrix(K, img);
    if (!coords)
        throw Error("h1_cyclic: image of (g-1) not inside ker(Norm) (broken action)");
    // quotient Z^k / column span; finite since H^1 of a finite group is torsion
    return cokernel_invariants(*coords);
}

std::vector<mpz_class> tate_h0_cyclic(const LatticeAction& action, const ZMat& sublattice) {
    ZMat g = restrict_action(action.generator, sublattice);
    size_t r = g.rows();
    ZMat F = integer_kernel(g - ZMat::identity(r));  // fixed part, basis in S-coords
    if (F.cols() == 0) return {};
    ZMat N = norm_matrix(g, action.order);
    auto coords = solve_integer_matrix(F, N);
    if (!coords) throw Error("tate_h0_cyclic: norms not inside the fixed part");
    return cokernel_invariants(*coords);
}

}  // namespace csurf
