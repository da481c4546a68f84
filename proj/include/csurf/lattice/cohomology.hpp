#pragma once

#include <optional>

#include "csurf/lattice/pic.hpp"

namespace csurf {

/// H^0 data: rank and a basis (columns, ambient coordinates) of the fixed
/// sublattice, saturated in the lattice it lives in.
struct FixedPart {
    size_t rank;
    ZMat basis;  // ambient-coordinates columns
};

/// H^1 (or Tate H^0) of a cyclic action: the list of elementary divisors > 1.
struct CohomologyResult {
    size_t h0_rank = 0;
    ZMat h0_basis;
    std::vector<mpz_class> h1_invariants;

    mpz_class h1_order() const {
        mpz_class o = 1;
        for (const auto& d : h1_invariants) o *= d;
        return o;
    }
};

/// Fixed sublattice ker(g - 1), optionally restricted to a stable sublattice
/// given by basis columns S. Throws PreconditionError if S is not stable.
FixedPart h0(const LatticeAction& action, const std::optional<ZMat>& sublattice = {});

/// First cohomology of the cyclic group generated by the action on the
/// (sub)lattice: ker(Norm) / im(g - 1), computed through Smith normal form.
std::vector<mpz_class> h1_cyclic(const LatticeAction& action,
                                 const std::optional<ZMat>& sublattice = {});

/// Tate H^0 = fixed points modulo norms. By cyclic periodicity this is also
/// the second cohomology of the action on the sublattice.
std::vector<mpz_class> tate_h0_cyclic(const LatticeAction& action, const ZMat& sublattice);

/// Restriction of the action to a stable sublattice (matrix in the basis S).
ZMat restrict_action(const ZMat& generator, const ZMat& S);

}  // namespace csurf
