#pragma once

#include <array>
#include <vector>

#include "csurf/lattice/snf.hpp"

namespace csurf {

/// The rank-7 divisor-class lattice of a smooth cubic surface in the standard
/// exceptional basis (l; e1..e6) with Gram diag(1,-1,...,-1). The 27 line
/// classes are e_i, l-e_i-e_j, and 2l-(e1+..+e6)+e_i; the hyperplane class is
/// H = 3l - e1 - ... - e6.
struct PicLattice {
    ZMat gram;                             // 7x7
    std::vector<ZVec> lines;               // 27 classes
    ZVec hyperplane;                       // H
    std::vector<std::array<int, 3>> triples;  // 45 coplanar index triples

    /// Intersection number of line classes i and j.
    long pairing(size_t i, size_t j) const;
    /// Intersection form on arbitrary vectors.
    mpz_class form(const ZVec& a, const ZVec& b) const;
    /// Indices of lines meeting line i (pairing 1).
    std::vector<size_t> neighbours(size_t i) const;
    /// 7x27 matrix with the line classes as columns.
    ZMat line_matrix() const;
};

PicLattice build_pic_lattice();

/// A finite cyclic group of isometries, given by one generator that permutes
/// the 27 line classes.
struct LatticeAction {
    ZMat generator;             // 7x7, preserves the Gram matrix
    unsigned order;
    std::vector<int> line_perm;  // generator maps line i to line line_perm[i]
};

/// Builds the action matrix from a permutation of the 27 line indices.
/// Throws PreconditionError naming a violating pair when the permutation does
/// not preserve the intersection pairing, or when no integral matrix extends it.
LatticeAction action_from_line_permutation(const std::vector<int>& perm,
                                           const PicLattice& L);

}  // namespace csurf
