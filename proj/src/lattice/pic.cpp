#include "csurf/lattice/pic.hpp"

#include <sstream>

#include "csurf/errors.hpp"

namespace csurf {

long PicLattice::pairing(size_t i, size_t j) const {
    return long(form(lines[i], lines[j]).get_si());
}

mpz_class PicLattice::form(const ZVec& a, const ZVec& b) const {
    mpz_class s = 0;
    for (size_t i = 0; i < 7; ++i)
        for (size_t j = 0; j < 7; ++j) s += a[i] * gram(i, j) * b[j];
    return s;
}

std::vector<size_t> PicLattice::neighbours(size_t i) const {
    std::vector<size_t> out;
    for (size_t j = 0; j < lines.size(); ++j)
        if (j != i && pairing(i, j) == 1) out.push_back(j);
    return out;
}

ZMat PicLattice::line_matrix() const {
    ZMat M(7, lines.size());
    for (size_t j = 0; j < lines.size(); ++j)
        for (size_t i = 0; i < 7; ++i) M(i, j) = lines[j][i];
    return M;
}

PicLattice build_pic_lattice() {
    PicLattice L;
    L.gram = ZMat(7, 7);
    L.gram(0, 0) = 1;
    for (size_t i = 1; i < 7; ++i) L.gram(i, i) = -1;

    auto vec = [](long l, std::initializer_list<int> es) {
        ZVec v(7, 0);
        v[0] = l;
        size_t i = 1;
        for (int e : es) v[i++] = e;
        return v;
    };

    // E_i = e_i
    for (int i = 0; i < 6; ++i) {
        ZVec v(7, 0);
        v[size_t(i + 1)] = 1;
        L.lines.push_back(v);
    }
    // F_ij = l - e_i - e_j, i < j
    for (int i = 0; i < 6; ++i)
        for (int j = i + 1; j < 6; ++j) {
            ZVec v(7, 0);
            v[0] = 1;
            v[size_t(i + 1)] = -1;
            v[size_t(j + 1)] = -1;
            L.lines.push_back(v);
        }
    // G_i = 2l - sum(e) + e_i
    for (int i = 0; i < 6; ++i) {
        ZVec v = vec(2, {-1, -1, -1, -1, -1, -1});
        v[size_t(i + 1)] += 1;
        L.lines.push_back(v);
    }
    L.hyperplane = vec(3, {-1, -1, -1, -1, -1, -1});

    // coplanar triples: pairwise-meeting triples summing to H
    for (size_t i = 0; i < 27; ++i)
        for (size_t j = i + 1; j < 27; ++j) {
            if (L.pairing(i, j) != 1) continue;
            for (size_t k = j + 1; k < 27; ++k) {
                if (L.pairing(i, k) != 1 || L.pairing(j, k) != 1) continue;
                ZVec s(7, 0);
                for (size_t t = 0; t < 7; ++t)
                    s[t] = L.lines[i][t] + L.lines[j][t] + L.lines[k][t];
                if (s == L.hyperplane) L.triples.push_back({int(i), int(j), int(k)});
            }
        }
    if (L.triples.size() != 45) throw Error("PicLattice: triple enumeration failed");
    return L;
}

LatticeAction action_from_line_permutation(const std::vector<int>& perm,
                                           const PicLattice& L) {
    if (perm.size() != 27) throw PreconditionError("permutation must have 27 entries");
    std::vector<bool> seen(27, false);
    for (int x : perm) {
        if (x < 0 || x >= 27 || seen[size_t(x)])
            throw PreconditionError("not a permutation of 0..26");
        seen[size_t(x)] = true;
    }
    for (size_t i = 0; i < 27; ++i)
        for (size_t j = i + 1; j < 27; ++j) {
            if (L.pairing(i, j) != L.pairing(size_t(perm[i]), size_t(perm[j]))) {
                std::ostringstream os;
                os << "pairing not preserved at line pair (" << i << ", " << j << ")";
                throw PreconditionError(os.str());
            }
        }

    // Lines 0..5 (e_i) and 6 (l - e_1 - e_2) form a unimodular basis.
    std::array<size_t, 7> basis = {0, 1, 2, 3, 4, 5, 6};
    ZMat B(7, 7), T(7, 7);
    for (size_t j = 0; j < 7; ++j)
        for (size_t i = 0; i < 7; ++i) {
            B(i, j) = L.lines[basis[j]][i];
            T(i, j) = L.lines[size_t(perm[basis[j]])][i];
        }
    ZMat Binv = unimodular_inverse(B);
    ZMat A = T * Binv;

    for (size_t i = 0; i < 27; ++i) {
        ZVec img = A.apply(L.lines[i]);
        if (img != L.lines[size_t(perm[i])])
            throw PreconditionError("no consistent matrix extends the permutation");
    }
    ZMat G = L.gram;
    if (!(A.transpose() * G * A == G))
        throw PreconditionError("permutation matrix does not preserve the Gram form");

    LatticeAction act;
    act.generator = A;
    act.line_perm = perm;
    ZMat P = A;
    unsigned n = 1;
    while (!P.is_identity()) {
        P = P * A;
        ++n;
        if (n > 1000) throw Error("action order exceeds bound (not finite?)");
    }
    act.order = n;
    return act;
}

}  // namespace csurf
