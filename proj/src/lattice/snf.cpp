#include "csurf/lattice/snf.hpp"

#include <algorithm>
#include <sstream>

#include "csurf/errors.hpp"

namespace csurf {

ZMat ZMat::identity(size_t n) {
    ZMat I(n, n);
    for (size_t i = 0; i < n; ++i) I(i, i) = 1;
    return I;
}

ZMat ZMat::operator*(const ZMat& o) const {
    if (c_ != o.r_) throw PreconditionError("ZMat: dimension mismatch in product");
    ZMat out(r_, o.c_);
    for (size_t i = 0; i < r_; ++i)
        for (size_t k = 0; k < c_; ++k) {
            const mpz_class& x = (*this)(i, k);
            if (x == 0) continue;
            for (size_t j = 0; j < o.c_; ++j) out(i, j) += x * o(k, j);
        }
    return out;
}

ZMat ZMat::operator-(const ZMat& o) const {
    if (r_ != o.r_ || c_ != o.c_) throw PreconditionError("ZMat: dimension mismatch");
    ZMat out(r_, c_);
    for (size_t i = 0; i < a_.size(); ++i) out.a_[i] = a_[i] - o.a_[i];
    return out;
}

ZMat ZMat::operator+(const ZMat& o) const {
    if (r_ != o.r_ || c_ != o.c_) throw PreconditionError("ZMat: dimension mismatch");
    ZMat out(r_, c_);
    for (size_t i = 0; i < a_.size(); ++i) out.a_[i] = a_[i] + o.a_[i];
    return out;
}

ZMat ZMat::transpose() const {
    ZMat out(c_, r_);
    for (size_t i = 0; i < r_; ++i)
        for (size_t j = 0; j < c_; ++j) out(j, i) = (*this)(i, j);
    return out;
}

ZVec ZMat::apply(const ZVec& v) const {
    if (v.size() != c_) throw PreconditionError("ZMat::apply: dimension mismatch");
    ZVec out(r_, 0);
    for (size_t i = 0; i < r_; ++i)
        for (size_t j = 0; j < c_; ++j) out[i] += (*this)(i, j) * v[j];
    return out;
}

ZMat ZMat::scaled(const mpz_class& s) const {
    ZMat out(r_, c_);
    for (size_t i = 0; i < a_.size(); ++i) out.a_[i] = a_[i] * s;
    return out;
}

bool ZMat::is_identity() const {
    if (r_ != c_) return false;
    for (size_t i = 0; i < r_; ++i)
        for (size_t j = 0; j < c_; ++j)
            if ((*this)(i, j) != (i == j ? 1 : 0)) return false;
    return true;
}

std::string ZMat::to_string() const {
    std::ostringstream os;
    for (size_t i = 0; i < r_; ++i) {
        os << (i == 0 ? "[" : " ");
        for (size_t j = 0; j < c_; ++j) os << (*this)(i, j).get_str() << (j + 1 < c_ ? " " : "");
        os << (i + 1 < r_ ? ";\n" : "]");
    }
    return os.str();
}

mpz_class zmat_det(const ZMat& A) {
    if (A.rows() != A.cols()) throw PreconditionError("zmat_det: not square");
    size_t n = A.rows();
    if (n == 0) return 1;
    ZMat M = A;
    mpz_class prev = 1;
    int sign = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (M(k, k) == 0) {
            size_t swap = k + 1;
            while (swap < n && M(swap, k) == 0) ++swap;
            if (swap == n) return 0;
            for (size_t j = 0; j < n; ++j) std::swap(M(k, j), M(swap, j));
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i)
            for (size_t j = k + 1; j < n; ++j) {
                mpz_class t = M(i, j) * M(k, k) - M(i, k) * M(k, j);
                mpz_divexact(M(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
        prev = M(k, k);
    }
    return sign * M(n - 1, n - 1);
}

SmithForm smith_normal_form(const ZMat& A) {
    size_t m = A.rows(), n = A.cols();
    SmithForm S{ZMat::identity(m), A, ZMat::identity(n)};
    ZMat& U = S.U;
    ZMat& D = S.D;
    ZMat& V = S.V;

    auto row_swap = [&](size_t a, size_t b) {
        if (a == b) return;
        for (size_t j = 0; j < n; ++j) std::swap(D(a, j), D(b, j));
        for (size_t j = 0; j < m; ++j) std::swap(U(a, j), U(b, j));
    };
    auto col_swap = [&](size_t a, size_t b) {
        if (a == b) return;
        for (size_t i = 0; i < m; ++i) std::swap(D(i, a), D(i, b));
        for (size_t i = 0; i < n; ++i) std::swap(V(i, a), V(i, b));
    };
    auto row_addmul = [&](size_t dst, size_t src, const mpz_class& c) {
        for (size_t j = 0; j < n; ++j) D(dst, j) += c * D(src, j);
        for (size_t j = 0; j < m; ++j) U(dst, j) += c * U(src, j);
    };
    auto col_addmul = [&](size_t dst, size_t src, const mpz_class& c) {
        for (size_t i = 0; i < m; ++i) D(i, dst) += c * D(i, src);
        for (size_t i = 0; i < n; ++i) V(i, dst) += c * V(i, src);
    };
    auto row_negate = [&](size_t a) {
        for (size_t j = 0; j < n; ++j) D(a, j) = -D(a, j);
        for (size_t j = 0; j < m; ++j) U(a, j) = -U(a, j);
    };

    size_t t = 0;
    while (t < m && t < n) {
        // locate minimal-absolute-value nonzero pivot in the trailing block
        size_t pi = t, pj = t;
        bool found = false;
        mpz_class best;
        for (size_t i = t; i < m; ++i)
            for (size_t j = t; j < n; ++j) {
                if (D(i, j) == 0) continue;
                mpz_class a = abs(D(i, j));
                if (!found || a < best) {
                    best = a;
                    pi = i;
                    pj = j;
                    found = true;
                }
            }
        if (!found) break;
        row_swap(t, pi);
        col_swap(t, pj);

        // clear row and column t; restart if a reduction produced a smaller entry
        bool clean = false;
        while (!clean) {
            clean = true;
            for (size_t i = t + 1; i < m; ++i) {
                if (D(i, t) == 0) continue;
                mpz_class q;
                mpz_fdiv_q(q.get_mpz_t(), D(i, t).get_mpz_t(), D(t, t).get_mpz_t());
                row_addmul(i, t, -q);
                if (D(i, t) != 0) {
                    // remainder smaller than pivot; promote it
                    row_swap(t, i);
                    clean = false;
                }
            }
            for (size_t j = t + 1; j < n; ++j) {
                if (D(t, j) == 0) continue;
                mpz_class q;
                mpz_fdiv_q(q.get_mpz_t(), D(t, j).get_mpz_t(), D(t, t).get_mpz_t());
                col_addmul(j, t, -q);
                if (D(t, j) != 0) {
                    col_swap(t, j);
                    clean = false;
                }
            }
        }
        if (D(t, t) < 0) row_negate(t);

        // divisibility: pivot must divide the rest of the block
        bool redo = false;
        for (size_t i = t + 1; i < m && !redo; ++i)
            for (size_t j = t + 1; j < n && !redo; ++j) {
                if (D(i, j) % D(t, t) != 0) {
                    row_addmul(t, i, 1);
                    redo = true;
                }
            }
        if (redo) continue;  // re-run elimination at the same t
        ++t;
    }
    return S;
}

ZMat integer_kernel(const ZMat& A) {
    SmithForm S = smith_normal_form(A);
    size_t n = A.cols();
    size_t rank = 0;
    for (size_t i = 0; i < std::min(S.D.rows(), S.D.cols()); ++i)
        if (S.D(i, i) != 0) ++rank;
    ZMat K(n, n - rank);
    for (size_t j = rank; j < n; ++j)
        for (size_t i = 0; i < n; ++i) K(i, j - rank) = S.V(i, j);
    return K;
}

std::optional<ZVec> solve_integer(const ZMat& A, const ZVec& b) {
    SmithForm S = smith_normal_form(A);
    size_t m = A.rows(), n = A.cols();
    ZVec ub = S.U.apply(b);
    ZVec y(n, 0);
    for (size_t i = 0; i < m; ++i) {
        mpz_class d = (i < n && i < S.D.cols()) ? S.D(i, i) : mpz_class(0);
        if (i < n && d != 0) {
            if (!mpz_divisible_p(ub[i].get_mpz_t(), d.get_mpz_t())) return std::nullopt;
            y[i] = ub[i] / d;
        } else if (ub[i] != 0) {
            return std::nullopt;
        }
    }
    return S.V.apply(y);
}

std::optional<ZMat> solve_integer_matrix(const ZMat& A, const ZMat& B) {
    if (A.rows() != B.rows()) throw PreconditionError("solve_integer_matrix: row mismatch");
    ZMat X(A.cols(), B.cols());
    for (size_t j = 0; j < B.cols(); ++j) {
        ZVec col(B.rows());
        for (size_t i = 0; i < B.rows(); ++i) col[i] = B(i, j);
        auto x = solve_integer(A, col);
        if (!x) return std::nullopt;
        for (size_t i = 0; i < A.cols(); ++i) X(i, j) = (*x)[i];
    }
    return X;
}

std::vector<mpz_class> cokernel_invariants(const ZMat& A) {
    SmithForm S = smith_normal_form(A);
    size_t rank = 0;
    for (size_t i = 0; i < std::min(S.D.rows(), S.D.cols()); ++i)
        if (S.D(i, i) != 0) ++rank;
    if (rank < S.D.rows())
        throw PreconditionError("cokernel_invariants: quotient is infinite");
    std::vector<mpz_class> inv;
    for (size_t i = 0; i < rank; ++i)
        if (S.D(i, i) > 1) inv.push_back(S.D(i, i));
    return inv;
}

ZMat complete_to_unimodular_last(const ZVec& v) {
    size_t n = v.size();
    ZMat col(n, 1);
    for (size_t i = 0; i < n; ++i) col(i, 0) = v[i];
    SmithForm S = smith_normal_form(col);
    if (S.D(0, 0) != 1)
        throw PreconditionError("complete_to_unimodular_last: vector not primitive");
    // U v V = e_0 with V = (+-1), so v = V00 * U^{-1} e_0; move that column last.
    ZMat Uinv = unimodular_inverse(S.U);
    ZMat M(n, n);
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 1; j < n; ++j) M(i, j - 1) = Uinv(i, j);
        M(i, n - 1) = Uinv(i, 0) * S.V(0, 0);
    }
    return M;
}

ZMat unimodular_inverse(const ZMat& A) {
    auto X = solve_integer_matrix(A, ZMat::identity(A.rows()));
    if (!X) throw PreconditionError("unimodular_inverse: matrix not invertible over Z");
    return *X;
}

}  // namespace csurf
