#pragma once

#include <optional>
#include <vector>

#include <gmpxx.h>

namespace csurf {

using ZVec = std::vector<mpz_class>;

/// Dense integer matrix over GMP integers.
class ZMat {
public:
    ZMat() = default;
    ZMat(size_t rows, size_t cols) : r_(rows), c_(cols), a_(rows * cols, 0) {}
    static ZMat identity(size_t n);

    size_t rows() const { return r_; }
    size_t cols() const { return c_; }
    mpz_class& operator()(size_t i, size_t j) { return a_[i * c_ + j]; }
    const mpz_class& operator()(size_t i, size_t j) const { return a_[i * c_ + j]; }

    ZMat operator*(const ZMat& o) const;
    ZMat operator-(const ZMat& o) const;
    ZMat operator+(const ZMat& o) const;
    bool operator==(const ZMat& o) const { return r_ == o.r_ && c_ == o.c_ && a_ == o.a_; }
    ZMat transpose() const;
    ZVec apply(const ZVec& v) const;  // matrix * column vector
    ZMat scaled(const mpz_class& s) const;

    bool is_identity() const;
    std::string to_string() const;

private:
    size_t r_ = 0, c_ = 0;
    std::vector<mpz_class> a_;
};

/// Exact determinant by fraction-free (Bareiss) elimination.
mpz_class zmat_det(const ZMat& A);

struct SmithForm {
    ZMat U, D, V;  // U * A * V = D, U and V unimodular, d_i | d_{i+1}
};

/// Smith normal form with transform witnesses. Pivoting always picks a
/// minimal-absolute-value nonzero entry to limit coefficient growth.
SmithForm smith_normal_form(const ZMat& A);

/// Basis of { x : A x = 0 } as columns; saturated by construction.
ZMat integer_kernel(const ZMat& A);

/// One integer solution of A x = b, if any.
std::optional<ZVec> solve_integer(const ZMat& A, const ZVec& b);

/// Columnwise solve A X = B, all columns must be solvable.
std::optional<ZMat> solve_integer_matrix(const ZMat& A, const ZMat& B);

/// Elementary divisors (> 1) of the cokernel Z^rows / column-span(A).
/// Requires the quotient to be finite (full row rank); throws otherwise.
std::vector<mpz_class> cokernel_invariants(const ZMat& A);

/// Extends the primitive integer column v to a unimodular matrix whose last
/// column is v.
ZMat complete_to_unimodular_last(const ZVec& v);

/// Inverse of a unimodular matrix (integer entries).
ZMat unimodular_inverse(const ZMat& A);

}  // namespace csurf
