#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "csurf/errors.hpp"

namespace csurf {

/// Exponent tuples of all monomials of a given total degree in n variables,
/// in a fixed deterministic order shared by every form of that shape.
class MonomialTable {
public:
    static const MonomialTable& get(unsigned nvars, unsigned degree);

    unsigned nvars() const { return n_; }
    unsigned degree() const { return d_; }
    size_t size() const { return exps_.size(); }
    const std::array<uint8_t, 4>& exponents(size_t i) const { return exps_[i]; }
    size_t index(const std::array<uint8_t, 4>& e) const {
        auto it = index_.find(e);
        if (it == index_.end()) throw PreconditionError("MonomialTable: bad exponent tuple");
        return it->second;
    }

private:
    MonomialTable(unsigned nvars, unsigned degree) : n_(nvars), d_(degree) {
        if (nvars < 1 || nvars > 4) throw PreconditionError("MonomialTable: 1..4 variables");
        // lexicographically descending exponent tuples of total degree d
        std::array<uint8_t, 4> e{};
        enumerate(0, degree, e);
        for (size_t i = 0; i < exps_.size(); ++i) index_[exps_[i]] = i;
    }
    void enumerate(unsigned v, unsigned rem, std::array<uint8_t, 4>& e) {
        if (v + 1 == n_) {
            e[v] = uint8_t(rem);
            exps_.push_back(e);
            e[v] = 0;
            return;
        }
        for (int k = int(rem); k >= 0; --k) {
            e[v] = uint8_t(k);
            enumerate(v + 1, rem - unsigned(k), e);
        }
        e[v] = 0;
    }
    unsigned n_, d_;
    std::vector<std::array<uint8_t, 4>> exps_;
    std::map<std::array<uint8_t, 4>, size_t> index_;
};

inline const MonomialTable& MonomialTable::get(unsigned nvars, unsigned degree) {
    static std::mutex mu;
    static std::map<std::pair<unsigned, unsigned>, std::unique_ptr<MonomialTable>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(nvars, degree);
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache.emplace(key, std::unique_ptr<MonomialTable>(new MonomialTable(nvars, degree)))
                 .first;
    return *it->second;
}

template <class R>
R ring_zero(const R& sample) {
    R z = sample;
    z -= sample;
    return z;
}

template <class R>
R ring_mul_small(const R& x, int64_t n) {
    if constexpr (requires { x.mul_small(n); }) {
        return x.mul_small(n);
    } else {
        return x * static_cast<long>(n);
    }
}

/// Dense homogeneous form of fixed degree over a commutative ring R.
/// R must provide +, -, *, unary -, == where used. A cubic form in 4
/// variables stores its 20 coefficients in MonomialTable order.
template <class R>
class HForm {
public:
    HForm() = default;
    HForm(unsigned nvars, unsigned degree, const R& zero)
        : n_(nvars), d_(degree), c_(MonomialTable::get(nvars, degree).size(), zero) {}

    unsigned nvars() const { return n_; }
    unsigned degree() const { return d_; }
    const MonomialTable& table() const { return MonomialTable::get(n_, d_); }
    const std::vector<R>& coeffs() const { return c_; }

    const R& coeff(const std::array<uint8_t, 4>& e) const { return c_[table().index(e)]; }
    const R& coeff_at(size_t i) const { return c_[i]; }
    void set_coeff(const std::array<uint8_t, 4>& e, R v) { c_[table().index(e)] = std::move(v); }
    void add_coeff(const std::array<uint8_t, 4>& e, const R& v) { c_[table().index(e)] += v; }
    void set_coeff_at(size_t i, R v) { c_[i] = std::move(v); }

    bool is_zero() const {
        R z = zero_sample();
        for (const auto& x : c_)
            if (!(x == z)) return false;
        return true;
    }

    R zero_sample() const { return ring_zero(c_.at(0)); }

    HForm operator+(const HForm& o) const {
        HForm r = *this;
        for (size_t i = 0; i < c_.size(); ++i) r.c_[i] += o.c_[i];
        return r;
    }
    HForm operator-(const HForm& o) const {
        HForm r = *this;
        for (size_t i = 0; i < c_.size(); ++i) r.c_[i] -= o.c_[i];
        return r;
    }
    bool operator==(const HForm& o) const {
        return n_ == o.n_ && d_ == o.d_ && c_ == o.c_;
    }

    HForm operator*(const HForm& o) const {
        if (n_ != o.n_) throw PreconditionError("HForm: variable count mismatch");
        HForm r(n_, d_ + o.d_, zero_sample());
        const auto& ta = table();
        const auto& tb = o.table();
        for (size_t i = 0; i < c_.size(); ++i) {
            for (size_t j = 0; j < o.c_.size(); ++j) {
                std::array<uint8_t, 4> e{};
                for (unsigned v = 0; v < 4; ++v)
                    e[v] = uint8_t(ta.exponents(i)[v] + tb.exponents(j)[v]);
                r.add_coeff(e, c_[i] * o.c_[j]);
            }
        }
        return r;
    }

    HForm scale(const R& s) const {
        HForm r = *this;
        for (auto& x : r.c_) x = x * s;
        return r;
    }

    R eval(const std::vector<R>& point) const {
        if (point.size() != n_) throw PreconditionError("HForm::eval: wrong point size");
        R acc = zero_sample();
        for (size_t i = 0; i < c_.size(); ++i) {
            R term = c_[i];
            const auto& e = table().exponents(i);
            for (unsigned v = 0; v < n_; ++v)
                for (unsigned k = 0; k < e[v]; ++k) term = term * point[v];
            acc += term;
        }
        return acc;
    }

    /// Formal partial derivative with respect to variable v (degree drops by 1).
    HForm partial(unsigned v) const {
        if (d_ == 0) throw PreconditionError("HForm::partial of a constant");
        HForm r(n_, d_ - 1, zero_sample());
        for (size_t i = 0; i < c_.size(); ++i) {
            const auto& e = table().exponents(i);
            if (e[v] == 0) continue;
            std::array<uint8_t, 4> f = e;
            f[v] = uint8_t(f[v] - 1);
            r.add_coeff(f, ring_mul_small(c_[i], int64_t(e[v])));
        }
        return r;
    }

    /// Substitution x_i -> sum_j M[i][j] y_j; result(y) = this(M y).
    HForm substitute(const std::vector<std::vector<R>>& M) const {
        if (M.size() != n_) throw PreconditionError("HForm::substitute: matrix size");
        R z = zero_sample();
        HForm r(n_, d_, z);
        for (size_t i = 0; i < c_.size(); ++i) {
            if (c_[i] == z) continue;
            const auto& e = table().exponents(i);
            // product of linear forms M[v] taken e[v] times
            HForm acc(n_, 0, z);
            acc.set_coeff_at(0, c_[i]);
            for (unsigned v = 0; v < n_; ++v) {
                for (unsigned k = 0; k < e[v]; ++k) {
                    HForm lin(n_, 1, z);
                    for (unsigned j = 0; j < n_; ++j) {
                        std::array<uint8_t, 4> ej{};
                        ej[j] = 1;
                        lin.set_coeff(ej, M[v][j]);
                    }
                    acc = acc * lin;
                }
            }
            for (size_t t = 0; t < r.c_.size(); ++t) r.c_[t] += acc.c_[t];
        }
        return r;
    }

    /// Coefficientwise ring map; Fn: R -> S.
    template <class S, class Fn>
    HForm<S> map_coeffs(const S& zero, Fn&& fn) const {
        HForm<S> r(n_, d_, zero);
        for (size_t i = 0; i < c_.size(); ++i) r.set_coeff_at(i, fn(c_[i]));
        return r;
    }

private:
    template <class S>
    friend class HForm;
    unsigned n_ = 0, d_ = 0;
    std::vector<R> c_;
};

/// form_substitute: named wrapper for the linear change of variables.
template <class R>
HForm<R> form_substitute(const HForm<R>& F, const std::vector<std::vector<R>>& M) {
    return F.substitute(M);
}

/// Determinant of a small matrix of forms by Laplace expansion with subset
/// memoization (used for Hessians and Sylvester resultants).
template <class R>
HForm<R> form_matrix_det(const std::vector<std::vector<HForm<R>>>& A) {
    size_t n = A.size();
    for (const auto& row : A)
        if (row.size() != n) throw PreconditionError("form_matrix_det: not square");
    R z = A[0][0].zero_sample();
    unsigned nv = A[0][0].nvars();
    // memo[S] = det of the minor on the last popcount(S) rows and columns S
    std::vector<HForm<R>> memo(size_t(1) << n);
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        unsigned m = unsigned(__builtin_popcount(mask));
        size_t row = n - m;
        HForm<R> acc;
        bool first = true;
        int sign = 1;
        for (size_t col = 0; col < n; ++col) {
            if (!(mask & (1u << col))) continue;
            unsigned sub = mask & ~(1u << col);
            HForm<R> term = (m == 1) ? A[row][col] : A[row][col] * memo[sub];
            if (sign < 0) term = HForm<R>(nv, term.degree(), z) - term;
            acc = first ? term : acc + term;
            first = false;
            sign = -sign;
        }
        memo[mask] = acc;
    }
    return memo[(size_t(1) << n) - 1];
}

}  // namespace csurf
