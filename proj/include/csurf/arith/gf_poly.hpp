#pragma once

#include <optional>
#include <vector>

#include "csurf/arith/gf.hpp"
#include "csurf/arith/rng.hpp"

namespace csurf {

/// Dense univariate polynomial over a finite field, constant term first.
class GFPoly {
public:
    GFPoly() = default;
    GFPoly(FFPtr field, std::vector<FFElem> coeffs);
    static GFPoly zero(const FFPtr& field);
    static GFPoly one(const FFPtr& field);
    static GFPoly x(const FFPtr& field);
    static GFPoly from_coeffs(const FFPtr& field, std::initializer_list<int64_t> c);

    const FFPtr& field() const { return field_; }
    int degree() const { return int(c_.size()) - 1; }  // -1 for zero
    bool is_zero() const { return c_.empty(); }
    FFElem coeff(int i) const;  // zero outside the stored range
    const std::vector<FFElem>& coeffs() const { return c_; }
    const FFElem& leading() const;

    GFPoly operator+(const GFPoly& o) const;
    GFPoly operator-(const GFPoly& o) const;
    GFPoly operator*(const GFPoly& o) const;
    GFPoly operator*(const FFElem& s) const;
    bool operator==(const GFPoly& o) const { return c_ == o.c_; }

    /// Quotient and remainder by a nonzero divisor.
    std::pair<GFPoly, GFPoly> divmod(const GFPoly& d) const;
    GFPoly mod(const GFPoly& d) const { return divmod(d).second; }

    GFPoly monic() const;
    GFPoly derivative() const;
    FFElem eval(const FFElem& x) const;
    GFPoly pow_mod(const mpz_class& e, const GFPoly& m) const;
    /// Apply a coefficient-wise map (e.g. Frobenius).
    template <class Fn>
    GFPoly map_coeffs(Fn&& fn) const {
        std::vector<FFElem> r;
        r.reserve(c_.size());
        for (const auto& a : c_) r.push_back(fn(a));
        return GFPoly(field_, std::move(r));
    }

    std::string to_string() const;

private:
    void trim();
    FFPtr field_;
    std::vector<FFElem> c_;
};

GFPoly gf_gcd(GFPoly a, GFPoly b);

/// Irreducible factorization over F_q. Returns monic factors with
/// multiplicities, sorted deterministically; the product times the returned
/// unit equals the input. Squarefree split, then distinct-degree, then
/// equal-degree splitting with the seeded generator.
struct FFFactorization {
    FFElem unit;
    std::vector<std::pair<GFPoly, unsigned>> factors;
};
FFFactorization ff_factor(const GFPoly& f, uint64_t seed = 0x5eed);

/// Roots of f in its own coefficient field, each listed once.
std::vector<FFElem> gf_roots(const GFPoly& f, uint64_t seed = 0x5eed);

/// Brute-force root scan; requires the field to fit in 64 bits and be of
/// desk size. Used as an independent oracle against gf_roots.
std::vector<FFElem> gf_roots_exhaustive(const GFPoly& f);

bool gf_poly_irreducible(const GFPoly& f);

/// Embedding F_{p^d} -> F_{p^e} for d | e, sending the generator to the
/// deterministic first root of the small modulus in the big field. Embeddings
/// out of the prime field are canonical; composites over larger bases are a
/// fixed choice, cached per field pair.
FFElem embed(const FFElem& x, const FFPtr& big);

/// Inverse of embed on its image: expresses x in the small field if it lies
/// in the embedded copy, via F_p-linear algebra.
std::optional<FFElem> descend(const FFElem& x, const FFPtr& small);

}  // namespace csurf
