#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <vector>

#include "knormal/fq.hpp"
#include "knormal/intarith.hpp"

namespace knormal {

// Univariate polynomial over F_q. Coefficients lowest-degree first, no
// trailing zeros; the zero polynomial has an empty coefficient vector.
struct FqPoly {
    std::shared_ptr<const Fq> K;
    std::vector<std::uint64_t> c;

    int deg() const { return static_cast<int>(c.size()) - 1; }
    bool is_zero() const { return c.empty(); }
    bool is_one() const { return c.size() == 1 && c[0] == 1; }
    std::uint64_t leading() const { return c.back(); }
    std::uint64_t coeff(std::size_t i) const { return i < c.size() ? c[i] : 0; }
};

FqPoly make_poly(std::shared_ptr<const Fq> K, std::vector<std::uint64_t> coeffs);
FqPoly poly_zero(std::shared_ptr<const Fq> K);
FqPoly poly_one(std::shared_ptr<const Fq> K);
FqPoly poly_x(std::shared_ptr<const Fq> K);
FqPoly poly_const(std::shared_ptr<const Fq> K, std::uint64_t a);
FqPoly x_pow_minus_one(std::shared_ptr<const Fq> K, unsigned u);

bool poly_eq(const FqPoly& a, const FqPoly& b);

// Canonical order: degree first, then coefficient sequence compared from the
// constant term upward. Total order on polynomials over a fixed field.
bool canonical_less(const FqPoly& a, const FqPoly& b);

FqPoly poly_add(const FqPoly& a, const FqPoly& b);
FqPoly poly_sub(const FqPoly& a, const FqPoly& b);
FqPoly poly_neg(const FqPoly& a);
FqPoly poly_mul(const FqPoly& a, const FqPoly& b);
FqPoly poly_scale(const FqPoly& a, std::uint64_t s);

// Quotient and remainder; divisor must be nonzero.
std::pair<FqPoly, FqPoly> poly_divmod(const FqPoly& a, const FqPoly& b);
FqPoly poly_mod(const FqPoly& a, const FqPoly& b);
bool poly_divides(const FqPoly& d, const FqPoly& a);

FqPoly poly_make_monic(const FqPoly& a);

// Monic gcd; gcd(0, 0) = 0.
FqPoly poly_gcd(const FqPoly& a, const FqPoly& b);

// g = gcd(a, b) monic with g = s*a + t*b.
struct PolyXgcd {
    FqPoly g, s, t;
};
PolyXgcd poly_xgcd(const FqPoly& a, const FqPoly& b);

FqPoly poly_powmod(const FqPoly& base, const Int& e, const FqPoly& mod);
FqPoly poly_derivative(const FqPoly& a);
std::uint64_t poly_eval(const FqPoly& a, std::uint64_t x);

bool is_irreducible(const FqPoly& f);

// First monic irreducible of degree d in canonical order.
FqPoly first_irreducible(std::shared_ptr<const Fq> K, unsigned d);

// Complete factorization into monic irreducibles with multiplicities, keys in
// canonical order. Input must be nonzero; the unit is discarded.
std::vector<std::pair<FqPoly, unsigned>> factor_poly(const FqPoly& f);

// Polynomial Euler function: number of units mod f.
Int poly_phi(const FqPoly& f);

// Moebius value over the divisor lattice: 0 unless squarefree, else (-1)^r.
int poly_mobius(const FqPoly& f);

// Number of monic squarefree divisors, 2^(distinct irreducible factors).
Int big_w_poly(const FqPoly& f);

// Brute-force squarefree divisor count for cross-checks (degree <= 12).
Int big_w_poly_bruteforce(const FqPoly& f);

// All monic divisors of f (including 1 and f), canonically ordered.
std::vector<FqPoly> divisors_of(const FqPoly& f);

// Number of distinct monic irreducible factors of x^u - 1 over F_q by the
// divisor-order formula sum_{d | u} phi(d) / ord_d(q); requires gcd(u, q) = 1.
unsigned count_irreducible_factors_cyclotomic(const Int& q, unsigned u);

// Upper bound for the squarefree-divisor count of x^u - 1 over F_q: smallest
// applicable closed-form case bound, floored at the exact count so the result
// always dominates the true value. q is the field size, p its characteristic.
double w_poly_bounds(const Int& q, const Int& p, unsigned u);

} // namespace knormal
