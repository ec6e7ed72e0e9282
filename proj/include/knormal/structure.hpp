#pragma once

#include "knormal/ffield.hpp"

namespace knormal {

// f(sigma)(w) for the q-power Frobenius sigma: sum a_i w^(q^i).
FieldElement q_associate_apply(const FqPoly& f, const FieldElement& w);

// Minimal monic divisor of x^n - 1 annihilating w under the q-associate
// action, found by scanning divisors in canonical order; fq_order(0) = 1.
FqPoly fq_order(const FieldElement& w);

// n - deg(fq_order(w)); 0 = normal, n only for w = 0.
unsigned k_normality(const FieldElement& w);

// The same value as deg gcd(x^n - 1, g_w) with g_w = sum_i w^(q^i) x^(n-1-i),
// both computed over F_{q^n}.
unsigned k_normality_gcd(const FieldElement& w);

// Multiplicative freeness: no prime rho | t has w in the rho-th powers.
bool is_t_free(const FieldElement& w, const Int& t);

// Additive freeness: gcd(D, (x^n - 1) / fq_order(w)) = 1.
bool is_poly_free(const FieldElement& w, const FqPoly& D);

// w primitive and w^2 in the requested class: k = 0 means w^2 normal,
// k = 1 means fq_order(w^2) = (x^n - 1)/(x - 1). Requires q odd.
bool indicator_2primitive_knormal(const FieldElement& w, unsigned k);

// Right-hand side of the product decomposition for fq_order(w) =
// (x^n - 1)/(x - 1): with n = p^k u, w must be (x^u - 1)/(x - 1)-free and
// Tr_{q^n -> q^{p^k}}(w) must have Frobenius order (x^{p^k} - 1)/(x - 1).
bool decompose_1normal_check(const FieldElement& w);

struct NormalityProfile {
    FieldElement element;
    FqPoly order_poly;
    unsigned k = 0;
};
NormalityProfile normality_profile(const FieldElement& w);

// Number of primitive w in F_{q^n} with w^2 f-free and Tr_{q^n -> q^m}(w^2)
// = beta, by exhaustive enumeration.
Int count_N(const ExtensionField* F, const FqPoly& f, unsigned m, const FieldElement& beta,
            const Limits& limits = Limits{});

// n = p^k u with gcd(u, p) = 1.
std::pair<unsigned, unsigned> split_p_part(std::uint64_t p, unsigned n);

} // namespace knormal
