#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include <gmpxx.h>

#include "knormal/errors.hpp"

namespace knormal {

using Int = mpz_class;
using Rat = mpq_class;

// Multiplicity-ordered factorization of a positive integer.
struct IntFactorization {
    std::map<Int, unsigned> factors; // prime -> exponent, ascending by prime

    Int value() const;
    std::vector<Int> primes() const; // distinct primes, ascending
    std::size_t distinct_count() const { return factors.size(); }
};

bool is_probable_prime(const Int& n);

// Trial division through 10^6 followed by Brent's rho with deterministic
// parameters. Inputs wider than cap_bits raise CapExceeded.
IntFactorization factorize(const Int& n, unsigned cap_bits = 128);

// Factorization of p^e - 1 assembled from its cyclotomic pieces Phi_d(p),
// d | e. The cap applies to each piece rather than to the product, so this
// handles values whose total width exceeds cap_bits.
IntFactorization factorize_prime_power_minus_one(const Int& p, unsigned e,
                                                 unsigned cap_bits = 128);

Int euler_phi(const IntFactorization& f);
Int euler_phi(const Int& n, unsigned cap_bits = 128);

// Number of squarefree divisors, 2^(distinct primes).
Int big_w_int(const IntFactorization& f);
Int big_w_int(const Int& n, unsigned cap_bits = 128);

// phi(t)/t as an exact rational.
Rat theta(const IntFactorization& f);
Rat theta(const Int& t, unsigned cap_bits = 128);

// Product of the distinct prime divisors (the radical).
Int squarefree_part(const IntFactorization& f);
Int squarefree_part(const Int& t, unsigned cap_bits = 128);

// c_{t,a} = 2^s / (p_1 ... p_s)^(1/a) over the primes <= 2^a dividing t.
// Evaluated in the log domain; empty product gives 1.0.
double w_bound_constant(const Int& t, unsigned a);

// 3.6 ln(q) + 1.8 ln(u); requires q >= 5, u >= 1.
double ramanujan_bound(const Int& q, unsigned u);

Int pow_int(const Int& base, unsigned exp);

std::vector<Int> sorted_divisors(const IntFactorization& f);

// Unit / zero / (-1)^k Moebius value of a squarefree-tested integer divisor
// set: mu over the divisor lattice of f. Divisor must divide f.value().
int moebius(const Int& d, const IntFactorization& f);

} // namespace knormal
