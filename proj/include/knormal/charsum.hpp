#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "knormal/structure.hpp"

namespace knormal {

// Multiplicative character of order d: eta(g^j) = exp(2*pi*i * index*j / d)
// for the field's canonical generator g; index coprime to d.
struct MultCharacter {
    const ExtensionField* F = nullptr;
    std::uint64_t order_d = 1;
    std::uint64_t index = 0;
};

// Additive character chi_delta(w) = exp(2*pi*i * Tr_{q^n/p}(delta*w) / p).
struct AddCharacter {
    const ExtensionField* F = nullptr;
    FieldElement delta;
};

MultCharacter make_mult_char(const ExtensionField* F, std::uint64_t order_d, std::uint64_t index);
AddCharacter make_add_char(const ExtensionField* F, FieldElement delta);

std::complex<double> eval_mult_char(const MultCharacter& eta, const FieldElement& w);
std::complex<double> eval_add_char(const AddCharacter& chi, const FieldElement& w);

// Sum over the whole field of eta(w) chi(w^2), with eta_1(0) = 1 and
// eta_d(0) = 0 for d > 1.
std::complex<double> gauss_sum_g2(const MultCharacter& eta, const AddCharacter& chi);

// Per-field discrete-log and delta-classification cache. delta_lists is
// indexed parallel to xn1_divisors(): entry j lists the element indices
// delta whose additive character has Frobenius order equal to divisor j.
struct CharCache {
    const ExtensionField* F = nullptr;
    std::vector<std::uint64_t> dlog; // by element index; dlog of 0 unused
    std::vector<std::vector<std::uint64_t>> delta_lists;
};
const CharCache& char_cache(const ExtensionField* F, const Limits& limits = Limits{});

// Character form of the multiplicative (t-free) and additive (D-free)
// indicators against the boolean tests, at every point.
bool char_indicator_cross_check(const ExtensionField* F, const Int& t, const FqPoly& D,
                                double tol = 1e-6);

// Character form of the trace indicator T_{m,beta} against the boolean test.
bool trace_indicator_cross_check(const ExtensionField* F, unsigned m, const FieldElement& beta,
                                 double tol = 1e-6);

// Full character-sum expression for the count of primitive w with
// Tr_{q^n -> q^m}(w^2) = beta (the f = 1 case), evaluated numerically.
double count_expression_f1(const ExtensionField* F, unsigned m, const FieldElement& beta);

} // namespace knormal
