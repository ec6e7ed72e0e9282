#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "knormal/intarith.hpp"

namespace knormal {

enum class SieveMode { Normal0, OneNormal, CubicOneNormal, TraceCoverage };
enum class SieveOutcome { Success, FailDeltaNonpositive, FailNoMorePrimes };

std::string to_string(SieveMode mode);
std::string to_string(SieveOutcome outcome);
SieveMode sieve_mode_from_string(const std::string& s);

// One evaluation state of the peeling sieve. The decision itself is taken in
// exact rational arithmetic (comparing q^e against rhs^2); lhs and rhs are
// informational doubles, rhs rounded up so Success implies a true margin.
struct SieveReport {
    std::uint64_t q = 0;
    unsigned n = 0;
    SieveMode mode = SieveMode::Normal0;
    SieveOutcome outcome = SieveOutcome::FailNoMorePrimes;
    std::vector<Int> sieving_primes; // in peel order, largest first
    unsigned s = 0;                  // number of sieved primes
    unsigned m = 0;                  // distinct primes of q^n - 1
    Rat delta{1};                    // 1 - sum 1/p over sieved primes
    Rat multiplier{1};               // (s-1)/delta + 2
    long exponent_e = 0;             // lhs = q^(e/2)
    double lhs = 0.0;
    double rhs = 0.0;
    Int w_q0{1};      // 2^(m-s)
    Int w_poly{1};    // exact squarefree divisor count of x^u - 1 (1 when unused)
};

// Mode inequality with s = 0, delta = 1, exact divisor counts.
SieveReport base_inequality(std::uint64_t p, unsigned t, unsigned n, SieveMode mode,
                            unsigned factor_cap_bits = 128);

// Peel-from-largest sieve; stops at Success, delta <= 0, or prime exhaustion.
SieveReport run_sieve(std::uint64_t p, unsigned t, unsigned n, SieveMode mode,
                      unsigned factor_cap_bits = 128);

enum class WIntBound { Exact, C4, C8 };
enum class WPolyBound { Exact, Generic, Q5, Q3 };

// Screening inequality with estimated divisor-count bounds in place of the
// exact values; q is the plain field size (need not be checked for prime
// power-ness), p its characteristic for the n = p^k u decomposition.
bool evaluate_bound_based_condition(const Int& q, const Int& p, unsigned n, SieveMode mode,
                                    WIntBound w_int, WPolyBound w_poly);

struct CaseNpReport {
    Int q;
    unsigned n = 0;
    bool inequality_holds = false; // the displayed inequality evaluates true
    bool existence_follows = false; // i.e. the inequality is violated
    double lhs = 0.0;
    double rhs = 0.0;
    Int w_value{1};
};

enum class NpMode { NEqualsP, NEquals2P };

// Exact evaluation of the two n = p / n = 2p conditions; existence of the
// target element follows when the displayed inequality fails.
CaseNpReport case_np_analysis(std::uint64_t p, unsigned t, NpMode mode,
                              unsigned factor_cap_bits = 128);

// q^(n - n/p) > 2 q^(n/2) W(q^n - 1), exactly; requires n = p^k u with
// k >= 2 and p >= 5.
bool cor_2trace_condition(std::uint64_t p, unsigned t, unsigned n,
                          unsigned factor_cap_bits = 128);

} // namespace knormal
