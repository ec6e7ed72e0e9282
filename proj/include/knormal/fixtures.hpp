#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "knormal/errors.hpp"

namespace knormal {

struct PairList {
    std::vector<std::pair<std::uint64_t, unsigned>> pairs; // (q, n)
    std::vector<std::pair<std::uint64_t, unsigned>> expected_search_failures;
};

struct Table1Thresholds {
    // Columns where the condition first holds at q >= q_b (strict-boundary
    // columns) and where it first holds at q = q_b exactly.
    std::vector<std::pair<std::uint64_t, unsigned>> ge_columns;
    std::vector<std::pair<std::uint64_t, unsigned>> eq_columns;
};

struct N2Expectation {
    std::uint64_t q;
    std::string expected; // "AllNormal" | "All1Normal"
};

PairList load_pair_list(const std::string& path);
Table1Thresholds load_table1(const std::string& path);
std::vector<N2Expectation> load_n2_expectations(const std::string& path);

// (p, t) with q = p^t; throws NotPrime when q is not a prime power.
std::pair<std::uint64_t, unsigned> split_prime_power(std::uint64_t q);

} // namespace knormal
