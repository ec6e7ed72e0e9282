#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "knormal/fixtures.hpp"
#include "knormal/sieve.hpp"
#include "knormal/structure.hpp"

namespace knormal {

enum class SearchStatus { WitnessFound, ExhaustedNoWitness, CapReached };
std::string to_string(SearchStatus s);

struct Witness {
    std::uint64_t q = 0;
    unsigned n = 0;
    unsigned k = 0;
    std::uint64_t exponent = 0; // generator power
    FieldElement element;
    bool order_ok = false;   // mult_order = (q^n - 1)/2
    bool fqorder_ok = false; // k via the minimal-annihilator route
    bool gcd_ok = false;     // k via the gcd route
};

struct SearchOptions {
    Int max_exhaustive = Int(100000000);
    unsigned workers = 4;
    std::uint64_t block_size = 2048;
};

struct SearchResult {
    SearchStatus status = SearchStatus::ExhaustedNoWitness;
    std::optional<Witness> witness;
    std::uint64_t scanned_limit = 0; // highest exponent examined
};

// Ascending exponent scan for g^i with gcd(i, q^n - 1) = 2 and the requested
// normality of the square class; smallest qualifying exponent, deterministic
// under any worker count.
SearchResult find_2primitive_knormal(std::uint64_t p, unsigned t, unsigned n, unsigned k,
                                     const SearchOptions& opts = SearchOptions{});

struct TraceCoverageResult {
    bool success = false;
    std::vector<std::uint64_t> uncovered; // base-field codes never hit
    std::uint64_t last_exponent = 0;      // exponent at which coverage completed
};

// Accumulates Tr_{q^n -> q} over the elements of order (q^n - 1)/2 until all
// q values are covered or the group is exhausted.
TraceCoverageResult trace_coverage(std::uint64_t p, unsigned t, unsigned n,
                                   const SearchOptions& opts = SearchOptions{});

enum class N2Class { AllNormal, All1Normal };
std::string to_string(N2Class c);

// Exhaustive classification of the order-(q^2-1)/2 elements of F_{q^2}.
N2Class classify_n2(std::uint64_t p, unsigned t, const SearchOptions& opts = SearchOptions{});

enum class TableId { S0, Table2, Table1, N2Lemma };
TableId table_id_from_string(const std::string& s);
std::string to_string(TableId id);

struct ReproduceEntry {
    std::uint64_t q = 0;
    unsigned n = 0;
    bool ok = false;
    bool skipped = false;
    std::string detail;
    std::optional<SieveOutcome> sieve_outcome;
    std::optional<SearchStatus> search_status;
    std::optional<Witness> witness;
};

struct ReproduceReport {
    TableId table = TableId::S0;
    bool pass = false;
    unsigned checked = 0, mismatched = 0, skipped = 0;
    std::vector<ReproduceEntry> entries;
};

ReproduceReport reproduce_s0(const PairList& fixture, const SearchOptions& opts);
ReproduceReport reproduce_table2(const PairList& fixture, const SearchOptions& opts);
ReproduceReport reproduce_table1(const Table1Thresholds& fixture);
ReproduceReport reproduce_n2(const std::vector<N2Expectation>& fixture,
                             const SearchOptions& opts);

} // namespace knormal
