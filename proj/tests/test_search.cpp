#include <doctest.h>

#include <numeric>
#include <string>
#include <vector>

#include "knormal/search.hpp"

using namespace knormal;

namespace {

const std::string kData = KNORMAL_DATA_DIR;

std::vector<std::uint64_t> coords(const Witness& w) { return w.element.coords; }

// Reference scan: every exponent i with gcd(i, q^n - 1) = 2 whose power of the
// generator has the requested normality defect.
std::vector<std::uint64_t> qualifying_exponents(std::uint64_t p, unsigned t, unsigned n,
                                                unsigned k) {
    const ExtensionField* F = ExtensionField::build(p, t, n);
    const std::uint64_t Q = F->group_order_u64();
    const FieldElement& g = F->generator();
    std::vector<std::uint64_t> out;
    FieldElement cur = F->one();
    for (std::uint64_t i = 1; i < Q; ++i) {
        cur = F->mul(cur, g);
        if (std::gcd(i, Q) != 2) continue;
        if (fq_order(cur).deg() == static_cast<int>(n - k)) out.push_back(i);
    }
    return out;
}

} // namespace

TEST_CASE("status and table names round-trip") {
    for (SearchStatus s : {SearchStatus::WitnessFound, SearchStatus::ExhaustedNoWitness,
                           SearchStatus::CapReached})
        CHECK(!to_string(s).empty());
    for (TableId id : {TableId::S0, TableId::Table2, TableId::Table1, TableId::N2Lemma})
        CHECK(table_id_from_string(to_string(id)) == id);
    CHECK_THROWS_AS(table_id_from_string("nope"), PreconditionViolated);
}

TEST_CASE("even characteristic is rejected") {
    CHECK_THROWS_AS(find_2primitive_knormal(2, 1, 4, 0), PreconditionViolated);
    CHECK_THROWS_AS(trace_coverage(2, 1, 3), PreconditionViolated);
    CHECK_THROWS_AS(classify_n2(2, 1), PreconditionViolated);
}

TEST_CASE("smallest witnesses for normal square classes") {
    SearchResult r27 = find_2primitive_knormal(3, 1, 3, 0);
    REQUIRE(r27.status == SearchStatus::WitnessFound);
    CHECK(r27.witness->exponent == 2);
    CHECK(coords(*r27.witness) == std::vector<std::uint64_t>{0, 0, 1});

    SearchResult r125 = find_2primitive_knormal(5, 1, 3, 0);
    REQUIRE(r125.status == SearchStatus::WitnessFound);
    CHECK(r125.witness->exponent == 2);
    CHECK(coords(*r125.witness) == std::vector<std::uint64_t>{4, 4, 1});
}

TEST_CASE("smallest witnesses for one-defect square classes") {
    SearchResult r = find_2primitive_knormal(5, 1, 4, 1);
    REQUIRE(r.status == SearchStatus::WitnessFound);
    CHECK(r.witness->exponent == 22);
    CHECK(coords(*r.witness) == std::vector<std::uint64_t>{3, 2, 0, 0});
    CHECK(r.witness->order_ok);
    CHECK(r.witness->fqorder_ok);
    CHECK(r.witness->gcd_ok);

    SearchResult r5 = find_2primitive_knormal(5, 1, 5, 1);
    REQUIRE(r5.status == SearchStatus::WitnessFound);
    CHECK(r5.witness->exponent == 2);
    CHECK(coords(*r5.witness) == std::vector<std::uint64_t>{4, 4, 1, 0, 0});
}

TEST_CASE("the 80-element group has no normal square of full order") {
    SearchResult r = find_2primitive_knormal(3, 1, 4, 0);
    CHECK(r.status == SearchStatus::ExhaustedNoWitness);
    CHECK(!r.witness.has_value());
    CHECK(r.scanned_limit == 79);
}

TEST_CASE("worker count never changes the reported witness") {
    for (unsigned workers : {1u, 2u, 4u, 8u}) {
        SearchOptions opts;
        opts.workers = workers;
        opts.block_size = 7; // force many blocks
        SearchResult r = find_2primitive_knormal(5, 1, 4, 1, opts);
        REQUIRE(r.status == SearchStatus::WitnessFound);
        CHECK(r.witness->exponent == 22);
    }
}

TEST_CASE("found exponent is the minimum of the full qualifying set") {
    struct Case {
        std::uint64_t p;
        unsigned t, n, k;
    };
    for (const Case& c : {Case{3, 1, 3, 0}, Case{3, 1, 4, 1}, Case{5, 1, 2, 1},
                          Case{3, 2, 2, 0}}) {
        std::vector<std::uint64_t> all = qualifying_exponents(c.p, c.t, c.n, c.k);
        SearchResult r = find_2primitive_knormal(c.p, c.t, c.n, c.k);
        if (all.empty()) {
            CHECK(r.status == SearchStatus::ExhaustedNoWitness);
        } else {
            REQUIRE(r.status == SearchStatus::WitnessFound);
            CHECK(r.witness->exponent == all.front());
        }
        // The scan exponents biject onto the 2-primitive elements with the
        // requested defect, and the square-class indicator census equals that
        // count (restricted to the exact annihilator) times the number of
        // primitive square roots per element: 2 when 4 | q^n - 1, else 1.
        const ExtensionField* F = ExtensionField::build(c.p, c.t, c.n);
        const unsigned roots_per_square = F->group_order_u64() % 4 == 0 ? 2 : 1;
        FqPoly x1 = poly_sub(poly_x(F->fq()), poly_one(F->fq()));
        const FqPoly target = c.k == 0
                                  ? F->xn_minus_one()
                                  : poly_divmod(F->xn_minus_one(), x1).first;
        std::uint64_t indicator = 0, degree_census = 0, exact_census = 0;
        for (Int idx(1); idx < F->card(); ++idx) {
            FieldElement w = F->element_by_index(idx);
            if (indicator_2primitive_knormal(w, c.k)) ++indicator;
            if (!F->is_r_primitive(w, 2)) continue;
            if (static_cast<unsigned>(c.n) - fq_order(w).deg() == c.k) ++degree_census;
            if (poly_eq(fq_order(w), target)) ++exact_census;
        }
        CHECK(all.size() == degree_census);
        CHECK(indicator == roots_per_square * exact_census);
    }
}

TEST_CASE("a low exhaustive cap reports CapReached before any hit") {
    SearchOptions opts;
    opts.max_exhaustive = Int(10);
    SearchResult r = find_2primitive_knormal(5, 1, 4, 1, opts);
    CHECK(r.status == SearchStatus::CapReached);
    CHECK(!r.witness.has_value());
    CHECK(r.scanned_limit == 10);
}

TEST_CASE("oversized groups are refused up front") {
    CHECK_THROWS_AS(find_2primitive_knormal(3, 1, 41, 0), CapExceeded);
}

TEST_CASE("trace coverage completes at the recorded exponents") {
    TraceCoverageResult a = trace_coverage(5, 1, 3);
    CHECK(a.success);
    CHECK(a.uncovered.empty());
    CHECK(a.last_exponent == 42);

    TraceCoverageResult b = trace_coverage(7, 1, 3);
    CHECK(b.success);
    CHECK(b.last_exponent == 116);

    TraceCoverageResult c = trace_coverage(5, 1, 5);
    CHECK(c.success);
    CHECK(c.last_exponent == 58);
}

TEST_CASE("trace coverage over F_9 misses the nonzero traces") {
    TraceCoverageResult r = trace_coverage(3, 1, 2);
    CHECK(!r.success);
    CHECK(r.uncovered == std::vector<std::uint64_t>{1, 2});
    CHECK(r.last_exponent == 7);
}

TEST_CASE("quadratic extensions classify by base field size") {
    CHECK(classify_n2(3, 1) == N2Class::All1Normal);
    const std::vector<std::pair<std::uint64_t, unsigned>> all_normal = {
        {5, 1}, {7, 1}, {3, 2}, {11, 1}, {13, 1}, {5, 2}};
    for (auto [p, t] : all_normal) CHECK(classify_n2(p, t) == N2Class::AllNormal);
    SearchOptions tight;
    tight.max_exhaustive = Int(10);
    CHECK_THROWS_AS(classify_n2(5, 1, tight), CapExceeded);
}

TEST_CASE("pair-list reproduction re-verifies every witness") {
    PairList fixture = load_pair_list(kData + "/s0_pairs.json");
    CHECK(fixture.pairs.size() == 22);
    ReproduceReport rep = reproduce_s0(fixture, SearchOptions{});
    CHECK(rep.pass);
    CHECK(rep.checked == 22);
    CHECK(rep.mismatched == 0);
    CHECK(rep.skipped == 0);

    unsigned found = 0, exhausted = 0;
    for (const ReproduceEntry& e : rep.entries) {
        CHECK(e.ok);
        REQUIRE(e.sieve_outcome.has_value());
        CHECK(*e.sieve_outcome != SieveOutcome::Success);
        if (e.search_status == SearchStatus::WitnessFound) {
            ++found;
            CHECK(e.witness->order_ok);
            CHECK(e.witness->fqorder_ok);
            CHECK(e.witness->gcd_ok);
        } else if (e.search_status == SearchStatus::ExhaustedNoWitness) {
            ++exhausted;
            CHECK(e.q == 3);
            CHECK(e.n == 4);
        }
    }
    CHECK(found == 21);
    CHECK(exhausted == 1);
}

TEST_CASE("threshold grid reproduction holds on every column") {
    Table1Thresholds fixture = load_table1(kData + "/table1_thresholds.json");
    CHECK(fixture.ge_columns.size() + fixture.eq_columns.size() == 11);
    ReproduceReport rep = reproduce_table1(fixture);
    CHECK(rep.pass);
    CHECK(rep.mismatched == 0);
    for (const ReproduceEntry& e : rep.entries) CHECK(e.ok);
}

TEST_CASE("quadratic classification reproduction matches the fixture") {
    auto fixture = load_n2_expectations(kData + "/n2_lemma.json");
    CHECK(fixture.size() == 7);
    ReproduceReport rep = reproduce_n2(fixture, SearchOptions{});
    CHECK(rep.pass);
    CHECK(rep.checked == 7);
}

TEST_CASE("extension-table reproduction verifies a subset quickly") {
    PairList fixture = load_pair_list(kData + "/table2_pairs.json");
    CHECK(fixture.pairs.size() == 283);
    PairList subset;
    for (const auto& pr : fixture.pairs)
        if (pr.first <= 31) subset.pairs.push_back(pr);
    CHECK(subset.pairs.size() >= 8);
    ReproduceReport rep = reproduce_table2(subset, SearchOptions{});
    CHECK(rep.pass);
    CHECK(rep.mismatched == 0);
    for (const ReproduceEntry& e : rep.entries) {
        CHECK(e.ok);
        if (e.search_status == SearchStatus::WitnessFound) CHECK(e.witness->k == 1);
    }
}
