#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "knormal/fqpoly.hpp"

using namespace knormal;

namespace {

std::shared_ptr<const Fq> F3() { return Fq::make(3, 1); }
std::shared_ptr<const Fq> F5() { return Fq::make(5, 1); }
std::shared_ptr<const Fq> F9() { return Fq::make(3, 2); }

FqPoly P(std::shared_ptr<const Fq> K, std::vector<std::uint64_t> c) {
    return make_poly(std::move(K), std::move(c));
}

} // namespace

TEST_CASE("construction normalizes and range-checks") {
    auto K = F3();
    FqPoly f = P(K, {1, 2, 0, 0});
    CHECK(f.deg() == 1);
    CHECK(f.c == std::vector<std::uint64_t>{1, 2});
    CHECK(poly_zero(K).is_zero());
    CHECK(poly_one(K).is_one());
    CHECK(poly_x(K).deg() == 1);
    CHECK_THROWS_AS(P(K, {3}), PreconditionViolated);
    FqPoly xu = x_pow_minus_one(K, 4);
    CHECK(xu.c == std::vector<std::uint64_t>{2, 0, 0, 0, 1});
}

TEST_CASE("canonical order is degree first, then constant-upward") {
    auto K = F3();
    CHECK(canonical_less(P(K, {2}), P(K, {0, 1})));          // deg 0 < deg 1
    CHECK(canonical_less(P(K, {0, 1}), P(K, {1, 1})));        // x < x+1
    CHECK(canonical_less(P(K, {1, 1}), P(K, {2, 1})));        // x+1 < x+2
    CHECK(canonical_less(P(K, {0, 0, 1}), P(K, {1, 0, 1})));  // x^2 < x^2+1
    CHECK(!canonical_less(P(K, {1, 0, 1}), P(K, {1, 0, 1})));
    // Constant term dominates the within-degree comparison.
    CHECK(canonical_less(P(K, {0, 2, 1}), P(K, {1, 0, 1})));
}

TEST_CASE("ring operations satisfy division round-trips") {
    auto K = F5();
    FqPoly a = P(K, {3, 1, 4, 1});
    FqPoly b = P(K, {2, 3, 1});
    auto [quot, rem] = poly_divmod(a, b);
    CHECK(poly_eq(poly_add(poly_mul(quot, b), rem), a));
    CHECK(rem.deg() < b.deg());
    CHECK(poly_eq(poly_mod(a, b), rem));
    CHECK(poly_divides(b, poly_mul(b, a)));
    CHECK(!poly_divides(b, poly_add(poly_mul(b, a), poly_one(K))));
    CHECK_THROWS_AS(poly_divmod(a, poly_zero(K)), ZeroElement);

    FqPoly s = poly_sub(a, a);
    CHECK(s.is_zero());
    CHECK(poly_eq(poly_neg(poly_neg(a)), a));
    CHECK(poly_eq(poly_scale(a, 2), poly_add(a, a)));
}

TEST_CASE("gcd and extended gcd") {
    auto K = F3();
    FqPoly f = poly_mul(P(K, {1, 1}), P(K, {2, 1}));   // (x+1)(x+2) = x^2 - 1
    FqPoly g = poly_mul(P(K, {1, 1}), P(K, {0, 1}));   // x(x+1)
    FqPoly d = poly_gcd(f, g);
    CHECK(poly_eq(d, P(K, {1, 1})));
    CHECK(poly_gcd(poly_zero(K), poly_zero(K)).is_zero());
    CHECK(poly_eq(poly_gcd(f, poly_zero(K)), poly_make_monic(f)));

    PolyXgcd x = poly_xgcd(f, g);
    CHECK(poly_eq(x.g, d));
    CHECK(poly_eq(poly_add(poly_mul(x.s, f), poly_mul(x.t, g)), d));
}

TEST_CASE("powmod against repeated multiplication") {
    auto K = F5();
    FqPoly mod = P(K, {2, 0, 1});
    FqPoly base = P(K, {1, 1});
    FqPoly acc = poly_one(K);
    for (int i = 0; i < 37; ++i) acc = poly_mod(poly_mul(acc, base), mod);
    CHECK(poly_eq(poly_powmod(base, Int(37), mod), acc));
    CHECK(poly_powmod(base, Int(0), mod).is_one());
}

TEST_CASE("derivative and evaluation") {
    auto K = F3();
    FqPoly f = P(K, {1, 0, 0, 1}); // x^3 + 1: derivative vanishes in char 3
    CHECK(poly_derivative(f).is_zero());
    FqPoly g = P(K, {1, 2, 1});
    CHECK(poly_eq(poly_derivative(g), P(K, {2, 2})));
    CHECK(poly_eval(g, 0) == 1);
    CHECK(poly_eval(g, 1) == 1);
    CHECK(poly_eval(g, 2) == 0);
}

TEST_CASE("irreducibility and the first canonical irreducible") {
    auto K3 = F3();
    CHECK(is_irreducible(P(K3, {1, 0, 1})));  // x^2 + 1 over F_3
    CHECK(!is_irreducible(P(K3, {2, 0, 1}))); // x^2 - 1
    CHECK(is_irreducible(P(K3, {0, 1})));     // x

    CHECK(first_irreducible(K3, 2).c == std::vector<std::uint64_t>{1, 0, 1});
    CHECK(first_irreducible(F5(), 3).c == std::vector<std::uint64_t>{1, 0, 1, 1});
    CHECK(first_irreducible(K3, 3).c == std::vector<std::uint64_t>{1, 0, 2, 1});
    CHECK(first_irreducible(K3, 4).c == std::vector<std::uint64_t>{1, 0, 1, 1, 1});
    CHECK(first_irreducible(K3, 1).c == std::vector<std::uint64_t>{0, 1});
}

TEST_CASE("factorization rebuilds the input and sorts factors canonically") {
    auto K = F3();
    auto check_roundtrip = [](const FqPoly& f) {
        auto factors = factor_poly(f);
        FqPoly prod = poly_one(f.K);
        for (const auto& [g, e] : factors) {
            CHECK(is_irreducible(g));
            CHECK(g.leading() == 1);
            for (unsigned i = 0; i < e; ++i) prod = poly_mul(prod, g);
        }
        CHECK(poly_eq(prod, poly_make_monic(f)));
        CHECK(std::is_sorted(factors.begin(), factors.end(),
                             [](const auto& a, const auto& b) {
                                 return canonical_less(a.first, b.first);
                             }));
    };
    check_roundtrip(x_pow_minus_one(K, 8));
    check_roundtrip(x_pow_minus_one(K, 9));  // (x - 1)^9: pure p-th power
    check_roundtrip(x_pow_minus_one(K, 12)); // mixed multiplicity
    check_roundtrip(P(K, {2, 1, 0, 2, 1}));
    check_roundtrip(x_pow_minus_one(F5(), 24));
    check_roundtrip(x_pow_minus_one(F9(), 10));

    auto f9 = factor_poly(x_pow_minus_one(K, 9));
    REQUIRE(f9.size() == 1);
    CHECK(f9[0].second == 9);
    CHECK(f9[0].first.c == std::vector<std::uint64_t>{2, 1});
}

TEST_CASE("divisor lattice of x^2 - 1 over F_3") {
    auto K = F3();
    std::vector<FqPoly> div = divisors_of(x_pow_minus_one(K, 2));
    REQUIRE(div.size() == 4);
    CHECK(div[0].c == std::vector<std::uint64_t>{1});
    CHECK(div[1].c == std::vector<std::uint64_t>{1, 1});
    CHECK(div[2].c == std::vector<std::uint64_t>{2, 1});
    CHECK(div[3].c == std::vector<std::uint64_t>{2, 0, 1});
    CHECK_THROWS_AS(divisors_of(P(K, {2, 2})), PreconditionViolated);
}

TEST_CASE("unit counts: multiplicativity and the full-lattice sum") {
    auto K = F3();
    CHECK(poly_phi(P(K, {1, 1})) == 2);
    CHECK(poly_phi(x_pow_minus_one(K, 2)) == 4);
    CHECK(poly_phi(poly_one(K)) == 1);
    for (std::uint64_t p : {3ull, 5ull, 7ull}) {
        auto Kp = Fq::make(p, 1);
        for (unsigned d = 1; d <= 8; ++d) {
            if (d % p == 0) continue;
            FqPoly f = x_pow_minus_one(Kp, d);
            Int sum = 0;
            for (const auto& g : divisors_of(f)) sum += poly_phi(g);
            CHECK(sum == pow_int(Int(static_cast<unsigned long>(p)), d));
        }
    }
}

TEST_CASE("moebius and squarefree divisor counts") {
    auto K = F3();
    CHECK(poly_mobius(poly_one(K)) == 1);
    CHECK(poly_mobius(P(K, {1, 1})) == -1);
    CHECK(poly_mobius(x_pow_minus_one(K, 2)) == 1);
    CHECK(poly_mobius(poly_mul(P(K, {1, 1}), P(K, {1, 1}))) == 0);

    for (unsigned u : {1u, 2u, 4u, 5u, 8u}) {
        FqPoly f = x_pow_minus_one(K, u);
        CHECK(big_w_poly(f) == big_w_poly_bruteforce(f));
    }
    FqPoly g = poly_mul(x_pow_minus_one(K, 2), P(K, {0, 1}));
    CHECK(big_w_poly(g) == big_w_poly_bruteforce(g));
}

TEST_CASE("cyclotomic factor counts by the order formula") {
    CHECK(count_irreducible_factors_cyclotomic(Int(3), 4) == 3);
    CHECK(count_irreducible_factors_cyclotomic(Int(5), 2) == 2);
    CHECK(count_irreducible_factors_cyclotomic(Int(3), 1) == 1);
    CHECK(count_irreducible_factors_cyclotomic(Int(7), 1) == 1);
    CHECK_THROWS_AS(count_irreducible_factors_cyclotomic(Int(3), 6), PreconditionViolated);

    // Formula versus an actual factorization, across field sizes.
    struct Case { std::uint64_t p; unsigned t; };
    for (Case c : {Case{3, 1}, Case{5, 1}, Case{7, 1}, Case{3, 2}, Case{5, 2}}) {
        auto K = Fq::make(c.p, c.t);
        Int q(static_cast<unsigned long>(K->q()));
        for (unsigned u = 1; u <= 40; ++u) {
            if (u % c.p == 0) continue;
            if (u > 12 && c.t > 1) continue;
            unsigned predicted = count_irreducible_factors_cyclotomic(q, u);
            CHECK(factor_poly(x_pow_minus_one(K, u)).size() == predicted);
        }
    }
}

TEST_CASE("squarefree-count case bounds never undercut the exact count") {
    CHECK(w_poly_bounds(Int(3), Int(3), 5) == doctest::Approx(4.0));
    CHECK(w_poly_bounds(Int(5), Int(5), 3) == doctest::Approx(8.0));
    CHECK_THROWS_AS(w_poly_bounds(Int(3), Int(3), 6), PreconditionViolated);
    for (unsigned u = 1; u <= 30; ++u) {
        for (std::uint64_t qv : {3ull, 5ull, 7ull, 9ull}) {
            std::uint64_t pv = qv == 9 ? 3 : qv;
            if (u % pv == 0) continue;
            double bound = w_poly_bounds(Int(static_cast<unsigned long>(qv)),
                                         Int(static_cast<unsigned long>(pv)), u);
            double exact =
                std::exp2(double(count_irreducible_factors_cyclotomic(
                    Int(static_cast<unsigned long>(qv)), u)));
            CHECK(bound >= exact * (1 - 1e-9));
        }
    }
}
