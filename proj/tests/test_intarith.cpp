#include <doctest.h>

#include <cmath>

#include "knormal/intarith.hpp"

using namespace knormal;

namespace {

// Reference divisor walk used to cross-check the closed forms.
Int brute_squarefree_divisors(long n) {
    Int count = 0;
    for (long d = 1; d <= n; ++d) {
        if (n % d != 0) continue;
        bool squarefree = true;
        for (long p = 2; p * p <= d; ++p)
            if (d % (p * p) == 0) {
                squarefree = false;
                break;
            }
        if (squarefree) ++count;
    }
    return count;
}

} // namespace

TEST_CASE("factorize recovers prime powers and mixed composites") {
    IntFactorization f80 = factorize(Int(80));
    CHECK(f80.factors == std::map<Int, unsigned>{{Int(2), 4}, {Int(5), 1}});
    CHECK(f80.value() == 80);

    IntFactorization f3124 = factorize(Int(3124));
    CHECK(f3124.factors == std::map<Int, unsigned>{{Int(2), 2}, {Int(11), 1}, {Int(71), 1}});

    CHECK(factorize(Int(2)).factors == std::map<Int, unsigned>{{Int(2), 1}});
    CHECK_THROWS_AS(factorize(Int(1)), PreconditionViolated);
    CHECK_THROWS_AS(factorize(Int(0)), PreconditionViolated);
}

TEST_CASE("factorize round-trips against value() on a range") {
    for (long n = 2; n <= 2000; ++n) {
        IntFactorization f = factorize(Int(n));
        CHECK(f.value() == n);
        for (const auto& [p, e] : f.factors) {
            CHECK(is_probable_prime(p));
            CHECK(e >= 1);
        }
    }
}

TEST_CASE("factorize enforces the bit cap") {
    Int wide = (Int(1) << 200) + 1;
    CHECK_THROWS_AS(factorize(wide, 128), CapExceeded);
    CHECK_NOTHROW(factorize(Int(1) << 100, 128));
}

TEST_CASE("prime-power factorization assembles cyclotomic pieces") {
    IntFactorization f = factorize_prime_power_minus_one(Int(5), 4);
    CHECK(f.value() == 624);
    CHECK(f.factors == std::map<Int, unsigned>{{Int(2), 4}, {Int(3), 1}, {Int(13), 1}});

    // Wider than any single-cap factorization, yet each piece stays small.
    IntFactorization huge = factorize_prime_power_minus_one(Int(5), 60);
    Int five60 = 1;
    for (int i = 0; i < 60; ++i) five60 *= 5;
    CHECK(huge.value() == five60 - 1);

    IntFactorization f13 = factorize_prime_power_minus_one(Int(13), 39);
    Int v = 1;
    for (int i = 0; i < 39; ++i) v *= 13;
    CHECK(f13.value() == v - 1);

    CHECK_THROWS_AS(factorize_prime_power_minus_one(Int(6), 3), NotPrime);
    CHECK_THROWS_AS(factorize_prime_power_minus_one(Int(5), 0), PreconditionViolated);
}

TEST_CASE("euler phi closed form") {
    CHECK(euler_phi(Int(8)) == 4);
    CHECK(euler_phi(Int(62)) == 30);
    CHECK(euler_phi(Int(80)) == 32);
    CHECK(euler_phi(Int(1)) == 1);

    // Divisor-sum identity sum_{d | t} phi(d) = t.
    for (long t = 1; t <= 400; ++t) {
        if (t == 1) continue;
        IntFactorization f = factorize(Int(t));
        Int sum = 0;
        for (const Int& d : sorted_divisors(f)) sum += d == 1 ? Int(1) : euler_phi(d);
        CHECK(sum == t);
    }
}

TEST_CASE("squarefree divisor count matches brute force") {
    CHECK(big_w_int(Int(80)) == 4);
    CHECK(big_w_int(Int(2)) == 2);
    CHECK(big_w_int(Int(781)) == 4);
    for (long n : {12L, 36L, 210L, 1024L, 5040L, 9973L})
        CHECK(big_w_int(Int(n)) == brute_squarefree_divisors(n));
}

TEST_CASE("theta is phi over t in lowest terms") {
    CHECK(theta(Int(8)) == Rat(1, 2));
    CHECK(theta(Int(26)) == Rat(6, 13));
    CHECK(theta(Int(124)) == Rat(15, 31));
    for (long t = 2; t <= 300; ++t) {
        Rat expected(euler_phi(Int(t)), Int(t));
        expected.canonicalize();
        CHECK(theta(Int(t)) == expected);
    }
}

TEST_CASE("squarefree part is the radical") {
    CHECK(squarefree_part(Int(80)) == 10);
    CHECK(squarefree_part(Int(26)) == 26);
    CHECK(squarefree_part(Int(124)) == 62);
    CHECK(squarefree_part(Int(27)) == 3);
}

TEST_CASE("divisor-count constants obey their published ceilings") {
    double max4 = 0.0, max8 = 0.0;
    for (long t = 2; t <= 10000; ++t) {
        double c4 = w_bound_constant(Int(t), 4);
        double c8 = w_bound_constant(Int(t), 8);
        max4 = std::max(max4, c4);
        max8 = std::max(max8, c8);
        double wt = big_w_int(Int(t)).get_d();
        CHECK(wt <= c4 * std::pow(double(t), 1.0 / 4) * (1 + 1e-12));
        CHECK(wt <= c8 * std::pow(double(t), 1.0 / 8) * (1 + 1e-12));
    }
    CHECK(max4 < 4.9);
    CHECK(max4 > 4.5); // t = 2310 already pushes past 4.6
    CHECK(max8 < 4514.7);

    // The a = 8 constant with the factor 5 excluded from t.
    double max8_no5 = 0.0;
    for (long t = 2; t <= 100000; ++t) {
        if (t % 5 == 0) continue;
        max8_no5 = std::max(max8_no5, w_bound_constant(Int(t), 8));
    }
    CHECK(max8_no5 < 2760.39);
}

TEST_CASE("smoothed prime-counting bound at small arguments") {
    double b = ramanujan_bound(Int(5), 1);
    CHECK(b == doctest::Approx(3.6 * std::log(5.0)).epsilon(1e-12));
    // 1/theta(5^5 - 1) = 3124/1400 ~ 2.2314 sits below the bound.
    Rat inv_theta = Rat(1) / theta(Int(3124));
    CHECK(b > inv_theta.get_d());
    CHECK_THROWS_AS(ramanujan_bound(Int(4), 1), PreconditionViolated);
    CHECK_THROWS_AS(ramanujan_bound(Int(5), 0), PreconditionViolated);
}

TEST_CASE("sorted divisors and moebius over the factor lattice") {
    IntFactorization f = factorize(Int(12));
    std::vector<Int> div = sorted_divisors(f);
    CHECK(div == std::vector<Int>{1, 2, 3, 4, 6, 12});
    CHECK(moebius(Int(1), f) == 1);
    CHECK(moebius(Int(2), f) == -1);
    CHECK(moebius(Int(6), f) == 1);
    CHECK(moebius(Int(4), f) == 0);
    CHECK(moebius(Int(12), f) == 0);
    CHECK_THROWS_AS(moebius(Int(5), f), NotADivisor);

    // Moebius sums to zero over the divisors of any n > 1.
    for (long n : {30L, 360L, 97L}) {
        IntFactorization g = factorize(Int(n));
        int sum = 0;
        for (const Int& d : sorted_divisors(g)) sum += moebius(d, g);
        CHECK(sum == 0);
    }
}

TEST_CASE("pow_int small cases") {
    CHECK(pow_int(Int(3), 0) == 1);
    CHECK(pow_int(Int(3), 4) == 81);
    CHECK(pow_int(Int(0), 0) == 1);
    CHECK(pow_int(Int(10), 20) == Int("100000000000000000000"));
}
