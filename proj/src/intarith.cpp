#include "knormal/intarith.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numeric>

namespace knormal {

namespace {

const std::vector<std::uint32_t>& small_primes() {
    static std::vector<std::uint32_t> primes = [] {
        constexpr std::uint32_t limit = 1000000;
        std::vector<bool> sieve(limit + 1, true);
        std::vector<std::uint32_t> out;
        for (std::uint32_t i = 2; i <= limit; ++i) {
            if (!sieve[i]) continue;
            out.push_back(i);
            for (std::uint64_t j = static_cast<std::uint64_t>(i) * i; j <= limit; j += i)
                sieve[static_cast<std::size_t>(j)] = false;
        }
        return out;
    }();
    return primes;
}

Int brent_rho(const Int& n) {
    // n is composite, odd, with no factor <= 10^6.
    for (unsigned attempt = 1;; ++attempt) {
        Int c(attempt);
        Int y(2 + attempt), x, ys, q(1), g(1);
        const unsigned m = 128;
        unsigned long r = 1;
        while (g == 1) {
            x = y;
            for (unsigned long i = 0; i < r; ++i) y = (y * y + c) % n;
            unsigned long k = 0;
            while (k < r && g == 1) {
                ys = y;
                unsigned long steps = std::min<unsigned long>(m, r - k);
                for (unsigned long i = 0; i < steps; ++i) {
                    y = (y * y + c) % n;
                    q = q * abs(x - y) % n;
                }
                mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
                k += steps;
            }
            r *= 2;
        }
        if (g == n) {
            // Backtrack one step at a time.
            do {
                ys = (ys * ys + c) % n;
                Int d = abs(x - ys);
                mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
            } while (g == 1);
        }
        if (g != n) return g;
        // Cycle degenerated; retry with the next polynomial.
    }
}

void factor_into(const Int& n, std::map<Int, unsigned>& out) {
    std::vector<Int> stack{n};
    while (!stack.empty()) {
        Int m = stack.back();
        stack.pop_back();
        if (m == 1) continue;
        if (is_probable_prime(m)) {
            ++out[m];
            continue;
        }
        Int d = brent_rho(m);
        stack.push_back(d);
        stack.push_back(m / d);
    }
}

} // namespace

Int IntFactorization::value() const {
    Int v(1);
    for (const auto& [p, e] : factors) {
        Int pe;
        mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), e);
        v *= pe;
    }
    return v;
}

std::vector<Int> IntFactorization::primes() const {
    std::vector<Int> out;
    out.reserve(factors.size());
    for (const auto& [p, e] : factors) out.push_back(p);
    return out;
}

bool is_probable_prime(const Int& n) {
    return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

IntFactorization factorize(const Int& n, unsigned cap_bits) {
    if (n < 2) throw PreconditionViolated("factorize requires n >= 2");
    if (mpz_sizeinbase(n.get_mpz_t(), 2) > cap_bits)
        throw CapExceeded("factorize: input exceeds " + std::to_string(cap_bits) + " bits");
    IntFactorization out;
    Int m = n;
    for (std::uint32_t p : small_primes()) {
        if (Int(p) * p > m) break;
        while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
            ++out.factors[Int(p)];
            m /= p;
        }
    }
    if (m > 1) {
        if (is_probable_prime(m))
            ++out.factors[m];
        else
            factor_into(m, out.factors);
    }
    return out;
}

IntFactorization factorize_prime_power_minus_one(const Int& p, unsigned e,
                                                 unsigned cap_bits) {
    if (!is_probable_prime(p)) throw NotPrime("factorize_prime_power_minus_one: p not prime");
    if (e == 0) throw PreconditionViolated("factorize_prime_power_minus_one: e >= 1");
    // Phi_d(p) for each d | e, by division of p^d - 1 by the smaller pieces.
    std::map<unsigned, Int> cyclo;
    std::vector<unsigned> divs;
    for (unsigned d = 1; d <= e; ++d)
        if (e % d == 0) divs.push_back(d);
    for (unsigned d : divs) {
        Int val;
        mpz_pow_ui(val.get_mpz_t(), p.get_mpz_t(), d);
        val -= 1;
        for (unsigned dd : divs) {
            if (dd >= d) break;
            if (d % dd == 0) val /= cyclo[dd];
        }
        cyclo[d] = val;
    }
    IntFactorization out;
    for (unsigned d : divs) {
        const Int& piece = cyclo[d];
        if (piece == 1) continue;
        IntFactorization part = factorize(piece, cap_bits);
        for (const auto& [q, k] : part.factors) out.factors[q] += k;
    }
    return out;
}

Int euler_phi(const IntFactorization& f) {
    Int v(1);
    for (const auto& [p, e] : f.factors) {
        Int pe;
        mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), e - 1);
        v *= pe * (p - 1);
    }
    return v;
}

Int euler_phi(const Int& n, unsigned cap_bits) {
    if (n == 1) return 1;
    return euler_phi(factorize(n, cap_bits));
}

Int big_w_int(const IntFactorization& f) {
    Int v;
    mpz_ui_pow_ui(v.get_mpz_t(), 2, f.factors.size());
    return v;
}

Int big_w_int(const Int& n, unsigned cap_bits) {
    if (n == 1) return 1;
    return big_w_int(factorize(n, cap_bits));
}

Rat theta(const IntFactorization& f) {
    Rat v(1);
    for (const auto& [p, e] : f.factors) v *= Rat(p - 1, p);
    v.canonicalize();
    return v;
}

Rat theta(const Int& t, unsigned cap_bits) {
    if (t == 1) return Rat(1);
    return theta(factorize(t, cap_bits));
}

Int squarefree_part(const IntFactorization& f) {
    Int v(1);
    for (const auto& [p, e] : f.factors) v *= p;
    return v;
}

Int squarefree_part(const Int& t, unsigned cap_bits) {
    if (t == 1) return 1;
    return squarefree_part(factorize(t, cap_bits));
}

double w_bound_constant(const Int& t, unsigned a) {
    if (a == 0 || a > 24) throw PreconditionViolated("w_bound_constant: a in [1,24]");
    if (t < 1) throw PreconditionViolated("w_bound_constant: t >= 1");
    const std::uint64_t bound = std::uint64_t(1) << a;
    unsigned s = 0;
    double log2_prod = 0.0;
    for (std::uint32_t p : small_primes()) {
        if (p > bound) break;
        if (mpz_divisible_ui_p(t.get_mpz_t(), p)) {
            ++s;
            log2_prod += std::log2(static_cast<double>(p));
        }
    }
    return std::exp2(static_cast<double>(s) - log2_prod / static_cast<double>(a));
}

double ramanujan_bound(const Int& q, unsigned u) {
    if (q < 5 || u < 1) throw PreconditionViolated("ramanujan_bound: q >= 5, u >= 1");
    return 3.6 * std::log(mpz_get_d(q.get_mpz_t())) + 1.8 * std::log(static_cast<double>(u));
}

Int pow_int(const Int& base, unsigned exp) {
    Int v;
    mpz_pow_ui(v.get_mpz_t(), base.get_mpz_t(), exp);
    return v;
}

std::vector<Int> sorted_divisors(const IntFactorization& f) {
    std::vector<Int> out{Int(1)};
    for (const auto& [p, e] : f.factors) {
        std::size_t base = out.size();
        Int pk(1);
        for (unsigned k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * pk);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

int moebius(const Int& d, const IntFactorization& f) {
    if (d == 1) return 1;
    int sign = 1;
    Int m = d;
    for (const auto& [p, e] : f.factors) {
        if (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) {
            m /= p;
            if (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) return 0;
            sign = -sign;
        }
    }
    if (m != 1) throw NotADivisor("moebius: d does not divide the factored value");
    return sign;
}

} // namespace knormal
