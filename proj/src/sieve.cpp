#include "knormal/sieve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "knormal/fqpoly.hpp"
#include "knormal/structure.hpp"

namespace knormal {

std::string to_string(SieveMode mode) {
    switch (mode) {
        case SieveMode::Normal0: return "Normal0";
        case SieveMode::OneNormal: return "OneNormal";
        case SieveMode::CubicOneNormal: return "CubicOneNormal";
        case SieveMode::TraceCoverage: return "TraceCoverage";
    }
    return "?";
}

std::string to_string(SieveOutcome outcome) {
    switch (outcome) {
        case SieveOutcome::Success: return "Success";
        case SieveOutcome::FailDeltaNonpositive: return "FailDeltaNonpositive";
        case SieveOutcome::FailNoMorePrimes: return "FailNoMorePrimes";
    }
    return "?";
}

SieveMode sieve_mode_from_string(const std::string& s) {
    if (s == "Normal0") return SieveMode::Normal0;
    if (s == "OneNormal") return SieveMode::OneNormal;
    if (s == "CubicOneNormal") return SieveMode::CubicOneNormal;
    if (s == "TraceCoverage") return SieveMode::TraceCoverage;
    throw PreconditionViolated("unknown sieve mode: " + s);
}

namespace {

struct ModeShape {
    long e = 0;       // lhs = q^(e/2)
    unsigned C = 1;   // constant factor on the rhs
    bool has_wpoly = false;
    unsigned u = 0;   // n = p^k u
};

ModeShape mode_shape(std::uint64_t p, unsigned n, SieveMode mode) {
    auto [k, u] = split_p_part(p, n);
    (void)k;
    const long pk = static_cast<long>(n / u);
    switch (mode) {
        case SieveMode::Normal0:
            return {static_cast<long>(n), 2, true, u};
        case SieveMode::OneNormal:
            return {pk * (static_cast<long>(u) - 2), 1, true, u};
        case SieveMode::CubicOneNormal:
            if (n != 3) throw PreconditionViolated("CubicOneNormal requires n = 3");
            return {1, 2, false, u};
        case SieveMode::TraceCoverage:
            return {static_cast<long>(n) - 2, 2, false, u};
    }
    throw PreconditionViolated("mode_shape: bad mode");
}

Rat pow_rat(std::uint64_t q, long e) {
    if (e >= 0) return Rat(pow_int(Int(static_cast<unsigned long>(q)), static_cast<unsigned>(e)));
    Rat r(1, pow_int(Int(static_cast<unsigned long>(q)), static_cast<unsigned>(-e)));
    r.canonicalize();
    return r;
}

SieveReport sieve_engine(std::uint64_t p, unsigned t, unsigned n, SieveMode mode,
                         unsigned factor_cap_bits, bool allow_peeling) {
    if (p == 2) throw PreconditionViolated("sieve: q must be odd");
    Int q_big = pow_int(Int(static_cast<unsigned long>(p)), t);
    if (q_big > Int(std::numeric_limits<unsigned long>::max()))
        throw CapExceeded("sieve: q exceeds 64 bits");
    const std::uint64_t q = q_big.get_ui();

    SieveReport rep;
    rep.q = q;
    rep.n = n;
    rep.mode = mode;
    const ModeShape shape = mode_shape(p, n, mode);
    rep.exponent_e = shape.e;

    IntFactorization fac = factorize_prime_power_minus_one(Int(static_cast<unsigned long>(p)),
                                                           t * n, factor_cap_bits);
    std::vector<Int> primes = fac.primes(); // ascending
    const unsigned m = static_cast<unsigned>(primes.size());
    rep.m = m;

    Int wpoly(1);
    if (shape.has_wpoly) {
        unsigned cnt = count_irreducible_factors_cyclotomic(q_big, shape.u);
        mpz_ui_pow_ui(wpoly.get_mpz_t(), 2, cnt);
    }
    rep.w_poly = wpoly;

    const Rat lhs_exact = pow_rat(q, shape.e);
    unsigned s = 0;
    Rat delta(1);
    std::vector<Int> sieved;

    auto finish = [&](SieveOutcome outcome) {
        rep.outcome = outcome;
        rep.s = s;
        rep.delta = delta;
        rep.sieving_primes = sieved;
        Rat mult = Rat(static_cast<long>(s) - 1) / delta + 2;
        mult.canonicalize();
        rep.multiplier = mult;
        Int wq0;
        mpz_ui_pow_ui(wq0.get_mpz_t(), 2, m - s);
        rep.w_q0 = wq0;
        Rat rhs = Rat(shape.C) * Rat(wq0) * Rat(wpoly) * mult;
        rhs.canonicalize();
        rep.lhs = std::pow(static_cast<double>(q), static_cast<double>(shape.e) / 2.0);
        double rhs_d = mpq_get_d(rhs.get_mpq_t());
        rep.rhs = std::nextafter(rhs_d, std::numeric_limits<double>::infinity());
        return rep;
    };

    while (delta > 0) {
        Rat mult = Rat(static_cast<long>(s) - 1) / delta + 2;
        mult.canonicalize();
        Int wq0;
        mpz_ui_pow_ui(wq0.get_mpz_t(), 2, m - s);
        Rat rhs = Rat(shape.C) * Rat(wq0) * Rat(wpoly) * mult;
        rhs.canonicalize();
        if (lhs_exact > rhs * rhs) return finish(SieveOutcome::Success);
        if (!allow_peeling || s == m) return finish(SieveOutcome::FailNoMorePrimes);
        const Int& peel = primes[m - 1 - s];
        sieved.push_back(peel);
        delta -= Rat(1, peel);
        delta.canonicalize();
        ++s;
    }
    return finish(SieveOutcome::FailDeltaNonpositive);
}

} // namespace

SieveReport base_inequality(std::uint64_t p, unsigned t, unsigned n, SieveMode mode,
                            unsigned factor_cap_bits) {
    return sieve_engine(p, t, n, mode, factor_cap_bits, false);
}

SieveReport run_sieve(std::uint64_t p, unsigned t, unsigned n, SieveMode mode,
                      unsigned factor_cap_bits) {
    return sieve_engine(p, t, n, mode, factor_cap_bits, true);
}

bool evaluate_bound_based_condition(const Int& q, const Int& p, unsigned n, SieveMode mode,
                                    WIntBound w_int, WPolyBound w_poly) {
    unsigned u = n;
    if (p <= Int(static_cast<unsigned long>(n))) {
        auto [k, uu] = split_p_part(p.get_ui(), n);
        (void)k;
        u = uu;
    }
    ModeShape shape;
    const long pk = static_cast<long>(n / u);
    switch (mode) {
        case SieveMode::Normal0:
            shape = {static_cast<long>(n), 2, true, u};
            break;
        case SieveMode::OneNormal:
            shape = {pk * (static_cast<long>(u) - 2), 1, true, u};
            break;
        case SieveMode::CubicOneNormal:
            if (n != 3) throw PreconditionViolated("CubicOneNormal requires n = 3");
            shape = {1, 2, false, u};
            break;
        case SieveMode::TraceCoverage:
            shape = {static_cast<long>(n) - 2, 2, false, u};
            break;
    }

    const double ln_q = std::log(mpz_get_d(q.get_mpz_t()));
    double ln_lhs = (static_cast<double>(shape.e) / 2.0) * ln_q;
    double ln_rhs = std::log(static_cast<double>(shape.C));

    switch (w_int) {
        case WIntBound::Exact: {
            Int total = 1;
            for (unsigned i = 0; i < n; ++i) total *= q;
            total -= 1;
            ln_rhs += std::log(2.0) *
                      static_cast<double>(factorize(total).distinct_count());
            break;
        }
        case WIntBound::C4:
            ln_rhs += std::log(4.9) + (static_cast<double>(n) / 4.0) * ln_q;
            break;
        case WIntBound::C8: {
            // 2760.39 applies when 5 does not divide q^n - 1.
            std::uint64_t qm5 = mpz_fdiv_ui(q.get_mpz_t(), 5);
            bool five_divides = false;
            if (qm5 != 0) {
                std::uint64_t acc = 1;
                for (unsigned i = 0; i < n; ++i) acc = (acc * qm5) % 5;
                five_divides = acc == 1;
            }
            ln_rhs += std::log(five_divides ? 4514.7 : 2760.39) +
                      (static_cast<double>(n) / 8.0) * ln_q;
            break;
        }
    }

    if (shape.has_wpoly) {
        const double qd = mpz_get_d(q.get_mpz_t());
        switch (w_poly) {
            case WPolyBound::Exact:
                ln_rhs += std::log(2.0) *
                          static_cast<double>(count_irreducible_factors_cyclotomic(q, u));
                break;
            case WPolyBound::Generic:
                ln_rhs += std::log(2.0) * (u + std::min<double>(u, qd - 1.0)) / 2.0;
                break;
            case WPolyBound::Q5:
                if (q != 5) throw PreconditionViolated("w_poly bound q5 requires q = 5");
                ln_rhs += std::log(2.0) * (u / 3.0 + 6.0);
                break;
            case WPolyBound::Q3:
                if (q != 3 || u == 4 || u == 6 || u == 8)
                    throw PreconditionViolated("w_poly bound q3 requires q = 3, u not in {4,6,8}");
                ln_rhs += std::log(2.0) * (u + 1.0) / 3.0;
                break;
        }
    }

    return ln_lhs - ln_rhs > 1e-12;
}

CaseNpReport case_np_analysis(std::uint64_t p, unsigned t, NpMode mode,
                              unsigned factor_cap_bits) {
    if (p < 5) throw PreconditionViolated("case_np_analysis: p >= 5");
    CaseNpReport rep;
    const Int pp(static_cast<unsigned long>(p));
    const Int q = pow_int(pp, t);
    rep.q = q;
    const unsigned n = (mode == NpMode::NEqualsP ? static_cast<unsigned>(p)
                                                 : 2 * static_cast<unsigned>(p));
    rep.n = n;

    IntFactorization fac = factorize_prime_power_minus_one(pp, t * n, factor_cap_bits);
    const Int W = big_w_int(fac);
    rep.w_value = W;
    const Int Qn = pow_int(q, n) - 1;
    const Int phi = euler_phi(fac);

    if (mode == NpMode::NEqualsP) {
        // 1/theta(q^p - 1) > q - 2 q^(2 - p/2) W(q^p - 1)
        Rat inv_theta(Qn, phi);
        inv_theta.canonicalize();
        Rat gap = Rat(q) - inv_theta; // inequality holds iff 2 W q^(2-p/2) > gap
        gap.canonicalize();
        bool holds;
        if (gap <= 0) {
            holds = true;
        } else {
            // Compare squares: 4 W^2 q^4 / q^p > gap^2.
            Rat lhs2 = Rat(4 * W * W * pow_int(q, 4), pow_int(q, n));
            lhs2.canonicalize();
            holds = lhs2 > gap * gap;
        }
        rep.inequality_holds = holds;
        rep.existence_follows = !holds;
        rep.lhs = mpq_get_d(inv_theta.get_mpq_t());
        double qd = mpz_get_d(q.get_mpz_t());
        rep.rhs = qd - 2.0 * mpz_get_d(W.get_mpz_t()) *
                           std::pow(qd, 2.0 - static_cast<double>(p) / 2.0);
    } else {
        // q / ((q-1) theta(q^2p - 1)) > q - 4 q^(2-p) W(q^2p - 1)
        Rat lhs(q * Qn, (q - 1) * phi);
        lhs.canonicalize();
        Rat rhs = Rat(q) - Rat(4 * W * pow_int(q, 2), pow_int(q, static_cast<unsigned>(p)));
        rhs.canonicalize();
        bool holds = lhs > rhs;
        rep.inequality_holds = holds;
        rep.existence_follows = !holds;
        rep.lhs = mpq_get_d(lhs.get_mpq_t());
        rep.rhs = mpq_get_d(rhs.get_mpq_t());
    }
    return rep;
}

bool cor_2trace_condition(std::uint64_t p, unsigned t, unsigned n,
                          unsigned factor_cap_bits) {
    auto [k, u] = split_p_part(p, n);
    (void)u;
    if (k < 2 || p < 5) throw PreconditionViolated("cor_2trace_condition: needs k >= 2, p >= 5");
    const Int q = pow_int(Int(static_cast<unsigned long>(p)), t);
    IntFactorization fac = factorize_prime_power_minus_one(Int(static_cast<unsigned long>(p)),
                                                           t * n, factor_cap_bits);
    const Int W = big_w_int(fac);
    // q^(n - n/p) > 2 q^(n/2) W, compared as squares.
    const unsigned np = n / static_cast<unsigned>(p);
    Int lhs2 = pow_int(q, 2 * (n - np));
    Int rhs2 = 4 * pow_int(q, n) * W * W;
    return lhs2 > rhs2;
}

} // namespace knormal
