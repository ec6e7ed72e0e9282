#include "knormal/fqpoly.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace knormal {

namespace {

void require_same_field(const FqPoly& a, const FqPoly& b) {
    if (a.K.get() != b.K.get()) throw FieldMismatch("polynomials over different fields");
}

void normalize(FqPoly& a) {
    while (!a.c.empty() && a.c.back() == 0) a.c.pop_back();
}

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

} // namespace

FqPoly make_poly(std::shared_ptr<const Fq> K, std::vector<std::uint64_t> coeffs) {
    for (std::uint64_t c : coeffs)
        if (c >= K->q()) throw PreconditionViolated("make_poly: coefficient out of range");
    FqPoly f{std::move(K), std::move(coeffs)};
    normalize(f);
    return f;
}

FqPoly poly_zero(std::shared_ptr<const Fq> K) { return FqPoly{std::move(K), {}}; }

FqPoly poly_one(std::shared_ptr<const Fq> K) { return FqPoly{std::move(K), {1}}; }

FqPoly poly_x(std::shared_ptr<const Fq> K) { return FqPoly{std::move(K), {0, 1}}; }

FqPoly poly_const(std::shared_ptr<const Fq> K, std::uint64_t a) {
    FqPoly f{std::move(K), {a}};
    normalize(f);
    return f;
}

FqPoly x_pow_minus_one(std::shared_ptr<const Fq> K, unsigned u) {
    if (u == 0) throw PreconditionViolated("x_pow_minus_one: u >= 1");
    std::vector<std::uint64_t> c(u + 1, 0);
    c[0] = K->neg(1);
    c[u] = 1;
    return FqPoly{std::move(K), std::move(c)};
}

bool poly_eq(const FqPoly& a, const FqPoly& b) {
    return a.K.get() == b.K.get() && a.c == b.c;
}

bool canonical_less(const FqPoly& a, const FqPoly& b) {
    if (a.deg() != b.deg()) return a.deg() < b.deg();
    return a.c < b.c;
}

FqPoly poly_add(const FqPoly& a, const FqPoly& b) {
    require_same_field(a, b);
    const auto& K = *a.K;
    std::vector<std::uint64_t> c(std::max(a.c.size(), b.c.size()), 0);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = K.add(a.coeff(i), b.coeff(i));
    FqPoly f{a.K, std::move(c)};
    normalize(f);
    return f;
}

FqPoly poly_sub(const FqPoly& a, const FqPoly& b) { return poly_add(a, poly_neg(b)); }

FqPoly poly_neg(const FqPoly& a) {
    std::vector<std::uint64_t> c(a.c.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.K->neg(a.c[i]);
    return FqPoly{a.K, std::move(c)};
}

FqPoly poly_mul(const FqPoly& a, const FqPoly& b) {
    require_same_field(a, b);
    if (a.is_zero() || b.is_zero()) return poly_zero(a.K);
    const auto& K = *a.K;
    std::vector<std::uint64_t> c(a.c.size() + b.c.size() - 1, 0);
    for (std::size_t i = 0; i < a.c.size(); ++i) {
        if (!a.c[i]) continue;
        for (std::size_t j = 0; j < b.c.size(); ++j) {
            if (!b.c[j]) continue;
            c[i + j] = K.add(c[i + j], K.mul(a.c[i], b.c[j]));
        }
    }
    return FqPoly{a.K, std::move(c)};
}

FqPoly poly_scale(const FqPoly& a, std::uint64_t s) {
    if (s == 0) return poly_zero(a.K);
    std::vector<std::uint64_t> c(a.c.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.K->mul(a.c[i], s);
    return FqPoly{a.K, std::move(c)};
}

std::pair<FqPoly, FqPoly> poly_divmod(const FqPoly& a, const FqPoly& b) {
    require_same_field(a, b);
    if (b.is_zero()) throw ZeroElement("poly_divmod: division by zero polynomial");
    const auto& K = *a.K;
    if (a.deg() < b.deg()) return {poly_zero(a.K), a};
    std::vector<std::uint64_t> rem = a.c;
    std::vector<std::uint64_t> quot(a.deg() - b.deg() + 1, 0);
    const std::uint64_t lead_inv = K.inv(b.leading());
    for (int d = a.deg(); d >= b.deg(); --d) {
        std::uint64_t coef = rem[d];
        if (!coef) continue;
        std::uint64_t f = K.mul(coef, lead_inv);
        quot[d - b.deg()] = f;
        for (int j = 0; j <= b.deg(); ++j) {
            std::size_t idx = d - b.deg() + j;
            rem[idx] = K.sub(rem[idx], K.mul(f, b.c[j]));
        }
    }
    FqPoly q{a.K, std::move(quot)}, r{a.K, std::move(rem)};
    normalize(q);
    normalize(r);
    return {q, r};
}

FqPoly poly_mod(const FqPoly& a, const FqPoly& b) { return poly_divmod(a, b).second; }

bool poly_divides(const FqPoly& d, const FqPoly& a) {
    if (d.is_zero()) return a.is_zero();
    return poly_mod(a, d).is_zero();
}

FqPoly poly_make_monic(const FqPoly& a) {
    if (a.is_zero() || a.leading() == 1) return a;
    return poly_scale(a, a.K->inv(a.leading()));
}

FqPoly poly_gcd(const FqPoly& a, const FqPoly& b) {
    require_same_field(a, b);
    FqPoly x = a, y = b;
    while (!y.is_zero()) {
        FqPoly r = poly_mod(x, y);
        x = y;
        y = r;
    }
    return poly_make_monic(x);
}

PolyXgcd poly_xgcd(const FqPoly& a, const FqPoly& b) {
    require_same_field(a, b);
    FqPoly r0 = a, r1 = b;
    FqPoly s0 = poly_one(a.K), s1 = poly_zero(a.K);
    FqPoly t0 = poly_zero(a.K), t1 = poly_one(a.K);
    while (!r1.is_zero()) {
        auto [q, r] = poly_divmod(r0, r1);
        FqPoly s2 = poly_sub(s0, poly_mul(q, s1));
        FqPoly t2 = poly_sub(t0, poly_mul(q, t1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s2;
        t0 = t1;
        t1 = t2;
    }
    if (!r0.is_zero() && r0.leading() != 1) {
        std::uint64_t inv = a.K->inv(r0.leading());
        r0 = poly_scale(r0, inv);
        s0 = poly_scale(s0, inv);
        t0 = poly_scale(t0, inv);
    }
    return {r0, s0, t0};
}

FqPoly poly_powmod(const FqPoly& base, const Int& e, const FqPoly& mod) {
    if (e < 0) throw PreconditionViolated("poly_powmod: e >= 0");
    FqPoly b = poly_mod(base, mod);
    FqPoly r = poly_mod(poly_one(base.K), mod);
    Int k = e;
    while (k > 0) {
        if (mpz_odd_p(k.get_mpz_t())) r = poly_mod(poly_mul(r, b), mod);
        b = poly_mod(poly_mul(b, b), mod);
        k >>= 1;
    }
    return r;
}

FqPoly poly_derivative(const FqPoly& a) {
    if (a.deg() < 1) return poly_zero(a.K);
    const auto& K = *a.K;
    std::vector<std::uint64_t> c(a.c.size() - 1);
    for (std::size_t i = 1; i < a.c.size(); ++i) {
        std::uint64_t m = i % K.p();
        std::uint64_t scalar = 0;
        for (std::uint64_t j = 0; j < m; ++j) scalar = K.add(scalar, 1);
        c[i - 1] = K.mul(a.c[i], scalar);
    }
    FqPoly f{a.K, std::move(c)};
    normalize(f);
    return f;
}

std::uint64_t poly_eval(const FqPoly& a, std::uint64_t x) {
    const auto& K = *a.K;
    std::uint64_t v = 0;
    for (std::size_t i = a.c.size(); i-- > 0;) v = K.add(K.mul(v, x), a.c[i]);
    return v;
}

bool is_irreducible(const FqPoly& f) {
    if (f.deg() < 1) return false;
    if (f.leading() != 1) throw PreconditionViolated("is_irreducible: monic input expected");
    const unsigned d = static_cast<unsigned>(f.deg());
    if (d == 1) return true;
    const Int q(static_cast<unsigned long>(f.K->q()));
    const FqPoly x = poly_x(f.K);

    // x^(q^j) mod f, iterated Frobenius.
    auto frob_steps = [&](FqPoly h, unsigned steps) {
        for (unsigned i = 0; i < steps; ++i) h = poly_powmod(h, q, f);
        return h;
    };
    FqPoly xq_d = frob_steps(x, d);
    if (!poly_eq(xq_d, poly_mod(x, f))) return false;
    IntFactorization df = factorize(Int(d));
    for (const Int& r : df.primes()) {
        unsigned sub = d / static_cast<unsigned>(r.get_ui());
        FqPoly h = poly_sub(frob_steps(x, sub), x);
        if (poly_gcd(h, f).deg() != 0) return false;
    }
    return true;
}

FqPoly first_irreducible(std::shared_ptr<const Fq> K, unsigned d) {
    if (d == 0) throw PreconditionViolated("first_irreducible: d >= 1");
    const std::uint64_t q = K->q();
    Int total = pow_int(Int(static_cast<unsigned long>(q)), d);
    // For d >= 2 a zero constant coefficient means divisible by x, so the
    // scan can start at the first index whose leading digit is nonzero.
    Int start = d >= 2 ? pow_int(Int(static_cast<unsigned long>(q)), d - 1) : Int(0);
    for (Int idx(start); idx < total; ++idx) {
        // Canonical order over monic degree-d candidates: the constant
        // coefficient is the most significant digit of the enumeration index.
        std::vector<std::uint64_t> c(d + 1, 0);
        c[d] = 1;
        Int rest = idx;
        for (unsigned pos = d; pos-- > 0;) {
            Int digit = rest % q;
            c[pos] = digit.get_ui();
            rest /= q;
        }
        FqPoly f{K, c};
        if (is_irreducible(f)) return f;
    }
    throw PreconditionViolated("first_irreducible: exhausted candidates");
}

namespace {

FqPoly pth_root(const FqPoly& f) {
    const auto& K = *f.K;
    const std::uint64_t p = K.p();
    std::vector<std::uint64_t> c(f.deg() / p + 1, 0);
    // Coefficient roots: a^(1/p) = a^(p^(t-1)) since a^(p^t) = a.
    std::uint64_t root_exp = 1;
    for (unsigned j = 1; j < K.t(); ++j) root_exp *= p;
    for (std::size_t i = 0; i < c.size(); ++i) {
        std::uint64_t a = f.coeff(i * p);
        c[i] = K.pow_u(a, root_exp);
    }
    FqPoly g{f.K, std::move(c)};
    return g;
}

// Distinct-degree splitting of a squarefree monic h: pairs (product, degree).
std::vector<std::pair<FqPoly, unsigned>> ddf(FqPoly h) {
    std::vector<std::pair<FqPoly, unsigned>> out;
    const Int q(static_cast<unsigned long>(h.K->q()));
    FqPoly x = poly_x(h.K);
    FqPoly xq = x;
    for (unsigned i = 1; h.deg() > 0; ++i) {
        if (2 * i > static_cast<unsigned>(h.deg())) {
            out.emplace_back(h, static_cast<unsigned>(h.deg()));
            break;
        }
        xq = poly_powmod(xq, q, h);
        FqPoly g = poly_gcd(poly_sub(xq, poly_mod(x, h)), h);
        if (g.deg() > 0) {
            out.emplace_back(g, i);
            h = poly_divmod(h, g).first;
            xq = poly_mod(xq, h);
        }
    }
    return out;
}

// Equal-degree splitting (Cantor-Zassenhaus, odd q) of a squarefree monic
// product of irreducibles of degree d.
void edf(const FqPoly& f, unsigned d, std::vector<FqPoly>& out, std::uint64_t& rng) {
    if (f.deg() == static_cast<int>(d)) {
        out.push_back(f);
        return;
    }
    const std::uint64_t q = f.K->q();
    Int exp = (pow_int(Int(static_cast<unsigned long>(q)), d) - 1) / 2;
    for (;;) {
        std::vector<std::uint64_t> rc(f.deg());
        for (auto& v : rc) v = splitmix64(rng) % q;
        FqPoly r = make_poly(f.K, std::move(rc));
        if (r.deg() < 1) continue;
        FqPoly g = poly_gcd(r, f);
        if (g.deg() == 0) {
            FqPoly s = poly_powmod(r, exp, f);
            g = poly_gcd(poly_sub(s, poly_one(f.K)), f);
        }
        if (g.deg() > 0 && g.deg() < f.deg()) {
            edf(g, d, out, rng);
            edf(poly_divmod(f, g).first, d, out, rng);
            return;
        }
    }
}

void factor_squarefree_aware(FqPoly f, unsigned mult,
                             std::map<std::vector<std::uint64_t>, unsigned>& acc,
                             std::uint64_t& rng) {
    const std::uint64_t p = f.K->p();
    while (f.deg() > 0) {
        FqPoly d = poly_derivative(f);
        if (d.is_zero()) {
            f = pth_root(f);
            mult *= static_cast<unsigned>(p);
            continue;
        }
        FqPoly g = poly_gcd(f, d);
        FqPoly h = poly_divmod(f, g).first; // distinct factors with multiplicity not divisible by p
        for (auto& [block, deg] : ddf(h)) {
            std::vector<FqPoly> irred;
            edf(block, deg, irred, rng);
            for (const FqPoly& r : irred) {
                unsigned e = 0;
                while (poly_divides(r, f)) {
                    f = poly_divmod(f, r).first;
                    ++e;
                }
                acc[r.c] += mult * e;
            }
        }
        // What remains is a perfect p-th power.
    }
}

} // namespace

std::vector<std::pair<FqPoly, unsigned>> factor_poly(const FqPoly& f) {
    if (f.is_zero()) throw ZeroElement("factor_poly: zero polynomial");
    FqPoly g = poly_make_monic(f);
    std::map<std::vector<std::uint64_t>, unsigned> acc;
    // Deterministic seed derived from the polynomial itself.
    std::uint64_t rng = 0x243f6a8885a308d3ULL ^ (f.K->q() * 0x9e3779b97f4a7c15ULL);
    for (std::uint64_t c : g.c) rng = rng * 1099511628211ULL + c + 1;
    factor_squarefree_aware(g, 1, acc, rng);
    std::vector<std::pair<FqPoly, unsigned>> out;
    out.reserve(acc.size());
    for (auto& [coeffs, e] : acc) out.emplace_back(FqPoly{f.K, coeffs}, e);
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return canonical_less(a.first, b.first); });
    return out;
}

Int poly_phi(const FqPoly& f) {
    if (f.is_zero()) throw ZeroElement("poly_phi: zero polynomial");
    if (f.deg() == 0) return 1;
    const Int q(static_cast<unsigned long>(f.K->q()));
    Int v(1);
    for (const auto& [r, e] : factor_poly(f)) {
        Int qd = pow_int(q, static_cast<unsigned>(r.deg()));
        Int qde = pow_int(qd, e - 1);
        v *= qde * (qd - 1);
    }
    return v;
}

int poly_mobius(const FqPoly& f) {
    if (f.is_zero()) throw ZeroElement("poly_mobius: zero polynomial");
    if (f.deg() == 0) return 1;
    auto fac = factor_poly(f);
    for (const auto& [r, e] : fac)
        if (e > 1) return 0;
    return fac.size() % 2 == 0 ? 1 : -1;
}

Int big_w_poly(const FqPoly& f) {
    if (f.is_zero()) throw ZeroElement("big_w_poly: zero polynomial");
    if (f.deg() == 0) return 1;
    Int v;
    mpz_ui_pow_ui(v.get_mpz_t(), 2, factor_poly(f).size());
    return v;
}

Int big_w_poly_bruteforce(const FqPoly& f) {
    Int count(0);
    for (const FqPoly& d : divisors_of(f)) {
        // Squarefree check: gcd(d, d') = 1 (and d' != 0 handles p-th powers).
        if (d.deg() == 0) {
            ++count;
            continue;
        }
        FqPoly dp = poly_derivative(d);
        if (dp.is_zero()) continue;
        if (poly_gcd(d, dp).deg() == 0) ++count;
    }
    return count;
}

std::vector<FqPoly> divisors_of(const FqPoly& f) {
    if (f.is_zero()) throw ZeroElement("divisors_of: zero polynomial");
    if (f.leading() != 1) throw PreconditionViolated("divisors_of: monic input expected");
    auto fac = factor_poly(f);
    std::vector<FqPoly> out{poly_one(f.K)};
    for (const auto& [r, e] : fac) {
        std::size_t base = out.size();
        FqPoly pk = poly_one(f.K);
        for (unsigned k = 1; k <= e; ++k) {
            pk = poly_mul(pk, r);
            for (std::size_t i = 0; i < base; ++i) out.push_back(poly_mul(out[i], pk));
        }
    }
    std::sort(out.begin(), out.end(), canonical_less);
    return out;
}

unsigned count_irreducible_factors_cyclotomic(const Int& q, unsigned u) {
    if (u == 0) throw PreconditionViolated("count_irreducible_factors_cyclotomic: u >= 1");
    Int g;
    Int uu(u);
    mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), uu.get_mpz_t());
    if (g != 1)
        throw PreconditionViolated("count_irreducible_factors_cyclotomic: gcd(u, q) must be 1");
    unsigned total = 0;
    for (unsigned d = 1; d <= u; ++d) {
        if (u % d != 0) continue;
        if (d == 1) {
            ++total;
            continue;
        }
        std::uint64_t qm = mpz_fdiv_ui(q.get_mpz_t(), d);
        std::uint64_t acc = qm % d;
        unsigned ord = 1;
        while (acc != 1) {
            acc = (acc * qm) % d;
            ++ord;
        }
        unsigned phi_d = static_cast<unsigned>(euler_phi(Int(d)).get_ui());
        total += phi_d / ord;
    }
    return total;
}

double w_poly_bounds(const Int& q, const Int& p, unsigned u) {
    Int g;
    Int uu(u);
    mpz_gcd(g.get_mpz_t(), p.get_mpz_t(), uu.get_mpz_t());
    if (g != 1) throw PreconditionViolated("w_poly_bounds: gcd(u, p) must be 1");
    const unsigned exact_count = count_irreducible_factors_cyclotomic(q, u);
    const double exact = std::exp2(static_cast<double>(exact_count));

    double best = exact;
    bool have = false;
    auto consider = [&](double cand) {
        if (cand < exact) return; // a case bound below the true count is inapplicable
        if (!have || cand < best) {
            best = cand;
            have = true;
        }
    };

    double qd = mpz_get_d(q.get_mpz_t());
    consider(std::exp2((u + std::min<double>(u, qd - 1.0)) / 2.0));
    if (q == 5) consider(std::exp2(u / 3.0 + 6.0));
    if (q == 3 && u != 4 && u != 6 && u != 8) consider(std::exp2((u + 1.0) / 3.0));
    return have ? best : exact;
}

} // namespace knormal
