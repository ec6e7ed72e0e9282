#include "knormal/structure.hpp"

#include <algorithm>

namespace knormal {

std::pair<unsigned, unsigned> split_p_part(std::uint64_t p, unsigned n) {
    unsigned k = 0, u = n;
    while (u % p == 0) {
        u /= static_cast<unsigned>(p);
        ++k;
    }
    return {k, u};
}

FieldElement q_associate_apply(const FqPoly& f, const FieldElement& w) {
    const ExtensionField* F = w.F;
    if (f.K.get() != F->fq().get()) throw FieldMismatch("q_associate_apply: wrong base field");
    FieldElement acc = F->zero();
    if (f.is_zero()) return acc;
    const unsigned n = F->n();
    // w^(q^i) cycles with period dividing n.
    std::vector<FieldElement> cycle;
    cycle.reserve(n);
    cycle.push_back(w);
    for (unsigned i = 1; i < n && i <= static_cast<unsigned>(f.deg()); ++i)
        cycle.push_back(F->frobenius(cycle.back(), 1));
    for (unsigned i = 0; i <= static_cast<unsigned>(f.deg()); ++i) {
        std::uint64_t a = f.coeff(i);
        if (!a) continue;
        acc = F->add(acc, F->scalar_mul(a, cycle[i % n]));
    }
    return acc;
}

FqPoly fq_order(const FieldElement& w) {
    const ExtensionField* F = w.F;
    for (const FqPoly& g : F->xn1_divisors())
        if (q_associate_apply(g, w).is_zero()) return g;
    throw PreconditionViolated("fq_order: x^n - 1 failed to annihilate");
}

unsigned k_normality(const FieldElement& w) {
    return w.F->n() - static_cast<unsigned>(fq_order(w).deg());
}

namespace {

// Polynomials with coefficients in F_{q^n}, dense, lowest-first; just enough
// for the gcd route.
using EPoly = std::vector<FieldElement>;

void enormalize(EPoly& a) {
    while (!a.empty() && a.back().is_zero()) a.pop_back();
}

int edeg(const EPoly& a) { return static_cast<int>(a.size()) - 1; }

EPoly emod(const ExtensionField* F, EPoly a, const EPoly& b) {
    FieldElement lead_inv = F->inv(b.back());
    while (edeg(a) >= edeg(b)) {
        int d = edeg(a);
        FieldElement f = F->mul(a.back(), lead_inv);
        for (int j = 0; j <= edeg(b); ++j) {
            int idx = d - edeg(b) + j;
            a[idx] = F->sub(a[idx], F->mul(f, b[j]));
        }
        enormalize(a);
        if (a.empty()) break;
    }
    return a;
}

} // namespace

unsigned k_normality_gcd(const FieldElement& w) {
    const ExtensionField* F = w.F;
    const unsigned n = F->n();
    std::vector<FieldElement> conj = F->conjugates(w);
    EPoly g(n, F->zero());
    for (unsigned i = 0; i < n; ++i) g[n - 1 - i] = conj[i];
    enormalize(g);

    EPoly xn1(n + 1, F->zero());
    xn1[0] = F->neg(F->one());
    xn1[n] = F->one();

    EPoly a = xn1, b = g;
    while (!b.empty()) {
        EPoly r = emod(F, a, b);
        a = b;
        b = r;
    }
    return static_cast<unsigned>(edeg(a));
}

bool is_t_free(const FieldElement& w, const Int& t) {
    const ExtensionField* F = w.F;
    if (w.is_zero()) throw ZeroElement("is_t_free(0)");
    if (t < 1 || F->group_order() % t != 0) throw NotADivisor("is_t_free: t must divide q^n - 1");
    if (t == 1) return true;
    for (const Int& rho : F->order_factored().primes()) {
        if (t % rho != 0) continue;
        if (F->pow(w, F->group_order() / rho) == F->one()) return false;
    }
    return true;
}

bool is_poly_free(const FieldElement& w, const FqPoly& D) {
    const ExtensionField* F = w.F;
    if (D.K.get() != F->fq().get()) throw FieldMismatch("is_poly_free: wrong base field");
    if (D.is_zero() || D.leading() != 1 || !poly_divides(D, F->xn_minus_one()))
        throw NotADivisor("is_poly_free: D must be a monic divisor of x^n - 1");
    FqPoly cofactor = poly_divmod(F->xn_minus_one(), fq_order(w)).first;
    return poly_gcd(D, cofactor).deg() == 0;
}

bool indicator_2primitive_knormal(const FieldElement& w, unsigned k) {
    const ExtensionField* F = w.F;
    if (F->q() % 2 == 0) throw PreconditionViolated("indicator_2primitive_knormal: q must be odd");
    if (k > 1) throw PreconditionViolated("indicator_2primitive_knormal: k in {0,1}");
    if (w.is_zero()) throw ZeroElement("indicator_2primitive_knormal(0)");
    if (F->mult_order(w) != F->group_order()) return false;
    FieldElement w2 = F->mul(w, w);
    FqPoly m = fq_order(w2);
    if (k == 0) return poly_eq(m, F->xn_minus_one());
    FqPoly target = poly_divmod(F->xn_minus_one(),
                                poly_sub(poly_x(F->fq()), poly_one(F->fq()))).first;
    return poly_eq(m, target);
}

bool decompose_1normal_check(const FieldElement& w) {
    const ExtensionField* F = w.F;
    auto [k, u] = split_p_part(F->p(), F->n());
    (void)k;
    const unsigned pk = F->n() / u;

    FqPoly x1 = poly_sub(poly_x(F->fq()), poly_one(F->fq()));
    FqPoly T = poly_divmod(x_pow_minus_one(F->fq(), u), x1).first;
    bool t_free = is_poly_free(w, T);

    // The F_q-order of the trace does not depend on the ambient field: it
    // divides x^{p^k} - 1 because the trace is fixed by frobenius(~, p^k).
    FieldElement beta = F->trace(w, pk);
    FqPoly m_beta = fq_order(beta);
    FqPoly target = poly_divmod(x_pow_minus_one(F->fq(), pk), x1).first;
    return t_free && poly_eq(m_beta, target);
}

NormalityProfile normality_profile(const FieldElement& w) {
    FqPoly m = fq_order(w);
    return NormalityProfile{w, m, w.F->n() - static_cast<unsigned>(m.deg())};
}

Int count_N(const ExtensionField* F, const FqPoly& f, unsigned m, const FieldElement& beta,
            const Limits& limits) {
    if (F->card() > limits.exhaustive_cap) throw CapExceeded("count_N: field too large");
    if (m == 0 || F->n() % m != 0) throw NotADivisor("count_N: m must divide n");
    if (!F->in_subfield(beta, m)) throw PreconditionViolated("count_N: beta outside F_{q^m}");
    if (f.is_zero()) throw ZeroElement("count_N: f must be nonzero");
    auto [pk, u] = split_p_part(F->p(), F->n());
    (void)pk;
    if (!poly_divides(f, x_pow_minus_one(F->fq(), u)))
        throw NotADivisor("count_N: f must divide x^u - 1");
    FqPoly x1 = poly_sub(poly_x(F->fq()), poly_one(F->fq()));
    if (poly_divides(x1, f))
        throw PreconditionViolated("count_N: f must not be divisible by x - 1");
    const bool f_trivial = f.deg() == 0;

    const FieldElement& g = F->generator();
    const Int& Q = F->group_order();
    Int count(0);
    FieldElement cur = F->one();
    // g^i for i = 1 .. Q-1; i = 0 gives 1, never primitive here.
    for (Int i(1); i < Q; ++i) {
        cur = F->mul(cur, g);
        Int gg;
        mpz_gcd(gg.get_mpz_t(), i.get_mpz_t(), Q.get_mpz_t());
        if (gg != 1) continue;
        FieldElement w2 = F->mul(cur, cur);
        if (!f_trivial && !is_poly_free(w2, f)) continue;
        if (F->trace(w2, m) == beta) ++count;
    }
    return count;
}

} // namespace knormal
