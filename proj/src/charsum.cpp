#include "knormal/charsum.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <numeric>

namespace knormal {

namespace {

std::complex<double> unity_root(std::uint64_t num, std::uint64_t den) {
    // Exact residue first, then one floating-point division.
    const std::uint64_t r = num % den;
    return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(r) /
                               static_cast<double>(den));
}

std::uint64_t abs_trace_p(const ExtensionField* F, const FieldElement& w) {
    return F->fq()->abs_trace(F->trace_to_fq(w));
}

void require_cap(const ExtensionField* F, const Limits& limits) {
    // The discrete-log table is dense, so cap harder than the generic
    // exhaustive limit.
    Int cap = limits.exhaustive_cap;
    const Int table_cap(std::uint64_t(1) << 22);
    if (cap > table_cap) cap = table_cap;
    if (F->card() > cap) throw CapExceeded("charsum: field above the character-table cap");
}

} // namespace

MultCharacter make_mult_char(const ExtensionField* F, std::uint64_t order_d,
                             std::uint64_t index) {
    if (order_d == 0 || F->group_order() % Int(static_cast<unsigned long>(order_d)) != 0)
        throw NotADivisor("make_mult_char: order must divide q^n - 1");
    if (std::gcd(index % order_d, order_d) != 1 && order_d > 1)
        throw PreconditionViolated("make_mult_char: index must be coprime to the order");
    return MultCharacter{F, order_d, index % order_d};
}

AddCharacter make_add_char(const ExtensionField* F, FieldElement delta) {
    if (delta.F != F) throw FieldMismatch("make_add_char: element of another field");
    return AddCharacter{F, std::move(delta)};
}

const CharCache& char_cache(const ExtensionField* F, const Limits& limits) {
    static std::mutex mu;
    static std::map<const ExtensionField*, std::unique_ptr<CharCache>> caches;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = caches.find(F);
        if (it != caches.end()) return *it->second;
    }
    require_cap(F, limits);

    auto cache = std::make_unique<CharCache>();
    cache->F = F;
    const std::uint64_t card = F->card().get_ui();
    const std::uint64_t Q = F->group_order_u64();

    cache->dlog.assign(card, 0);
    const FieldElement& g = F->generator();
    FieldElement cur = F->one();
    for (std::uint64_t i = 0; i < Q; ++i) {
        cache->dlog[F->index_of(cur).get_ui()] = i;
        cur = F->mul(cur, g);
    }

    const auto& divisors = F->xn1_divisors();
    cache->delta_lists.assign(divisors.size(), {});
    // Precompute every element once.
    std::vector<FieldElement> elems;
    elems.reserve(card);
    for (std::uint64_t idx = 0; idx < card; ++idx)
        elems.push_back(F->element_by_index(Int(static_cast<unsigned long>(idx))));
    for (std::uint64_t dix = 0; dix < card; ++dix) {
        const FieldElement& delta = elems[dix];
        for (std::size_t j = 0; j < divisors.size(); ++j) {
            bool trivial = true;
            for (std::uint64_t widx = 0; widx < card && trivial; ++widx) {
                FieldElement ew = q_associate_apply(divisors[j], elems[widx]);
                if (abs_trace_p(F, F->mul(delta, ew)) != 0) trivial = false;
            }
            if (trivial) {
                cache->delta_lists[j].push_back(dix);
                break;
            }
        }
    }

    std::lock_guard<std::mutex> lock(mu);
    auto [it, inserted] = caches.emplace(F, std::move(cache));
    return *it->second;
}

std::complex<double> eval_mult_char(const MultCharacter& eta, const FieldElement& w) {
    const ExtensionField* F = eta.F;
    if (w.F != F) throw FieldMismatch("eval_mult_char: element of another field");
    if (w.is_zero()) return eta.order_d == 1 ? 1.0 : 0.0;
    if (eta.order_d == 1) return 1.0;
    const CharCache& cache = char_cache(F);
    std::uint64_t a = cache.dlog[F->index_of(w).get_ui()];
    return unity_root((eta.index % eta.order_d) * (a % eta.order_d), eta.order_d);
}

std::complex<double> eval_add_char(const AddCharacter& chi, const FieldElement& w) {
    const ExtensionField* F = chi.F;
    if (w.F != F) throw FieldMismatch("eval_add_char: element of another field");
    return unity_root(abs_trace_p(F, F->mul(chi.delta, w)), F->p());
}

std::complex<double> gauss_sum_g2(const MultCharacter& eta, const AddCharacter& chi) {
    const ExtensionField* F = eta.F;
    if (chi.F != F) throw FieldMismatch("gauss_sum_g2: characters over different fields");
    const CharCache& cache = char_cache(F); // enforces the cap
    (void)cache;
    const std::uint64_t card = F->card().get_ui();
    std::complex<double> acc = 0.0;
    for (std::uint64_t idx = 0; idx < card; ++idx) {
        FieldElement w = F->element_by_index(Int(static_cast<unsigned long>(idx)));
        std::complex<double> ev = eval_mult_char(eta, w);
        if (ev == std::complex<double>(0.0, 0.0)) continue;
        acc += ev * eval_add_char(chi, F->mul(w, w));
    }
    return acc;
}

bool char_indicator_cross_check(const ExtensionField* F, const Int& t, const FqPoly& D,
                                double tol) {
    if (F->group_order() % t != 0) throw NotADivisor("cross_check: t must divide q^n - 1");
    if (D.is_zero() || D.leading() != 1 || !poly_divides(D, F->xn_minus_one()))
        throw NotADivisor("cross_check: D must be a monic divisor of x^n - 1");
    const CharCache& cache = char_cache(F);
    const std::uint64_t card = F->card().get_ui();

    // Multiplicative side: omega_t as a character sum over squarefree d | t.
    std::vector<Int> tprimes;
    for (const Int& rho : F->order_factored().primes())
        if (t % rho == 0) tprimes.push_back(rho);
    double theta_t = 1.0;
    for (const Int& rho : tprimes) theta_t *= 1.0 - 1.0 / mpz_get_d(rho.get_mpz_t());

    struct CharTerm {
        MultCharacter eta;
        double coeff;
    };
    std::vector<CharTerm> mult_terms;
    const std::size_t np = tprimes.size();
    for (std::size_t mask = 0; mask < (std::size_t(1) << np); ++mask) {
        Int d(1);
        int mu = 1;
        for (std::size_t b = 0; b < np; ++b)
            if (mask & (std::size_t(1) << b)) {
                d *= tprimes[b];
                mu = -mu;
            }
        const std::uint64_t dv = d.get_ui();
        double phi_d = mpz_get_d(euler_phi(d).get_mpz_t());
        for (std::uint64_t idx = 0; idx < dv; ++idx) {
            if (std::gcd(idx, dv) != 1) continue;
            mult_terms.push_back({MultCharacter{F, dv, idx}, mu / phi_d});
        }
    }

    // Additive side: Omega_D over squarefree divisors E of D.
    const auto& xdivs = F->xn1_divisors();
    auto divisor_slot = [&](const FqPoly& E) {
        for (std::size_t j = 0; j < xdivs.size(); ++j)
            if (poly_eq(xdivs[j], E)) return j;
        throw NotADivisor("cross_check: divisor not found");
    };
    double theta_D = mpz_get_d(poly_phi(D).get_mpz_t()) /
                     std::pow(static_cast<double>(F->q()), D.deg());
    struct AddTerm {
        std::size_t slot;
        double coeff;
    };
    std::vector<AddTerm> add_terms;
    for (const FqPoly& E : divisors_of(D)) {
        int mu = poly_mobius(E);
        if (mu == 0) continue;
        double phi_E = mpz_get_d(poly_phi(E).get_mpz_t());
        add_terms.push_back({divisor_slot(E), mu / phi_E});
    }

    for (std::uint64_t widx = 0; widx < card; ++widx) {
        FieldElement w = F->element_by_index(Int(static_cast<unsigned long>(widx)));
        if (!w.is_zero()) {
            std::complex<double> omega = 0.0;
            for (const CharTerm& term : mult_terms)
                omega += term.coeff * eval_mult_char(term.eta, w);
            omega *= theta_t;
            double expect = is_t_free(w, t) ? 1.0 : 0.0;
            if (std::abs(omega - expect) > tol) return false;
        }
        std::complex<double> cap_omega = 0.0;
        for (const AddTerm& term : add_terms) {
            std::complex<double> inner = 0.0;
            for (std::uint64_t dix : cache.delta_lists[term.slot]) {
                AddCharacter chi{F, F->element_by_index(Int(static_cast<unsigned long>(dix)))};
                inner += eval_add_char(chi, w);
            }
            cap_omega += term.coeff * inner;
        }
        cap_omega *= theta_D;
        double expect = is_poly_free(w, D) ? 1.0 : 0.0;
        if (std::abs(cap_omega - expect) > tol) return false;
    }
    return true;
}

bool trace_indicator_cross_check(const ExtensionField* F, unsigned m, const FieldElement& beta,
                                 double tol) {
    if (m == 0 || F->n() % m != 0) throw NotADivisor("trace cross-check: m must divide n");
    if (!F->in_subfield(beta, m))
        throw PreconditionViolated("trace cross-check: beta outside F_{q^m}");
    char_cache(F); // cap enforcement
    const std::uint64_t card = F->card().get_ui();

    std::vector<FieldElement> subfield;
    for (std::uint64_t idx = 0; idx < card; ++idx) {
        FieldElement w = F->element_by_index(Int(static_cast<unsigned long>(idx)));
        if (F->in_subfield(w, m)) subfield.push_back(w);
    }
    const double qm = std::pow(static_cast<double>(F->q()), m);
    if (static_cast<double>(subfield.size()) != qm)
        throw PreconditionViolated("trace cross-check: subfield enumeration failed");

    // alpha: any element with Tr_{q^n -> q^m}(alpha) = beta.
    FieldElement alpha = F->zero();
    bool found = false;
    for (std::uint64_t idx = 0; idx < card && !found; ++idx) {
        FieldElement w = F->element_by_index(Int(static_cast<unsigned long>(idx)));
        if (F->trace(w, m) == beta) {
            alpha = w;
            found = true;
        }
    }
    if (!found) throw PreconditionViolated("trace cross-check: no preimage for beta");

    for (std::uint64_t widx = 0; widx < card; ++widx) {
        FieldElement w = F->element_by_index(Int(static_cast<unsigned long>(widx)));
        std::complex<double> sum = 0.0;
        for (const FieldElement& c : subfield) {
            AddCharacter chi{F, c};
            sum += eval_add_char(chi, w) * std::conj(eval_add_char(chi, alpha));
        }
        sum /= qm;
        double expect = (F->trace(w, m) == beta) ? 1.0 : 0.0;
        if (std::abs(sum - expect) > tol) return false;
    }
    return true;
}

double count_expression_f1(const ExtensionField* F, unsigned m, const FieldElement& beta) {
    if (m == 0 || F->n() % m != 0) throw NotADivisor("count_expression_f1: m must divide n");
    if (!F->in_subfield(beta, m))
        throw PreconditionViolated("count_expression_f1: beta outside F_{q^m}");
    char_cache(F);
    const std::uint64_t card = F->card().get_ui();
    const double theta_Q = mpq_get_d(theta(F->order_factored()).get_mpq_t());

    FieldElement alpha = F->zero();
    bool found = false;
    for (std::uint64_t idx = 0; idx < card && !found; ++idx) {
        FieldElement w = F->element_by_index(Int(static_cast<unsigned long>(idx)));
        if (F->trace(w, m) == beta) {
            alpha = w;
            found = true;
        }
    }
    if (!found) throw PreconditionViolated("count_expression_f1: no preimage for beta");

    std::vector<FieldElement> subfield;
    for (std::uint64_t idx = 0; idx < card; ++idx) {
        FieldElement w = F->element_by_index(Int(static_cast<unsigned long>(idx)));
        if (F->in_subfield(w, m)) subfield.push_back(w);
    }

    std::vector<Int> qprimes = F->order_factored().primes();
    const std::size_t np = qprimes.size();

    std::complex<double> total = 0.0;
    for (const FieldElement& c : subfield) {
        AddCharacter chi_c{F, c};
        std::complex<double> a_c = std::conj(eval_add_char(chi_c, alpha));
        std::complex<double> inner = 0.0;
        for (std::size_t mask = 0; mask < (std::size_t(1) << np); ++mask) {
            Int d(1);
            int mu = 1;
            for (std::size_t b = 0; b < np; ++b)
                if (mask & (std::size_t(1) << b)) {
                    d *= qprimes[b];
                    mu = -mu;
                }
            const std::uint64_t dv = d.get_ui();
            const double phi_d = mpz_get_d(euler_phi(d).get_mpz_t());
            for (std::uint64_t idx = 0; idx < dv; ++idx) {
                if (std::gcd(idx, dv) != 1) continue;
                MultCharacter eta{F, dv, idx};
                inner += (mu / phi_d) * gauss_sum_g2(eta, chi_c);
            }
        }
        total += a_c * inner;
    }
    const double qm = std::pow(static_cast<double>(F->q()), m);
    double result = theta_Q / qm * total.real();
    if (beta.is_zero()) result -= theta_Q;
    return result;
}

} // namespace knormal
