#include "knormal/ffield.hpp"

#include <limits>
#include <map>
#include <mutex>
#include <tuple>

namespace knormal {

bool FieldElement::is_zero() const {
    for (std::uint64_t c : coords)
        if (c) return false;
    return true;
}

const ExtensionField* ExtensionField::build(std::uint64_t p, unsigned t, unsigned n,
                                            unsigned factor_cap_bits) {
    static std::mutex mu;
    static std::map<std::tuple<std::uint64_t, unsigned, unsigned>,
                    std::unique_ptr<ExtensionField>>
        registry;
    const auto key = std::make_tuple(p, t, n);
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = registry.find(key);
        if (it != registry.end()) return it->second.get();
    }

    if (n == 0) throw PreconditionViolated("ExtensionField: n >= 1");
    auto F = std::unique_ptr<ExtensionField>(new ExtensionField());
    F->fq_ = Fq::make(p, t);
    F->n_ = n;
    F->factor_cap_bits_ = factor_cap_bits;
    F->modulus_ = first_irreducible(F->fq_, n);
    F->xn1_ = x_pow_minus_one(F->fq_, n);
    F->card_ = pow_int(Int(static_cast<unsigned long>(F->fq_->q())), n);
    F->group_order_ = F->card_ - 1;
    F->fits_u64_ = F->group_order_ <= Int(std::numeric_limits<unsigned long>::max());

    FqPoly xq = poly_powmod(poly_x(F->fq_), Int(static_cast<unsigned long>(F->fq_->q())),
                            F->modulus_);
    F->frob_matrix_.resize(n);
    FqPoly cur = poly_one(F->fq_);
    for (unsigned j = 0; j < n; ++j) {
        std::vector<std::uint64_t> col(n, 0);
        for (unsigned r = 0; r < n; ++r) col[r] = cur.coeff(r);
        F->frob_matrix_[j] = std::move(col);
        cur = poly_mod(poly_mul(cur, xq), F->modulus_);
    }

    std::lock_guard<std::mutex> lock(mu);
    auto [it, inserted] = registry.emplace(key, std::move(F));
    return it->second.get();
}

void ExtensionField::require_mine(const FieldElement& w) const {
    if (w.F != this) throw FieldMismatch("element belongs to a different field");
}

std::uint64_t ExtensionField::group_order_u64() const {
    if (!fits_u64_) throw CapExceeded("group order exceeds 64 bits");
    return group_order_.get_ui();
}

const IntFactorization& ExtensionField::order_factored() const {
    std::call_once(order_once_, [&] {
        order_fac_ = factorize_prime_power_minus_one(Int(static_cast<unsigned long>(p())),
                                                     t() * n_, factor_cap_bits_);
    });
    return *order_fac_;
}

const std::vector<FqPoly>& ExtensionField::xn1_divisors() const {
    std::call_once(divisors_once_, [&] { divisors_ = divisors_of(xn1_); });
    return divisors_;
}

FieldElement ExtensionField::zero() const {
    return FieldElement{this, std::vector<std::uint64_t>(n_, 0)};
}

FieldElement ExtensionField::one() const {
    std::vector<std::uint64_t> c(n_, 0);
    c[0] = 1;
    return FieldElement{this, std::move(c)};
}

FieldElement ExtensionField::from_coords(std::vector<std::uint64_t> coords) const {
    if (coords.size() != n_) throw PreconditionViolated("from_coords: expected n coordinates");
    for (std::uint64_t c : coords)
        if (c >= q()) throw PreconditionViolated("from_coords: coordinate out of range");
    return FieldElement{this, std::move(coords)};
}

FieldElement ExtensionField::embed_scalar(std::uint64_t a) const {
    if (a >= q()) throw PreconditionViolated("embed_scalar: code out of range");
    std::vector<std::uint64_t> c(n_, 0);
    c[0] = a;
    return FieldElement{this, std::move(c)};
}

FieldElement ExtensionField::element_by_index(const Int& idx) const {
    if (idx < 0 || idx >= card_) throw PreconditionViolated("element_by_index: out of range");
    std::vector<std::uint64_t> c(n_, 0);
    Int rest = idx;
    const Int q_big(static_cast<unsigned long>(q()));
    for (unsigned j = 0; j < n_; ++j) {
        Int digit = rest % q_big;
        c[j] = digit.get_ui();
        rest /= q_big;
    }
    return FieldElement{this, std::move(c)};
}

Int ExtensionField::index_of(const FieldElement& w) const {
    require_mine(w);
    Int idx(0);
    const Int q_big(static_cast<unsigned long>(q()));
    for (unsigned j = n_; j-- > 0;) idx = idx * q_big + Int(static_cast<unsigned long>(w.coords[j]));
    return idx;
}

FieldElement ExtensionField::add(const FieldElement& a, const FieldElement& b) const {
    require_mine(a);
    require_mine(b);
    std::vector<std::uint64_t> c(n_);
    for (unsigned j = 0; j < n_; ++j) c[j] = fq_->add(a.coords[j], b.coords[j]);
    return FieldElement{this, std::move(c)};
}

FieldElement ExtensionField::sub(const FieldElement& a, const FieldElement& b) const {
    return add(a, neg(b));
}

FieldElement ExtensionField::neg(const FieldElement& a) const {
    require_mine(a);
    std::vector<std::uint64_t> c(n_);
    for (unsigned j = 0; j < n_; ++j) c[j] = fq_->neg(a.coords[j]);
    return FieldElement{this, std::move(c)};
}

FieldElement ExtensionField::mul(const FieldElement& a, const FieldElement& b) const {
    require_mine(a);
    require_mine(b);
    std::vector<std::uint64_t> prod(2 * n_ - 1, 0);
    for (unsigned i = 0; i < n_; ++i) {
        if (!a.coords[i]) continue;
        for (unsigned j = 0; j < n_; ++j) {
            if (!b.coords[j]) continue;
            prod[i + j] = fq_->add(prod[i + j], fq_->mul(a.coords[i], b.coords[j]));
        }
    }
    // Reduce by the monic modulus.
    for (unsigned d = 2 * n_ - 2; d >= n_ && d < 2 * n_; --d) {
        std::uint64_t lead = prod[d];
        if (lead) {
            prod[d] = 0;
            for (unsigned j = 0; j < n_; ++j) {
                std::uint64_t sub = fq_->mul(lead, modulus_.coeff(j));
                prod[d - n_ + j] = fq_->sub(prod[d - n_ + j], sub);
            }
        }
        if (d == n_) break;
    }
    prod.resize(n_);
    return FieldElement{this, std::move(prod)};
}

FieldElement ExtensionField::scalar_mul(std::uint64_t s, const FieldElement& a) const {
    require_mine(a);
    std::vector<std::uint64_t> c(n_);
    for (unsigned j = 0; j < n_; ++j) c[j] = fq_->mul(s, a.coords[j]);
    return FieldElement{this, std::move(c)};
}

FieldElement ExtensionField::inv(const FieldElement& a) const {
    require_mine(a);
    if (a.is_zero()) throw ZeroElement("ExtensionField::inv(0)");
    FqPoly ap = make_poly(fq_, a.coords);
    PolyXgcd x = poly_xgcd(ap, modulus_);
    if (x.g.deg() != 0) throw PreconditionViolated("inv: modulus not irreducible?");
    FqPoly s = poly_mod(x.s, modulus_);
    std::vector<std::uint64_t> c(n_, 0);
    for (unsigned j = 0; j < n_; ++j) c[j] = s.coeff(j);
    return FieldElement{this, std::move(c)};
}

FieldElement ExtensionField::pow(const FieldElement& a, const Int& e) const {
    require_mine(a);
    if (e < 0) throw PreconditionViolated("pow: e >= 0");
    if (a.is_zero()) return e == 0 ? one() : zero();
    Int k = e % group_order_;
    FieldElement r = one(), base = a;
    std::size_t bits = mpz_sizeinbase(k.get_mpz_t(), 2);
    if (k == 0) return r;
    for (std::size_t i = 0; i < bits; ++i) {
        if (mpz_tstbit(k.get_mpz_t(), i)) r = mul(r, base);
        if (i + 1 < bits) base = mul(base, base);
    }
    return r;
}

FieldElement ExtensionField::frobenius(const FieldElement& w, unsigned i) const {
    require_mine(w);
    i %= n_;
    FieldElement cur = w;
    for (unsigned step = 0; step < i; ++step) {
        std::vector<std::uint64_t> out(n_, 0);
        for (unsigned j = 0; j < n_; ++j) {
            std::uint64_t wj = cur.coords[j];
            if (!wj) continue;
            const auto& col = frob_matrix_[j];
            for (unsigned r = 0; r < n_; ++r)
                if (col[r]) out[r] = fq_->add(out[r], fq_->mul(wj, col[r]));
        }
        cur.coords = std::move(out);
    }
    return cur;
}

std::vector<FieldElement> ExtensionField::conjugates(const FieldElement& w) const {
    require_mine(w);
    std::vector<FieldElement> out;
    out.reserve(n_);
    out.push_back(w);
    for (unsigned i = 1; i < n_; ++i) out.push_back(frobenius(out.back(), 1));
    return out;
}

FieldElement ExtensionField::trace(const FieldElement& w, unsigned m) const {
    require_mine(w);
    if (m == 0 || n_ % m != 0) throw NotADivisor("trace: m must divide n");
    FieldElement acc = w, cur = w;
    for (unsigned i = 1; i < n_ / m; ++i) {
        cur = frobenius(cur, m);
        acc = add(acc, cur);
    }
    return acc;
}

std::uint64_t ExtensionField::trace_to_fq(const FieldElement& w) const {
    FieldElement tr = trace(w, 1);
    for (unsigned j = 1; j < n_; ++j)
        if (tr.coords[j]) throw PreconditionViolated("trace_to_fq: trace not in base field");
    return tr.coords[0];
}

bool ExtensionField::in_subfield(const FieldElement& w, unsigned m) const {
    require_mine(w);
    if (m == 0 || n_ % m != 0) throw NotADivisor("in_subfield: m must divide n");
    return frobenius(w, m) == w;
}

Int ExtensionField::mult_order(const FieldElement& w) const {
    require_mine(w);
    if (w.is_zero()) throw ZeroElement("mult_order(0)");
    Int e = group_order_;
    for (const auto& [rho, k] : order_factored().factors) {
        for (unsigned i = 0; i <= k; ++i) {
            if (e % rho != 0) break;
            Int cand = e / rho;
            if (pow(w, cand) == one())
                e = cand;
            else
                break;
        }
    }
    return e;
}

bool ExtensionField::is_r_primitive(const FieldElement& w, const Int& r) const {
    require_mine(w);
    if (r < 1 || group_order_ % r != 0) throw NotADivisor("is_r_primitive: r must divide q^n - 1");
    if (w.is_zero()) throw ZeroElement("is_r_primitive(0)");
    return mult_order(w) * r == group_order_;
}

const FieldElement& ExtensionField::generator() const {
    std::call_once(generator_once_, [&] {
        const auto& fac = order_factored();
        std::vector<Int> checks;
        for (const Int& rho : fac.primes()) checks.push_back(group_order_ / rho);
        for (Int idx(1); idx < card_; ++idx) {
            FieldElement w = element_by_index(idx);
            bool ok = true;
            for (const Int& e : checks) {
                if (pow(w, e) == one()) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                generator_ = w;
                return;
            }
        }
        throw PreconditionViolated("generator: none found");
    });
    return *generator_;
}

} // namespace knormal
