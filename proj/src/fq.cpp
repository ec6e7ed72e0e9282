#include "knormal/fq.hpp"

#include <map>
#include <mutex>
#include <tuple>

#include "knormal/fqpoly.hpp"

namespace knormal {

namespace {

constexpr std::uint64_t kTableCap = std::uint64_t(1) << 22;

std::uint64_t mulmod_p(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

std::uint64_t powmod_p(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1 % p;
    a %= p;
    while (e) {
        if (e & 1) r = mulmod_p(r, a, p);
        a = mulmod_p(a, a, p);
        e >>= 1;
    }
    return r;
}

// Dense polynomial representative over F_p of length t (residue vector) with
// arithmetic modulo a fixed monic modulus; local helper for table building.
struct PPoly {
    std::vector<std::uint64_t> c; // length t
};

PPoly ppoly_mul(const PPoly& a, const PPoly& b, const std::vector<std::uint64_t>& mod,
                std::uint64_t p) {
    const std::size_t t = mod.size() - 1;
    std::vector<std::uint64_t> prod(2 * t - 1, 0);
    for (std::size_t i = 0; i < t; ++i) {
        if (!a.c[i]) continue;
        for (std::size_t j = 0; j < t; ++j) {
            if (!b.c[j]) continue;
            prod[i + j] = (prod[i + j] + mulmod_p(a.c[i], b.c[j], p)) % p;
        }
    }
    for (std::size_t d = 2 * t - 2; d >= t; --d) {
        std::uint64_t lead = prod[d];
        if (lead) {
            prod[d] = 0;
            for (std::size_t j = 0; j < t; ++j) {
                std::uint64_t sub = mulmod_p(lead, mod[j], p);
                std::size_t idx = d - t + j;
                prod[idx] = (prod[idx] + p - sub) % p;
            }
        }
        if (d == t) break;
    }
    prod.resize(t);
    return PPoly{std::move(prod)};
}

bool ppoly_is_one(const PPoly& a) {
    if (a.c[0] != 1) return false;
    for (std::size_t i = 1; i < a.c.size(); ++i)
        if (a.c[i]) return false;
    return true;
}

PPoly ppoly_pow(PPoly base, Int e, const std::vector<std::uint64_t>& mod, std::uint64_t p) {
    const std::size_t t = mod.size() - 1;
    PPoly r{std::vector<std::uint64_t>(t, 0)};
    r.c[0] = 1;
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) r = ppoly_mul(r, base, mod, p);
        base = ppoly_mul(base, base, mod, p);
        e >>= 1;
    }
    return r;
}

std::uint64_t ppoly_code(const PPoly& a, std::uint64_t p) {
    std::uint64_t code = 0;
    for (std::size_t i = a.c.size(); i-- > 0;) code = code * p + a.c[i];
    return code;
}

PPoly code_ppoly(std::uint64_t code, std::uint64_t p, std::size_t t) {
    PPoly a{std::vector<std::uint64_t>(t, 0)};
    for (std::size_t i = 0; i < t; ++i) {
        a.c[i] = code % p;
        code /= p;
    }
    return a;
}

} // namespace

std::shared_ptr<const Fq> Fq::make(std::uint64_t p, unsigned t) {
    static std::mutex mu;
    static std::map<std::pair<std::uint64_t, unsigned>, std::shared_ptr<const Fq>> cache;
    const auto key = std::make_pair(p, t);
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }

    // Construct outside the lock: the t > 1 path recurses into make(p, 1).
    std::shared_ptr<const Fq> built = build(p, t);

    std::lock_guard<std::mutex> lock(mu);
    auto [it, inserted] = cache.emplace(key, built);
    return it->second;
}

std::shared_ptr<const Fq> Fq::build(std::uint64_t p, unsigned t) {
    if (t == 0) throw PreconditionViolated("Fq: t >= 1");
    if (!is_probable_prime(Int(p))) throw NotPrime("Fq: p = " + std::to_string(p));

    auto F = std::shared_ptr<Fq>(new Fq());
    F->p_ = p;
    F->t_ = t;

    if (t == 1) {
        F->q_ = p;
        F->base_modulus_ = {0, 1};
        IntFactorization fac = factorize(Int(p - 1));
        for (std::uint64_t g = 2;; ++g) {
            bool ok = true;
            for (const Int& r : fac.primes()) {
                std::uint64_t e = (p - 1) / r.get_ui();
                if (powmod_p(g, e, p) == 1) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                F->gen_ = g;
                break;
            }
        }
        return F;
    }

    Int q_big = pow_int(Int(p), t);
    if (q_big > kTableCap) throw CapExceeded("Fq: p^t exceeds the table cap 2^22");
    const std::uint64_t q = q_big.get_ui();
    F->q_ = q;

    auto prime = Fq::make(p, 1);
    FqPoly modulus = first_irreducible(prime, t);
    F->base_modulus_ = modulus.c;

    IntFactorization fac = factorize(Int(q - 1));
    std::vector<std::uint64_t> qdivs;
    for (const Int& r : fac.primes()) qdivs.push_back((q - 1) / r.get_ui());

    std::uint64_t gen_code = 0;
    for (std::uint64_t cand = 2; cand < q; ++cand) {
        PPoly a = code_ppoly(cand, p, t);
        bool ok = true;
        for (std::uint64_t e : qdivs) {
            if (ppoly_is_one(ppoly_pow(a, Int(e), modulus.c, p))) {
                ok = false;
                break;
            }
        }
        if (ok) {
            gen_code = cand;
            break;
        }
    }
    F->gen_ = gen_code;

    F->log_.assign(q, 0);
    F->exp_.assign(2 * (q - 1), 0);
    PPoly g = code_ppoly(gen_code, p, t);
    PPoly cur{std::vector<std::uint64_t>(t, 0)};
    cur.c[0] = 1;
    for (std::uint64_t i = 0; i < q - 1; ++i) {
        std::uint64_t code = ppoly_code(cur, p);
        F->exp_[i] = static_cast<std::uint32_t>(code);
        F->exp_[i + (q - 1)] = static_cast<std::uint32_t>(code);
        F->log_[code] = static_cast<std::uint32_t>(i);
        cur = ppoly_mul(cur, g, modulus.c, p);
    }

    F->trace_tab_.assign(q, 0);
    for (std::uint64_t a = 1; a < q; ++a) {
        std::uint64_t acc = a, conj = a;
        for (unsigned j = 1; j < t; ++j) {
            conj = F->frob_p(conj);
            acc = F->add(acc, conj);
        }
        // The trace lies in F_p, so the code is the residue itself.
        F->trace_tab_[a] = static_cast<std::uint32_t>(acc);
    }

    return F;
}

std::uint64_t Fq::add(std::uint64_t a, std::uint64_t b) const {
    if (t_ == 1) {
        std::uint64_t s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    std::uint64_t out = 0, mult = 1;
    for (unsigned j = 0; j < t_; ++j) {
        std::uint64_t da = a % p_, db = b % p_;
        a /= p_;
        b /= p_;
        std::uint64_t s = da + db;
        if (s >= p_) s -= p_;
        out += s * mult;
        mult *= p_;
    }
    return out;
}

std::uint64_t Fq::sub(std::uint64_t a, std::uint64_t b) const { return add(a, neg(b)); }

std::uint64_t Fq::neg(std::uint64_t a) const {
    if (t_ == 1) return a ? p_ - a : 0;
    std::uint64_t out = 0, mult = 1;
    for (unsigned j = 0; j < t_; ++j) {
        std::uint64_t d = a % p_;
        a /= p_;
        out += (d ? p_ - d : 0) * mult;
        mult *= p_;
    }
    return out;
}

std::uint64_t Fq::mul(std::uint64_t a, std::uint64_t b) const {
    if (t_ == 1) return mulmod_p(a, b, p_);
    if (!a || !b) return 0;
    return exp_[log_[a] + log_[b]];
}

std::uint64_t Fq::inv(std::uint64_t a) const {
    if (!a) throw ZeroElement("Fq::inv(0)");
    if (t_ == 1) return powmod_p(a, p_ - 2, p_);
    std::uint64_t l = log_[a];
    return exp_[l ? (q_ - 1 - l) : 0];
}

std::uint64_t Fq::pow_u(std::uint64_t a, std::uint64_t e) const {
    if (!a) return e == 0 ? 1 : 0;
    if (t_ == 1) return powmod_p(a, e, p_);
    std::uint64_t r = (static_cast<unsigned __int128>(log_[a]) * (e % (q_ - 1))) % (q_ - 1);
    return exp_[r];
}

std::uint64_t Fq::pow(std::uint64_t a, const Int& e) const {
    if (e < 0) throw PreconditionViolated("Fq::pow: e >= 0");
    if (!a) return e == 0 ? 1 : 0;
    std::uint64_t r = mpz_fdiv_ui(e.get_mpz_t(), q_ - 1);
    return pow_u(a, r);
}

std::uint64_t Fq::frob_p(std::uint64_t a) const {
    if (t_ == 1) return a;
    if (!a) return 0;
    std::uint64_t r = (static_cast<unsigned __int128>(log_[a]) * (p_ % (q_ - 1))) % (q_ - 1);
    return exp_[r];
}

std::uint64_t Fq::abs_trace(std::uint64_t a) const {
    if (t_ == 1) return a;
    return trace_tab_[a];
}

std::vector<std::uint64_t> Fq::digits(std::uint64_t a) const {
    std::vector<std::uint64_t> d(t_);
    for (unsigned j = 0; j < t_; ++j) {
        d[j] = a % p_;
        a /= p_;
    }
    return d;
}

std::uint64_t Fq::from_digits(const std::vector<std::uint64_t>& d) const {
    if (d.size() != t_) throw PreconditionViolated("Fq::from_digits: wrong length");
    std::uint64_t code = 0;
    for (std::size_t i = d.size(); i-- > 0;) {
        if (d[i] >= p_) throw PreconditionViolated("Fq::from_digits: digit out of range");
        code = code * p_ + d[i];
    }
    return code;
}

} // namespace knormal
