#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "knormal/errors.hpp"
#include "knormal/intarith.hpp"

namespace knormal {

// Base coefficient field F_q, q = p^t. Elements are integer codes in [0, q):
// for t = 1 the code is the residue itself; for t > 1 the code is
// sum_j d_j p^j over the coordinates d_j of the element in the power basis of
// the canonical degree-t modulus over F_p. Arithmetic for t > 1 runs on
// exp/log tables, so q is capped at 2^22.
class Fq {
public:
    // Cached per (p, t); returned pointers are canonical for the process.
    static std::shared_ptr<const Fq> make(std::uint64_t p, unsigned t);

    std::uint64_t p() const { return p_; }
    unsigned t() const { return t_; }
    std::uint64_t q() const { return q_; }

    // Degree-t modulus over F_p, coefficients lowest-first (size t+1, monic).
    // For t = 1 this is x.
    const std::vector<std::uint64_t>& base_modulus() const { return base_modulus_; }

    std::uint64_t add(std::uint64_t a, std::uint64_t b) const;
    std::uint64_t sub(std::uint64_t a, std::uint64_t b) const;
    std::uint64_t neg(std::uint64_t a) const;
    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const;
    std::uint64_t inv(std::uint64_t a) const;
    std::uint64_t pow_u(std::uint64_t a, std::uint64_t e) const;
    std::uint64_t pow(std::uint64_t a, const Int& e) const;

    // a^p (the F_p-Frobenius inside F_q).
    std::uint64_t frob_p(std::uint64_t a) const;

    // Tr_{q/p}(a) as a residue in [0, p).
    std::uint64_t abs_trace(std::uint64_t a) const;

    // Coordinates of the code in the power basis, t entries in [0, p).
    std::vector<std::uint64_t> digits(std::uint64_t a) const;
    std::uint64_t from_digits(const std::vector<std::uint64_t>& d) const;

    // Code of a generator of the multiplicative group (t > 1: basis of the
    // exp table; t = 1: smallest primitive root).
    std::uint64_t generator_code() const { return gen_; }

private:
    Fq() = default;
    static std::shared_ptr<const Fq> build(std::uint64_t p, unsigned t);

    std::uint64_t p_ = 0;
    unsigned t_ = 0;
    std::uint64_t q_ = 0;
    std::uint64_t gen_ = 0;
    std::vector<std::uint64_t> base_modulus_;
    std::vector<std::uint32_t> log_;       // t > 1, size q, log_[0] unused
    std::vector<std::uint32_t> exp_;       // t > 1, size 2(q-1)
    std::vector<std::uint32_t> trace_tab_; // t > 1, size q
};

} // namespace knormal
