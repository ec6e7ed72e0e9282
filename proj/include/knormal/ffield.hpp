#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "knormal/fqpoly.hpp"

namespace knormal {

class ExtensionField;

// Element of F_{q^n}: n coordinates over F_q (codes in [0, q)) in the power
// basis of the field's modulus, lowest degree first. The field pointer stays
// valid for the life of the process (fields live in a global registry).
struct FieldElement {
    const ExtensionField* F = nullptr;
    std::vector<std::uint64_t> coords;

    bool operator==(const FieldElement& o) const { return F == o.F && coords == o.coords; }
    bool operator!=(const FieldElement& o) const { return !(*this == o); }
    bool is_zero() const;
};

// Caps for exhaustive scans and factorization width.
struct Limits {
    Int exhaustive_cap = Int(100000000);
    unsigned factor_cap_bits = 128;
};

// The tower F_p < F_q < F_{q^n} with q = p^t. Construction picks the
// canonical modulus (first monic irreducible of degree n over F_q) and is
// cached per (p, t, n) for the life of the process.
class ExtensionField {
public:
    static const ExtensionField* build(std::uint64_t p, unsigned t, unsigned n,
                                       unsigned factor_cap_bits = 128);

    std::uint64_t p() const { return fq_->p(); }
    unsigned t() const { return fq_->t(); }
    std::uint64_t q() const { return fq_->q(); }
    unsigned n() const { return n_; }
    const std::shared_ptr<const Fq>& fq() const { return fq_; }
    const FqPoly& modulus() const { return modulus_; }

    const Int& card() const { return card_; }              // q^n
    const Int& group_order() const { return group_order_; } // q^n - 1
    bool group_order_fits_u64() const { return fits_u64_; }
    std::uint64_t group_order_u64() const;

    const IntFactorization& order_factored() const; // of q^n - 1, lazy
    const FqPoly& xn_minus_one() const { return xn1_; }
    const std::vector<FqPoly>& xn1_divisors() const; // canonical order, lazy

    FieldElement zero() const;
    FieldElement one() const;
    FieldElement from_coords(std::vector<std::uint64_t> coords) const;
    FieldElement embed_scalar(std::uint64_t a) const; // element of F_q

    // Enumeration index sum_j coords[j] q^j, a bijection [0, q^n) <-> field.
    FieldElement element_by_index(const Int& idx) const;
    Int index_of(const FieldElement& w) const;

    FieldElement add(const FieldElement& a, const FieldElement& b) const;
    FieldElement sub(const FieldElement& a, const FieldElement& b) const;
    FieldElement neg(const FieldElement& a) const;
    FieldElement mul(const FieldElement& a, const FieldElement& b) const;
    FieldElement scalar_mul(std::uint64_t s, const FieldElement& a) const;
    FieldElement inv(const FieldElement& a) const;
    FieldElement pow(const FieldElement& a, const Int& e) const;

    // w^(q^i), reduced mod n.
    FieldElement frobenius(const FieldElement& w, unsigned i) const;
    // (w, w^q, ..., w^(q^(n-1))).
    std::vector<FieldElement> conjugates(const FieldElement& w) const;

    // Tr_{q^n -> q^m}(w); m must divide n. Result lies in the subfield F_{q^m}.
    FieldElement trace(const FieldElement& w, unsigned m) const;
    // Code of Tr_{q^n -> q}(w) in F_q.
    std::uint64_t trace_to_fq(const FieldElement& w) const;
    bool in_subfield(const FieldElement& w, unsigned m) const;

    Int mult_order(const FieldElement& w) const;
    bool is_r_primitive(const FieldElement& w, const Int& r) const;
    const FieldElement& generator() const; // first primitive element by index

private:
    ExtensionField() = default;
    void require_mine(const FieldElement& w) const;

    std::shared_ptr<const Fq> fq_;
    unsigned n_ = 0;
    unsigned factor_cap_bits_ = 128;
    FqPoly modulus_;
    FqPoly xn1_;
    Int card_, group_order_;
    bool fits_u64_ = false;

    // Frobenius matrix: column j holds the coordinates of (x^j)^q mod modulus.
    std::vector<std::vector<std::uint64_t>> frob_matrix_;

    mutable std::once_flag order_once_, divisors_once_, generator_once_;
    mutable std::optional<IntFactorization> order_fac_;
    mutable std::vector<FqPoly> divisors_;
    mutable std::optional<FieldElement> generator_;
};

} // namespace knormal
