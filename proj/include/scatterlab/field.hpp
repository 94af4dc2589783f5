#pragma once

// Finite fields F_p, F_q = F_{p^e} and the tower F_q ⊂ F_{q^m}.
//
// Elements are integer codes. A field of degree d over its base stores
// c_0 + c_1 y + ... + c_{d-1} y^{d-1} as the code sum c_j * r^j (r = base
// order), so the base field sits inside as the codes [0, r). Addition is
// digit-wise mod p in every level of a tower.

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace scatterlab {

using Elem = std::uint32_t;
/// Polynomial over some field, coefficients from low to high degree.
using Poly = std::vector<Elem>;

inline constexpr std::uint64_t kMaxFieldOrder = std::uint64_t{1} << 20;

bool is_prime(std::uint64_t n);

class Field {
public:
    static std::shared_ptr<const Field> prime(std::uint32_t p);
    /// Extension of `base` by a monic irreducible `modulus`; throws
    /// ValidationError when the modulus is reducible or not monic.
    static std::shared_ptr<const Field> extension(std::shared_ptr<const Field> base, Poly modulus);

    /// Lexicographically least monic irreducible polynomial of the given
    /// degree over `base` (lower coefficients read as a base-r integer).
    static Poly least_irreducible(const Field& base, unsigned degree);
    static bool is_irreducible(const Field& base, const Poly& f);

    std::uint32_t order() const { return order_; }
    std::uint32_t characteristic() const { return p_; }
    /// Degree over the immediate base (1 for a prime field).
    unsigned degree() const { return degree_; }
    /// Degree over the prime field.
    unsigned absolute_degree() const { return abs_degree_; }
    const std::shared_ptr<const Field>& base() const { return base_; }
    std::uint32_t base_order() const { return base_ ? base_->order() : order_; }
    const Poly& modulus() const { return modulus_; }

    Elem add(Elem a, Elem b) const
    {
        if (p_ == 2) return a ^ b;
        if (!add_table_.empty()) return add_table_[a * order_ + b];
        return add_digits(a, b);
    }
    Elem neg(Elem a) const;
    Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
    Elem mul(Elem a, Elem b) const
    {
        if (a == 0 || b == 0) return 0;
        return exp_[log_[a] + log_[b]];
    }
    Elem inv(Elem a) const;
    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
    Elem pow(Elem a, std::uint64_t e) const;
    /// Discrete log w.r.t. the field's fixed primitive element; a != 0.
    std::uint32_t log(Elem a) const { return log_[a]; }
    Elem primitive() const { return exp_[1]; }

    /// Coefficient j of `a` over the immediate base field.
    Elem digit(Elem a, unsigned j) const;
    Elem from_digits(std::span<const Elem> digits) const;

private:
    Field() = default;
    Elem add_digits(Elem a, Elem b) const;
    void build_tables(const std::vector<Elem>& exp_cycle);

    std::uint32_t p_ = 0;
    std::uint32_t order_ = 0;
    unsigned degree_ = 1;
    unsigned abs_degree_ = 1;
    std::shared_ptr<const Field> base_;
    Poly modulus_;
    std::vector<Elem> exp_;
    std::vector<std::uint32_t> log_;
    std::vector<Elem> add_table_;
    std::vector<Elem> neg_;
};

namespace poly {
Poly trim(Poly a);
Poly mul(const Field& f, const Poly& a, const Poly& b);
/// a mod m (m monic or with invertible leading coefficient).
Poly mod(const Field& f, Poly a, const Poly& m);
Poly gcd(const Field& f, Poly a, Poly b);
Poly powmod(const Field& f, Poly a, std::uint64_t e, const Poly& m);
}  // namespace poly

/// F_p ⊂ F_q = F_{p^e} ⊂ F_{q^m}, with an ordered F_q-basis of the top field.
class FieldTower {
public:
    /// `moduli` = (base modulus of degree e over F_p, top modulus of degree
    /// m over F_q). Defaults are the least irreducible polynomials.
    static FieldTower make(std::uint32_t p, unsigned e, unsigned m,
                           std::optional<std::pair<Poly, Poly>> moduli = std::nullopt);

    const Field& base() const { return *base_; }
    const Field& top() const { return *top_; }
    const std::shared_ptr<const Field>& base_ptr() const { return base_; }
    const std::shared_ptr<const Field>& top_ptr() const { return top_; }

    std::uint32_t p() const { return base_->characteristic(); }
    unsigned e() const { return base_->absolute_degree(); }
    std::uint32_t q() const { return base_->order(); }
    unsigned m() const { return m_; }
    std::uint32_t qm() const { return top_->order(); }

    /// x^{q^i}
    Elem frobenius(Elem x, unsigned i) const;
    /// Tr_{q^m/q}(x), returned as a base-field code.
    Elem trace(Elem x) const;

    std::vector<Elem> coords(Elem x) const;
    Elem uncoords(std::span<const Elem> c) const;
    const std::vector<Elem>& basis() const { return basis_; }
    bool has_polynomial_basis() const { return poly_basis_; }
    /// Same fields with a different ordered F_q-basis of the top field.
    FieldTower with_basis(std::vector<Elem> basis) const;

    /// True for towers built from the same moduli (bases may differ).
    bool same_fields(const FieldTower& other) const;

private:
    std::shared_ptr<const Field> base_;
    std::shared_ptr<const Field> top_;
    unsigned m_ = 1;
    std::vector<Elem> basis_;
    bool poly_basis_ = true;
    // Row j holds polynomial-basis digits of the j-th dual coordinate map.
    std::vector<Elem> to_basis_;
};

}  // namespace scatterlab
