#pragma once

// X = F_{q^m}^n viewed as the F_q-space F_q^{mn}. Coordinate i*m + j is the
// j-th F_q-coordinate of x_i in the tower's basis.

#include <cstdint>
#include <functional>
#include <optional>

#include "scatterlab/subspace.hpp"

namespace scatterlab {

class Ambient {
public:
    Ambient(FieldTower tower, std::size_t n);

    const FieldTower& tower() const { return tower_; }
    const Field& base() const { return tower_.base(); }
    const Field& top() const { return tower_.top(); }
    const std::shared_ptr<const Field>& base_ptr() const { return tower_.base_ptr(); }
    const std::shared_ptr<const Field>& top_ptr() const { return tower_.top_ptr(); }
    std::size_t n() const { return n_; }
    std::size_t m() const { return tower_.m(); }
    std::size_t N() const { return n_ * tower_.m(); }
    std::uint32_t q() const { return tower_.q(); }
    std::uint32_t qm() const { return tower_.qm(); }

    /// F_{q^m}^n -> F_q^{mn}
    Vec expand(std::span<const Elem> x) const;
    /// F_q^{mn} -> F_{q^m}^n
    Vec contract(std::span<const Elem> v) const;

    /// F_q-expansion of the F_{q^m}-span of the given F_{q^m}-vectors.
    Subspace fq_expansion(const std::vector<Vec>& fqm_generators) const;
    Subspace fq_expansion(const Subspace& W) const;
    /// F_{q^m}-span of an F_q-subspace, as a subspace of F_{q^m}^n.
    Subspace fqm_span(const Subspace& U) const;

    /// Scales x so its first nonzero coordinate is 1 (x != 0).
    Vec normalize(Vec x) const;
    /// Injective code of a normalized F_{q^m}-vector: sum x_i Q^i, Q = q^m.
    std::uint64_t point_key(std::span<const Elem> normalized) const;
    Vec point_from_key(std::uint64_t key) const;
    /// Number of points (q^{mn}-1)/(q^m-1).
    std::uint64_t point_count() const;
    /// Calls fn for every normalized nonzero vector of F_{q^m}^n.
    void for_each_point(const std::function<void(const Vec&)>& fn) const;

    /// True when q = 2^e and mn*e <= 64, enabling word-packed vectors.
    bool packable() const { return packable_; }
    unsigned bits_per_coord() const { return bits_; }

private:
    FieldTower tower_;
    std::size_t n_;
    bool packable_ = false;
    unsigned bits_ = 0;
};

/// Enumerates one representative per F_q-projective class of nonzero vectors
/// of U (leading coefficient 1 on the basis). Stops early when fn returns false.
void for_each_projective_vector(const Subspace& U, const std::function<bool(const Vec&)>& fn);

/// log_q(c(q-1)+1) for a projective point count c; throws if not a power.
unsigned dim_from_point_count(std::uint64_t count, std::uint64_t q);
/// (q^d - 1)/(q - 1)
std::uint64_t point_count_of_dim(unsigned d, std::uint64_t q);

}  // namespace scatterlab
