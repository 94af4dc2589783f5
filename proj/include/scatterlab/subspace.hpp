#pragma once

// Subspaces of F_q^N in canonical RREF, lattice operations, and the
// Grassmannian (enumeration and uniform sampling).

#include <cstdint>
#include <functional>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "scatterlab/linalg.hpp"

namespace scatterlab {

class Subspace {
public:
    /// The zero subspace of F^N.
    Subspace(std::shared_ptr<const Field> field, std::size_t N);

    /// Row space of `generators` (any shape with N columns).
    static Subspace span(std::shared_ptr<const Field> field, std::size_t N, Matrix generators);
    static Subspace span(std::shared_ptr<const Field> field, std::size_t N, const std::vector<Vec>& generators);
    static Subspace full(std::shared_ptr<const Field> field, std::size_t N);

    const Field& field() const { return *field_; }
    const std::shared_ptr<const Field>& field_ptr() const { return field_; }
    std::size_t ambient_dim() const { return N_; }
    std::size_t dim() const { return basis_.rows; }
    const Matrix& basis() const { return basis_; }
    const std::vector<std::size_t>& pivots() const { return pivots_; }

    bool contains(std::span<const Elem> v) const;
    bool contains(const Subspace& other) const;

    /// {x : <b, x> = 0 for every basis row b}, the right kernel of the basis.
    Subspace annihilator() const;

    /// Linear combination of the basis rows.
    Vec combine(std::span<const Elem> coeffs) const;
    /// Image under the linear map v -> v * M (M has N rows).
    Subspace image(const Matrix& M) const;

    std::string key() const;

    bool operator==(const Subspace& o) const { return N_ == o.N_ && basis_ == o.basis_; }
    bool operator<(const Subspace& o) const
    {
        if (N_ != o.N_) return N_ < o.N_;
        if (basis_.rows != o.basis_.rows) return basis_.rows < o.basis_.rows;
        return basis_.a < o.basis_.a;
    }

private:
    std::shared_ptr<const Field> field_;
    std::size_t N_;
    Matrix basis_;
    std::vector<std::size_t> pivots_;
};

Subspace join(const Subspace& U, const Subspace& V);
Subspace meet(const Subspace& U, const Subspace& V);
std::size_t meet_dim(const Subspace& U, const Subspace& V);

/// Exhaustive iteration of all k-subspaces of F^N, ordered by pivot
/// pattern (lexicographic) and then by free entries.
class GrassmannianCursor {
public:
    GrassmannianCursor(std::shared_ptr<const Field> field, std::size_t N, std::size_t k);
    /// Advances to the next subspace; false once exhausted.
    bool next();
    const Subspace& current() const { return *current_; }
    std::uint64_t visited() const { return visited_; }

private:
    bool next_pivots();
    void setup_pattern();
    void build();

    std::shared_ptr<const Field> field_;
    std::size_t N_, k_;
    std::vector<std::size_t> pivots_;
    std::vector<std::pair<std::size_t, std::size_t>> free_;
    std::vector<Elem> digits_;
    bool started_ = false;
    bool done_ = false;
    std::uint64_t visited_ = 0;
    std::unique_ptr<Subspace> current_;
};

/// Approximate [N choose k]_q as a double (for guards).
double gauss_binomial_approx(std::size_t N, std::size_t k, double q);

inline constexpr double kGrassmannianGuard = 1e8;

void for_each_subspace(std::shared_ptr<const Field> field, std::size_t N, std::size_t k,
                       const std::function<void(const Subspace&)>& fn);

/// Uniform sample from the Grassmannian by rank rejection.
Subspace sample_subspace(std::shared_ptr<const Field> field, std::size_t N, std::size_t k, std::mt19937_64& rng);
Subspace sample_subspace(std::shared_ptr<const Field> field, std::size_t N, std::size_t k, std::uint64_t seed);

/// Field of order q with the default (least irreducible) modulus.
std::shared_ptr<const Field> field_of_order(std::uint32_t q);
/// Splits q = p^e; throws ValidationError if q is not a prime power.
std::pair<std::uint32_t, unsigned> prime_power(std::uint64_t q);

}  // namespace scatterlab
