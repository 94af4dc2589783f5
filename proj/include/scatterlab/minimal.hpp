#pragma once

// Linear sets, cutting blocking sets and minimal vector rank-metric codes.

#include <map>
#include <optional>

#include "scatterlab/ambient.hpp"

namespace scatterlab {

/// Points <u>_{F_{q^m}} for u in U \ {0}, with weights dim(U ∩ <u>).
struct LinearSet {
    Ambient X;
    Subspace U;
    /// point key -> weight
    std::map<std::uint64_t, unsigned> points;

    std::size_t rank() const { return U.dim(); }
    std::size_t size() const { return points.size(); }
    /// sum_P (q^{w(P)} - 1) == q^rank - 1
    bool partition_identity() const;
};

LinearSet linear_set(const Ambient& X, const Subspace& U);

/// True when for every d-dimensional F_{q^m}-subspace S the points of L
/// inside S span S.
bool is_cutting(const LinearSet& L, unsigned d);

struct CuttingResult {
    Subspace U;
    LinearSet L;
    unsigned h = 0;
    /// Index of the candidate subspace that was accepted.
    unsigned attempt = 0;
};

/// n <= (h+1)(2m-h-1)/m
bool cutting_feasible(unsigned m, unsigned n, unsigned h);

/// A (D,h)-scattered subspace of dimension (n-2)m+h+1 inside the dual of
/// the pseudoregulus, with its verified 2-cutting linear set.
/// Needs n-1 <= h <= m-1.
CuttingResult cutting_from_scattered(const FieldTower& tower, unsigned n, unsigned h);

/// [l, k]_{q^m/q} code with generator G (k x l over F_{q^m}).
class VectorRankCode {
public:
    VectorRankCode(FieldTower tower, Matrix G);
    /// Generator whose columns are an F_q-basis of the system U ⊆ F_{q^m}^k.
    static VectorRankCode from_system(const Ambient& X, const Subspace& U);

    const FieldTower& tower() const { return X_.tower(); }
    const Ambient& ambient() const { return X_; }
    std::size_t k() const { return G_.rows; }
    std::size_t length() const { return G_.cols; }
    const Matrix& generator() const { return G_; }
    /// F_q-span of the columns of G inside F_q^{mk}.
    const Subspace& system() const { return U_; }
    bool non_degenerate() const;

    Vec encode(std::span<const Elem> x) const;
    unsigned rank_weight(std::span<const Elem> x) const;

private:
    Ambient X_;
    Matrix G_;
    Subspace U_;
};

/// Row space of the m x l coordinate matrix of c, in F_q^l.
Subspace rank_support(const FieldTower& tower, std::span<const Elem> c);

/// x^⊥ ∩ U in F_q^{mk}.
Subspace hyperplane_meet(const VectorRankCode& C, std::span<const Elem> x);

/// rk(xG) = l - dim(U ∩ x^⊥) on every x (guard q^{mk} <= 2^16) or on
/// `samples` random x otherwise.
bool check_weight_system(const VectorRankCode& C, std::uint64_t samples = 2000, std::uint64_t seed = 1);

struct MinimalityReport {
    bool minimal = false;
    bool by_supports = false;
    bool by_hyperplanes = false;
    /// Projective classes compared.
    std::size_t classes = 0;
    /// Violating pair: support of x*G is contained in that of y*G.
    std::optional<std::pair<Vec, Vec>> certificate;
};

/// Both the pairwise support test and the hyperplane test; they must agree.
MinimalityReport is_minimal_code(const VectorRankCode& C);

struct MinimalCode {
    VectorRankCode code;
    CuttingResult cutting;
    /// Absent when the pairwise check is beyond its guard.
    std::optional<MinimalityReport> report;
};

/// [m+3, 3]_{q^m/q} minimal code from a 2-cutting system (m >= 4).
MinimalCode construct_minimal_code(const FieldTower& tower);

}  // namespace scatterlab
