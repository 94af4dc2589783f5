#pragma once

// Matrix rank-metric codes, the code <-> partial spread dictionary,
// covering radius and codes built from scattered subspaces.

#include <optional>
#include <random>
#include <utility>

#include "scatterlab/counting.hpp"
#include "scatterlab/spread.hpp"

namespace scatterlab {

/// A set of m x m' matrices over F_q with m <= m'.
class MatrixCode {
public:
    /// Deduplicates; transposes everything when rows > cols (sets transposed()).
    /// With `linear` the set must be closed under addition and scaling.
    MatrixCode(std::shared_ptr<const Field> field, std::vector<Matrix> codewords, bool linear = false);

    /// All F_q-combinations of `basis`.
    static MatrixCode span(std::shared_ptr<const Field> field, const std::vector<Matrix>& basis);
    static MatrixCode whole_space(std::shared_ptr<const Field> field, std::size_t m, std::size_t mp);

    const Field& field() const { return *field_; }
    const std::shared_ptr<const Field>& field_ptr() const { return field_; }
    std::uint32_t q() const { return field_->order(); }
    std::size_t m() const { return m_; }
    std::size_t mp() const { return mp_; }
    std::size_t size() const { return words_.size(); }
    const std::vector<Matrix>& codewords() const { return words_; }
    bool linear() const { return linear_; }
    bool transposed() const { return transposed_; }

private:
    std::shared_ptr<const Field> field_;
    std::size_t m_ = 0, mp_ = 0;
    std::vector<Matrix> words_;
    bool linear_ = false;
    bool transposed_ = false;
};

/// True when the set is closed under addition and F_q-scaling.
bool closed_under_linear_combinations(const MatrixCode& C);

unsigned min_rank_distance(const MatrixCode& C);

struct SingletonReport {
    unsigned d = 0;
    /// |C| <= q^exponent, exponent = max(m,m')(min(m,m') - d + 1).
    long exponent = 0;
    BigInt size;
    /// exponent - log_q |C| when |C| is a power of q.
    std::optional<long> defect;
    bool mrd = false;
    bool violated = false;
};

SingletonReport singleton_defect(const MatrixCode& C);

/// Graph {(x, xA)} of A as a subspace of F_q^{m+m'}.
Subspace graph_space(std::shared_ptr<const Field> field, const Matrix& A);
/// 0 ⊕ F_q^{m'}.
Subspace s_infinity(std::shared_ptr<const Field> field, std::size_t m, std::size_t mp);

struct CodeSpread {
    PartialSpread spread;
    Subspace s_inf;
};

/// Requires minimum distance m.
CodeSpread code_to_partial_spread(const MatrixCode& C);
/// Inverse dictionary: every element must meet S_inf trivially.
MatrixCode spread_to_code(const PartialSpread& A, std::size_t m, std::size_t mp);

struct CoveringReport {
    std::optional<unsigned> exact;
    /// Deep hole: a matrix at distance `exact` from the code.
    std::optional<Matrix> witness;
    /// From the scattered formulation, m - min_U max_A dim(U ∩ S_A).
    std::optional<unsigned> scattered_radius;
    unsigned lower_bound = 0;
    unsigned h_star = 0;
    /// m - floor(sqrt(s+1)), only for |C| = q^s and q not in {2,3}.
    std::optional<long> simplified_bound;
    std::uint64_t swept = 0;
};

struct CoveringBound {
    unsigned bound = 0;
    unsigned h_star = 0;
    std::optional<long> simplified;
};

/// Smallest h with 4|C| < q^{(h+1)(m'-m+h+1)}; bound = max(m-h, 0).
CoveringBound covering_radius_lower_bound(std::size_t m, std::size_t mp, const BigInt& size, std::uint64_t q);
/// |C| = q^s.
CoveringBound covering_radius_lower_bound_exp(std::size_t m, std::size_t mp, unsigned s, std::uint64_t q);

/// Sweep of every Y (guard q^{mm'} <= 2^24), cross-checked against the
/// scattered formulation when that enumeration fits its guard.
CoveringReport covering_radius_exact(const MatrixCode& C);
/// m - min over m-spaces U with U ∩ S_inf = 0 of max_A dim(U ∩ S_A).
unsigned covering_radius_scattered(const MatrixCode& C);

/// A matrix Y with C ∪ {Y} still at minimum distance m, if one exists.
std::optional<Matrix> find_extension(const MatrixCode& C);

/// Random linear code of the given F_q-dimension whose nonzero words all
/// have rank >= d; nullopt after `tries` failed attempts.
std::optional<MatrixCode> random_linear_code(std::shared_ptr<const Field> field, std::size_t m, std::size_t mp,
                                             unsigned dim, unsigned d, std::mt19937_64& rng, unsigned tries = 1000);

/// {x -> alpha x : alpha in F_{q^m}} as m x m matrices over F_q.
MatrixCode multiplication_code(const FieldTower& tower);

struct ScatteredCode {
    MatrixCode code;
    /// Theorem criterion: the union of the points is an F_{q^m}-subspace.
    bool linear_by_criterion = false;
    bool linear_by_closure = false;
    unsigned d = 0;
    unsigned h = 0;
    std::size_t expected_size = 0;
};

/// Codewords G ∘ tau_v for v in the union of the points of A, where G has
/// kernel U. A must carry points; U must be (A^(2),h)-scattered.
ScatteredCode code_from_scattered(const PartialSpread& A, const Subspace& U, unsigned h);

}  // namespace scatterlab
