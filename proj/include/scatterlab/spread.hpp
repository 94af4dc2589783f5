#pragma once

// Partial m-spreads: Desarguesian spreads, validation, point
// classification, the second-order closure and the tight constructions.

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "scatterlab/ambient.hpp"

namespace scatterlab {

enum class SpreadKind { desarguesian, partial_desarguesian, constructed, adhoc };

std::string to_string(SpreadKind k);
SpreadKind parse_spread_kind(const std::string& s);

class PartialSpread {
public:
    /// Validates element dimensions and pairwise trivial intersection,
    /// then stores the elements sorted canonically.
    PartialSpread(std::shared_ptr<const Field> field, std::size_t N, std::size_t m,
                  std::vector<Subspace> elements, SpreadKind kind);

    /// Spread of F_{q^m}-points given by representatives (any scaling).
    /// Pairwise disjointness is automatic and not re-checked.
    static PartialSpread from_points(const Ambient& X, const std::vector<Vec>& points, SpreadKind kind);

    const Field& field() const { return *field_; }
    const std::shared_ptr<const Field>& field_ptr() const { return field_; }
    std::size_t N() const { return N_; }
    std::size_t m() const { return m_; }
    std::size_t size() const { return elements_.size(); }
    const std::vector<Subspace>& elements() const { return elements_; }
    const Subspace& operator[](std::size_t i) const { return elements_[i]; }
    SpreadKind kind() const { return kind_; }

    /// Tower metadata: present for Desarguesian-tagged spreads.
    const std::optional<Ambient>& ambient() const { return ambient_; }
    /// Normalized F_{q^m}-representatives aligned with elements().
    const std::vector<Vec>& points() const { return points_; }
    bool has_points() const { return !points_.empty() || (ambient_ && elements_.empty()); }

    /// (q^N - 1)/(q^m - 1) when m divides N, else 0.
    std::uint64_t full_size() const;
    std::optional<std::size_t> find(const Subspace& S) const;

private:
    PartialSpread() = default;
    void sort_elements();

    std::shared_ptr<const Field> field_;
    std::size_t N_ = 0, m_ = 0;
    std::vector<Subspace> elements_;
    SpreadKind kind_ = SpreadKind::adhoc;
    std::optional<Ambient> ambient_;
    std::vector<Vec> points_;
};

/// Maps vectors of the ambient to the spread element containing them.
class PointClassifier {
public:
    enum class Strategy { desarguesian_normalize, point_table, generic_meet };

    explicit PointClassifier(const PartialSpread& A);
    PointClassifier(const PartialSpread& A, Strategy s);

    std::optional<std::size_t> classify(std::span<const Elem> v) const;
    Strategy strategy() const { return strategy_; }

private:
    const PartialSpread* A_;
    Strategy strategy_;
    std::unordered_map<std::uint64_t, std::size_t> index_;
    std::vector<Matrix> annihilators_;
};

std::string to_string(PointClassifier::Strategy s);

/// F_q-projective key of a nonzero vector of F_q^N (needs q^N < 2^63).
std::uint64_t fq_point_key(const Field& F, std::span<const Elem> v);

struct SpreadReport {
    bool is_partial = false;
    bool is_full = false;
    bool is_normal = false;
    /// N = 2m: every pair spans the whole space, so normality says nothing.
    bool normality_vacuous = false;
    std::string detail;
};

SpreadReport validate(const PartialSpread& A);
/// Pairwise-intersection check on an arbitrary family of m-spaces.
bool pairwise_trivial(const std::vector<Subspace>& family);

PartialSpread desarguesian_spread(const FieldTower& tower, std::size_t n);
PartialSpread second_order_closure(const PartialSpread& A);
PartialSpread restrict_spread(const PartialSpread& A, const Subspace& avoid);

struct TightResult {
    PartialSpread spread;
    Subspace U;
};

/// Full m-spread of F_q^{mn} with a scattered subspace of dimension
/// m(n-1)+h-1, built inductively on n.
TightResult construct_tight_spread(const FieldTower& tower, std::size_t n, unsigned h);
/// Partial Desarguesian spread of size q^{m(n-1)} with a scattered
/// subspace of dimension m(n-1)+h.
TightResult partial_spread_tight(const FieldTower& tower, std::size_t n, unsigned h);

}  // namespace scatterlab
