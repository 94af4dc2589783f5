#pragma once

// (A,h)-scattered subspaces: profiles against spreads, h-scattered checks,
// explicit families, maximum-dimension search and the dimension bounds.

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "scatterlab/spread.hpp"

namespace scatterlab {

/// Intersection dimensions of U with the elements of a spread. Keys are
/// element indices, or point keys for the implicit Desarguesian spread.
struct ScatterProfile {
    std::map<std::uint64_t, unsigned> dims;  // only dims > 0
    unsigned max_dim = 0;
    std::optional<std::uint64_t> witness;
    /// dim -> number of elements meeting U in that dimension (dim 0 included).
    std::map<unsigned, std::uint64_t> histogram;
};

enum class ProfilePath { automatic, fast, generic };

ScatterProfile scatter_profile(const Subspace& U, const PartialSpread& A, ProfilePath path = ProfilePath::automatic);
ScatterProfile scatter_profile(const Subspace& U, const PartialSpread& A, const PointClassifier& C);
bool is_scattered(const Subspace& U, const PartialSpread& A, unsigned h);
/// Early-exit check against a prepared classifier.
bool is_scattered(const Subspace& U, const PartialSpread& A, const PointClassifier& C, unsigned h);

/// Profile against the Desarguesian spread of X without materializing it.
/// `skip` drops the points for which it returns true (restricted spreads).
ScatterProfile desarguesian_profile(const Subspace& U, const Ambient& X,
                                    const std::function<bool(std::uint64_t)>& skip = {});
bool is_desarguesian_scattered(const Subspace& U, const Ambient& X, unsigned h,
                               const std::function<bool(std::uint64_t)>& skip = {});

/// Reusable fast checker for many subspaces of one ambient (Monte Carlo).
class DesarguesianChecker {
public:
    explicit DesarguesianChecker(const Ambient& X);
    bool scattered(const Subspace& U, unsigned h);

private:
    const Ambient* X_;
    struct Impl;
    std::shared_ptr<Impl> impl_;
};

/// Span condition plus dim(U ∩ W) <= h for every h-dim F_{q^m}-subspace W.
bool is_h_scattered(const Subspace& U, const Ambient& X, unsigned h);

/// Max F_q-dimension of U ∩ W over the h-dim F_{q^m}-subspaces W.
unsigned max_meet_with_fqm_subspaces(const Subspace& U, const Ambient& X, unsigned h);

// ---------------------------------------------------------------------------
// Families

struct FamilyParams {
    std::uint32_t q = 2;
    unsigned m = 2;
    unsigned t = 1;
    /// Ambient F_{q^m}-dimension (pseudoregulus, padded).
    unsigned n = 0;
    unsigned h = 1;
    /// Number of summands for "direct-sum".
    unsigned copies = 2;
    /// F_{q^m}-dimensions of T_1 and T_2 for "complement-augmented".
    unsigned t1 = 0, t2 = 0;
};

struct FamilyResult {
    Ambient X;
    Subspace U;
    unsigned h = 1;
    /// "verified", or "skipped: <reason>" when the check is not enumerable.
    std::string verification;
    /// Point keys of F_{q^m}-points excluded from the Desarguesian spread.
    std::function<bool(std::uint64_t)> excluded;
};

FamilyResult construct_family(const std::string& kind, const FamilyParams& p);
std::vector<std::string> family_kinds();

/// F_q-subspaces of the ambients F_q^{N_i} placed block-diagonally.
Subspace direct_sum(const std::vector<Subspace>& parts);
/// Dual of the pseudoregulus {(x, x^q, ..., x^{q^{n-1}})} in F_{q^m}^n.
Subspace pseudoregulus_dual(const Ambient& X);

// ---------------------------------------------------------------------------
// Search

enum class SearchMode { exhaustive, randomized };

struct SearchOptions {
    SearchMode mode = SearchMode::exhaustive;
    std::uint64_t seed = 1;
    unsigned trials = 64;
    /// Exhaustive mode: start the descent at the theoretical bound instead of N.
    bool start_from_bound = true;
};

struct SearchResult {
    unsigned k_max = 0;
    std::optional<Subspace> witness;
    bool is_lower_bound = false;
    unsigned start_k = 0;
    std::uint64_t visited = 0;
};

/// Upper bound on dim U for (A,h)-scattered U known for this spread shape.
unsigned applicable_upper_bound(const PartialSpread& A, unsigned h);

SearchResult max_scattered_dimension(const PartialSpread& A, unsigned h, const SearchOptions& opt = {});

// ---------------------------------------------------------------------------
// Bounds

struct BoundTable {
    unsigned m = 0, n = 0, h = 0;
    unsigned general_bound = 0;       // m(n-1)+h
    unsigned spread_bound = 0;        // m(n-1)+h-1
    unsigned desarguesian_bound = 0;  // floor(hmn/(h+1))
    /// "general" when the spread bound is strictly below hmn/(h+1).
    std::string sharper;
};

BoundTable bound_table(unsigned m, unsigned n, unsigned h);
/// The published condition: n < h+1 and m > (h^2-1)/(h+1-n).
bool general_sharper_condition(unsigned m, unsigned n, unsigned h);

/// Right-hand side of s(q^m-1)+1 <= ... for an (A^(2),h)-scattered k-space,
/// as a power of q: returns the exponent.
unsigned partial_desarguesian_size_exponent(unsigned m, unsigned n, unsigned h, unsigned k);

// ---------------------------------------------------------------------------
// Hyperplanes

/// dim(H ∩ U) -> number of F_{q^m}-hyperplanes H.
std::map<unsigned, std::uint64_t> hyperplane_weight_spectrum(const Subspace& U, const Ambient& X);
/// Values in {mn/2 - m, mn/2 - m + 1} (mn even).
bool max_scattered_hyperplane_criterion(const std::map<unsigned, std::uint64_t>& spectrum, const Ambient& X);
/// Values at most mn/(h+1) - m + h.
bool h_scattered_hyperplane_criterion(const std::map<unsigned, std::uint64_t>& spectrum, const Ambient& X,
                                      unsigned h);

}  // namespace scatterlab
