#pragma once

// Exact enumeration formulas for subspaces meeting one or two fixed spaces,
// bounds on the number of scattered spaces, existence thresholds and the
// Monte Carlo density experiment.

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace scatterlab {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

BigInt big_pow(std::uint64_t q, long e);
/// Number of b-subspaces of F_q^a; 0 unless 0 <= b <= a.
BigInt gauss_binomial(long a, long b, std::uint64_t q);

struct CountReport {
    BigInt value;
    std::string formula;
    unsigned N = 0, k = 0, m = 0, h = 0;
    std::uint64_t q = 0;
    /// 1 <= m <= N-k, the range where the closed form is stated.
    bool in_lemma_range = true;
};

/// k-spaces of F_q^N meeting a fixed m-space in dimension >= h+1.
CountReport delta_count(unsigned N, unsigned k, unsigned m, unsigned h, std::uint64_t q);
/// k-spaces meeting each of two fixed disjoint m-spaces in dimension >= h+1.
CountReport omega_count(unsigned N, unsigned k, unsigned m, unsigned h, std::uint64_t q);
/// k-spaces disjoint from a fixed l-space: q^{lk} [N-l choose k]_q.
BigInt disjoint_count(unsigned N, unsigned k, unsigned l, std::uint64_t q);

struct CountBounds {
    BigInt total;
    BigInt lower;
    BigRat upper;
    BigInt upper_floor;
};

CountBounds scattered_count_bounds(const BigInt& spread_size, unsigned N, unsigned k, unsigned m, unsigned h,
                                   std::uint64_t q);

struct Thresholds {
    // Existence for every m-spread of F_q^N.
    BigRat existence_bound;  // hN/(h+1) + m/(h+1) - m + h
    long existence_k_max = 0;
    bool field_condition = false;  // q^{h+1} >= 64
    // Density tipping point.
    BigRat tipping_dimension;  // hN/(h+1) - mh/(h+1) + h
    long tipping_k = 0;
    // Partial spreads avoiding an m'-space S_inf, with N = m + m'.
    std::optional<unsigned> m_prime;
    std::optional<BigRat> size_threshold_k;  // for the given k
    std::optional<BigRat> quarter_threshold;
};

/// When m_prime is given the ambient is N = m + m' for the S_inf thresholds.
Thresholds thresholds(unsigned N, unsigned m, unsigned h, std::uint64_t q, std::optional<unsigned> k = std::nullopt,
                      std::optional<unsigned> m_prime = std::nullopt);

/// (h+1)(N+h+1-k-m)
long density_exponent(unsigned N, unsigned k, unsigned m, unsigned h);

/// q^{m'(h+1)} [m k] / ([m h+1] [m-h-1 k-h-1]); nullopt when the denominator vanishes.
std::optional<BigRat> spread_size_threshold(unsigned m, unsigned m_prime, unsigned k, unsigned h, std::uint64_t q);
/// q^{(h+1)(m'-m+h+1)} / 4
BigRat quarter_threshold(unsigned m, unsigned m_prime, unsigned h, std::uint64_t q);

struct AsymptoticExponents {
    long delta_exp = 0;
    long omega_exp = 0;
};

AsymptoticExponents asymptotic_exponents(unsigned N, unsigned k, unsigned m, unsigned h);

/// value / q^exp as a double.
double ratio_to_power(const BigInt& value, std::uint64_t q, long exp);

// ---------------------------------------------------------------------------

struct DensityRow {
    unsigned k = 0;
    std::uint64_t samples = 0;
    std::uint64_t scattered = 0;
    double proportion() const { return samples ? double(scattered) / double(samples) : 0.0; }
};

struct DensityCurve {
    std::uint32_t q = 2;
    unsigned m = 0, n = 0, h = 0;
    std::uint64_t seed = 0;
    std::vector<DensityRow> rows;

    std::string to_csv() const;
};

/// Seed of one Monte Carlo trial, derived from (seed, k, trial).
std::uint64_t trial_seed(std::uint64_t seed, unsigned k, std::uint64_t trial);

DensityCurve empirical_density(std::uint32_t q, unsigned m, unsigned n, unsigned h, unsigned k_lo, unsigned k_hi,
                               std::uint64_t samples, std::uint64_t seed);

}  // namespace scatterlab
