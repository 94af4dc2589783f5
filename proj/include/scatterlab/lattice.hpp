#pragma once

// The geometric lattice generated by the (h+1)-subspaces of spread
// elements, its Möbius function and characteristic polynomial.

#include <vector>

#include "scatterlab/counting.hpp"
#include "scatterlab/spread.hpp"

namespace scatterlab {

/// All (h+1)-subspaces of elements of A (empty when h >= m).
std::vector<Subspace> atoms_of(const PartialSpread& A, unsigned h);

struct Lattice {
    std::shared_ptr<const Field> field;
    std::size_t N = 0;
    /// Sorted by dimension, then canonically; elements[0] is {0}.
    std::vector<Subspace> elements;
    /// mu({0}, V) aligned with elements.
    std::vector<long long> mobius;
    std::size_t atom_count = 0;
};

/// Join closure of the atoms together with {0}.
Lattice build_lattice(const std::vector<Subspace>& atoms, std::shared_ptr<const Field> field, std::size_t N);

/// Coefficients of chi(x) = sum_V mu(V) x^{N - dim V}; index = exponent.
std::vector<BigInt> characteristic_polynomial(const Lattice& L);
BigInt evaluate(const std::vector<BigInt>& poly, const BigInt& x);
/// Least s >= 0 with chi(q^s) != 0.
unsigned critical_exponent(const Lattice& L, std::uint64_t q);

struct CrapoRotaReport {
    unsigned max_scattered_dim = 0;  // exhaustive search
    unsigned critical_exponent = 0;
    unsigned N = 0;
    std::vector<BigInt> chi;
    std::size_t lattice_size = 0;
    std::size_t atoms = 0;
    bool holds() const { return max_scattered_dim + critical_exponent == N; }
};

CrapoRotaReport verify_crapo_rota(const PartialSpread& A, unsigned h);

/// "x^4 - 5x^2 + 4"
std::string poly_to_string(const std::vector<BigInt>& poly);

}  // namespace scatterlab
