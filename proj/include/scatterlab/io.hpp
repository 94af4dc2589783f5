#pragma once

// Text formats for subspaces, spreads and codes. All element values are
// integer field codes.

#include <iosfwd>
#include <string>

#include "scatterlab/minimal.hpp"
#include "scatterlab/rank_metric.hpp"
#include "scatterlab/spread.hpp"

namespace scatterlab {

/// `q N k`, then k rows of N codes (RREF basis).
void write_subspace(std::ostream& os, const Subspace& U);
Subspace read_subspace(std::istream& is);

/// `q m n kind count`, then `count` subspace blocks. n is N/m (informational
/// when m does not divide N, where it is written as 0).
void write_spread(std::ostream& os, const PartialSpread& A);
/// Desarguesian-tagged spreads are re-attached to the default tower when
/// every element is the expansion of an F_{q^m}-point.
PartialSpread read_spread(std::istream& is);

/// `q m m' count linear`, then one line of m*m' codes per matrix.
void write_code(std::ostream& os, const MatrixCode& C);
MatrixCode read_code(std::istream& is);

/// `q m k l`, then G row-major (k lines of l codes in F_{q^m}).
void write_vector_code(std::ostream& os, const VectorRankCode& C);
VectorRankCode read_vector_code(std::istream& is);

/// File helpers; throw ValidationError when the file cannot be opened.
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

}  // namespace scatterlab
