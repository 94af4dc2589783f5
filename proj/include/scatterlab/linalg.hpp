#pragma once

// Dense matrices over a finite field given by integer codes.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "scatterlab/field.hpp"

namespace scatterlab {

using Vec = std::vector<Elem>;

struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<Elem> a;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0) {}

    static Matrix identity(std::size_t n);
    static Matrix from_rows(const std::vector<Vec>& rows, std::size_t cols);

    Elem& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    Elem operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
    std::span<Elem> row(std::size_t i) { return {a.data() + i * cols, cols}; }
    std::span<const Elem> row(std::size_t i) const { return {a.data() + i * cols, cols}; }
    Vec row_vec(std::size_t i) const { return Vec(row(i).begin(), row(i).end()); }
    void append_row(std::span<const Elem> r);

    bool operator==(const Matrix& o) const = default;
    auto operator<=>(const Matrix& o) const = default;
};

/// In-place reduced row echelon form; zero rows are moved to the bottom.
/// Returns the pivot column of each nonzero row.
std::vector<std::size_t> rref_in_place(const Field& F, Matrix& M);

/// RREF with zero rows removed.
Matrix rref(const Field& F, Matrix M);
std::size_t rank(const Field& F, Matrix M);

/// Basis (in RREF) of the right kernel {x : M x = 0}, one vector per row.
Matrix nullspace(const Field& F, const Matrix& M, std::size_t cols);

std::optional<Matrix> inverse(const Field& F, const Matrix& M);
Matrix mul(const Field& F, const Matrix& A, const Matrix& B);
Matrix transpose(const Matrix& M);
Matrix sub(const Field& F, const Matrix& A, const Matrix& B);
Matrix vstack(const Matrix& A, const Matrix& B);

/// x^T M for a row vector x.
Vec row_times(const Field& F, std::span<const Elem> x, const Matrix& M);
void axpy(const Field& F, Elem a, std::span<const Elem> x, std::span<Elem> y);
bool is_zero(std::span<const Elem> v);

}  // namespace scatterlab
