#include "scatterlab/linalg.hpp"

#include <algorithm>

#include "scatterlab/errors.hpp"

namespace scatterlab {

Matrix Matrix::identity(std::size_t n)
{
    Matrix I(n, n);
    for (std::size_t i = 0; i < n; ++i) I(i, i) = 1;
    return I;
}

Matrix Matrix::from_rows(const std::vector<Vec>& rows, std::size_t cols)
{
    Matrix M(0, cols);
    for (const auto& r : rows) M.append_row(r);
    return M;
}

void Matrix::append_row(std::span<const Elem> r)
{
    if (r.size() != cols) throw ValidationError("row length does not match matrix width");
    a.insert(a.end(), r.begin(), r.end());
    ++rows;
}

std::vector<std::size_t> rref_in_place(const Field& F, Matrix& M)
{
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < M.cols && r < M.rows; ++c) {
        std::size_t p = r;
        while (p < M.rows && M(p, c) == 0) ++p;
        if (p == M.rows) continue;
        if (p != r)
            for (std::size_t j = 0; j < M.cols; ++j) std::swap(M(p, j), M(r, j));
        const Elem s = M(r, c);
        if (s != 1) {
            const Elem si = F.inv(s);
            for (std::size_t j = c; j < M.cols; ++j) M(r, j) = F.mul(M(r, j), si);
        }
        for (std::size_t i = 0; i < M.rows; ++i) {
            if (i == r || M(i, c) == 0) continue;
            const Elem f = F.neg(M(i, c));
            for (std::size_t j = c; j < M.cols; ++j)
                if (M(r, j)) M(i, j) = F.add(M(i, j), F.mul(f, M(r, j)));
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

Matrix rref(const Field& F, Matrix M)
{
    const auto piv = rref_in_place(F, M);
    M.a.resize(piv.size() * M.cols);
    M.rows = piv.size();
    return M;
}

std::size_t rank(const Field& F, Matrix M) { return rref_in_place(F, M).size(); }

Matrix nullspace(const Field& F, const Matrix& M, std::size_t cols)
{
    if (M.rows > 0 && M.cols != cols) throw ValidationError("nullspace: column mismatch");
    Matrix R = M;
    R.cols = cols;
    const auto piv = rref_in_place(F, R);
    std::vector<bool> is_piv(cols, false);
    for (auto p : piv) is_piv[p] = true;
    Matrix K(0, cols);
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_piv[f]) continue;
        Vec v(cols, 0);
        v[f] = 1;
        for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = F.neg(R(i, f));
        K.append_row(v);
    }
    return rref(F, std::move(K));
}

std::optional<Matrix> inverse(const Field& F, const Matrix& M)
{
    if (M.rows != M.cols) throw ValidationError("inverse of a non-square matrix");
    const std::size_t n = M.rows;
    Matrix W(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) W(i, j) = M(i, j);
        W(i, n + i) = 1;
    }
    const auto piv = rref_in_place(F, W);
    if (piv.size() < n || piv[n - 1] != n - 1) return std::nullopt;
    Matrix I(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) I(i, j) = W(i, n + j);
    return I;
}

Matrix mul(const Field& F, const Matrix& A, const Matrix& B)
{
    if (A.cols != B.rows) throw ValidationError("matrix product: shape mismatch");
    Matrix C(A.rows, B.cols);
    for (std::size_t i = 0; i < A.rows; ++i)
        for (std::size_t k = 0; k < A.cols; ++k) {
            const Elem a = A(i, k);
            if (a == 0) continue;
            for (std::size_t j = 0; j < B.cols; ++j)
                if (B(k, j)) C(i, j) = F.add(C(i, j), F.mul(a, B(k, j)));
        }
    return C;
}

Matrix transpose(const Matrix& M)
{
    Matrix T(M.cols, M.rows);
    for (std::size_t i = 0; i < M.rows; ++i)
        for (std::size_t j = 0; j < M.cols; ++j) T(j, i) = M(i, j);
    return T;
}

Matrix sub(const Field& F, const Matrix& A, const Matrix& B)
{
    if (A.rows != B.rows || A.cols != B.cols) throw ValidationError("matrix difference: shape mismatch");
    Matrix C = A;
    for (std::size_t i = 0; i < C.a.size(); ++i) C.a[i] = F.sub(A.a[i], B.a[i]);
    return C;
}

Matrix vstack(const Matrix& A, const Matrix& B)
{
    if (A.rows == 0) return B;
    if (B.rows == 0) return A;
    if (A.cols != B.cols) throw ValidationError("vstack: column mismatch");
    Matrix C = A;
    C.a.insert(C.a.end(), B.a.begin(), B.a.end());
    C.rows += B.rows;
    return C;
}

Vec row_times(const Field& F, std::span<const Elem> x, const Matrix& M)
{
    Vec y(M.cols, 0);
    for (std::size_t i = 0; i < M.rows; ++i)
        if (x[i]) axpy(F, x[i], M.row(i), y);
    return y;
}

void axpy(const Field& F, Elem a, std::span<const Elem> x, std::span<Elem> y)
{
    if (a == 0) return;
    if (a == 1) {
        for (std::size_t i = 0; i < x.size(); ++i)
            if (x[i]) y[i] = F.add(y[i], x[i]);
        return;
    }
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i]) y[i] = F.add(y[i], F.mul(a, x[i]));
}

bool is_zero(std::span<const Elem> v)
{
    return std::all_of(v.begin(), v.end(), [](Elem e) { return e == 0; });
}

}  // namespace scatterlab
