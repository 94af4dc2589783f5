#include <algorithm>
#include <cmath>

#include "scatterlab/errors.hpp"
#include "scatterlab/scattered.hpp"
#include "scatterlab/spread.hpp"

namespace scatterlab {

namespace {

// Rows of B extended by unit vectors to a basis of F^N.
Matrix extend_to_basis(const Field& F, const Matrix& B, std::size_t N)
{
    Matrix M = B;
    std::size_t r = rank(F, M);
    for (std::size_t i = 0; i < N && r < N; ++i) {
        Matrix T = M;
        Vec e(N, 0);
        e[i] = 1;
        T.append_row(e);
        if (rank(F, T) > r) {
            M = std::move(T);
            ++r;
        }
    }
    return M;
}

// Extends rows of B (inside the space spanned by rows of S) to a basis of span(S).
Matrix extend_within(const Field& F, const Matrix& B, const Matrix& S)
{
    Matrix M = B;
    std::size_t r = rank(F, M);
    for (std::size_t i = 0; i < S.rows; ++i) {
        Matrix T = M;
        T.append_row(S.row(i));
        if (rank(F, T) > r) {
            M = std::move(T);
            ++r;
        }
    }
    return M;
}

void check_tight(const PartialSpread& A, const Subspace& U, unsigned h, std::size_t dim, bool full)
{
    verify(U.dim() == dim, "tight construction has the wrong dimension");
    const SpreadReport rep = validate(A);
    verify(rep.is_partial, "tight construction is not a partial spread");
    if (full) verify(rep.is_full, "tight construction is not a full spread");
    verify(scatter_profile(U, A).max_dim <= h, "tight construction is not scattered");
}

TightResult tight_rec(const FieldTower& tower, std::size_t n, unsigned h)
{
    const std::size_t m = tower.m();
    Ambient X(tower, n);
    const Field& F = X.base();
    if (n == 2) {
        PartialSpread D = desarguesian_spread(tower, 2);
        Matrix M(0, 2 * m);
        for (Elem b : tower.basis()) M.append_row(X.expand(Vec{b, tower.frobenius(b, 1)}));
        const Subspace U0 = Subspace::span(X.base_ptr(), 2 * m, std::move(M));
        std::size_t s = 0;
        while (s < D.size() && meet_dim(U0, D[s]) != 0) ++s;
        verify(s < D.size(), "no spread element disjoint from U_0");
        Matrix G = U0.basis();
        for (unsigned i = 0; i + 1 < h; ++i) G.append_row(D[s].basis().row(i));
        Subspace U = Subspace::span(X.base_ptr(), 2 * m, std::move(G));
        return TightResult{std::move(D), std::move(U)};
    }
    // X = X_2 ⊕ X_{n-2}
    TightResult base = tight_rec(tower, 2, h);
    const std::size_t N = n * m;
    Matrix G(0, N);
    for (std::size_t r = 0; r < base.U.dim(); ++r) {
        Vec v(N, 0);
        std::copy(base.U.basis().row(r).begin(), base.U.basis().row(r).end(), v.begin());
        G.append_row(v);
    }
    for (std::size_t c = 2 * m; c < N; ++c) {
        Vec v(N, 0);
        v[c] = 1;
        G.append_row(v);
    }
    const Subspace U = Subspace::span(X.base_ptr(), N, std::move(G));

    // S: an element of D_2 meeting U_2 in dimension h-1.
    Vec s_point;
    for (std::size_t i = 0; i < base.spread.size(); ++i)
        if (meet_dim(base.U, base.spread[i]) == h - 1) {
            s_point = base.spread.points()[i];
            break;
        }
    verify(!s_point.empty(), "no element of the base spread meets U_2 in dimension h-1");
    Vec s_full(n, 0);
    s_full[0] = s_point[0];
    s_full[1] = s_point[1];
    std::vector<Vec> gens{s_full};
    for (std::size_t i = 2; i < n; ++i) {
        Vec e(n, 0);
        e[i] = 1;
        gens.push_back(e);
    }
    const Subspace Xn1 = X.fq_expansion(gens);

    const PartialSpread D = desarguesian_spread(tower, n);
    const PartialSpread outside = restrict_spread(D, Xn1);

    TightResult inner = tight_rec(tower, n - 1, h);
    const Subspace UX = meet(U, Xn1);
    verify(UX.dim() == inner.U.dim(), "U ∩ X_{n-1} has the wrong dimension");
    const std::size_t Nn1 = (n - 1) * m;
    const Matrix B1 = extend_to_basis(F, inner.U.basis(), Nn1);
    const Matrix B2 = extend_within(F, UX.basis(), Xn1.basis());
    verify(B1.rows == Nn1 && B2.rows == Nn1, "basis extension failed");
    const auto B1inv = inverse(F, B1);
    verify(B1inv.has_value(), "B1 is singular");
    const Matrix Phi = mul(F, *B1inv, B2);  // F_q^{m(n-1)} -> X, v -> v Phi

    std::vector<Subspace> elems = outside.elements();
    for (const auto& T : inner.spread.elements()) elems.push_back(T.image(Phi));
    PartialSpread A(X.base_ptr(), N, m, std::move(elems), SpreadKind::constructed);
    return TightResult{std::move(A), U};
}

}  // namespace

TightResult construct_tight_spread(const FieldTower& tower, std::size_t n, unsigned h)
{
    const std::size_t m = tower.m();
    require(m >= 2, "construct_tight_spread needs m >= 2");
    require(h >= 1 && h <= m, "construct_tight_spread needs 1 <= h <= m");
    require(n >= 2, "construct_tight_spread needs n >= 2");
    TightResult r = tight_rec(tower, n, h);
    check_tight(r.spread, r.U, h, m * (n - 1) + h - 1, true);
    return r;
}

TightResult partial_spread_tight(const FieldTower& tower, std::size_t n, unsigned h)
{
    const std::size_t m = tower.m();
    require(h >= 1 && h <= m, "partial_spread_tight needs 1 <= h <= m");
    require(n >= 2, "partial_spread_tight needs n >= 2");
    Ambient X(tower, n);
    check_guard(double(X.point_count()), 2e6, "partial_spread_tight");
    std::vector<Vec> pts;
    X.for_each_point([&](const Vec& x) {
        if (x[n - 1] != 0) pts.push_back(x);
    });
    PartialSpread A = PartialSpread::from_points(X, pts, SpreadKind::partial_desarguesian);
    const std::size_t N = n * m;
    Matrix G(0, N);
    for (std::size_t c = 0; c < (n - 1) * m; ++c) {
        Vec v(N, 0);
        v[c] = 1;
        G.append_row(v);
    }
    Vec en(n, 0);
    en[n - 1] = 1;
    const Subspace X2 = X.fq_expansion(std::vector<Vec>{en});
    for (unsigned i = 0; i < h; ++i) G.append_row(X2.basis().row(i));
    Subspace U = Subspace::span(X.base_ptr(), N, std::move(G));
    verify(A.size() == static_cast<std::size_t>(std::pow(double(X.qm()), double(n - 1)) + 0.5),
           "partial spread has the wrong size");
    check_tight(A, U, h, m * (n - 1) + h, false);
    return TightResult{std::move(A), std::move(U)};
}

}  // namespace scatterlab
