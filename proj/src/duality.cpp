#include "scatterlab/duality.hpp"

#include "scatterlab/errors.hpp"
#include "scatterlab/scattered.hpp"

namespace scatterlab {

namespace {

Matrix standard_form(const Ambient& X)
{
    return Matrix::identity(X.n());
}

}  // namespace

DualityContext::DualityContext(Ambient X) : DualityContext(X, standard_form(X)) {}

DualityContext::DualityContext(Ambient X, Matrix form) : X_(std::move(X)), form_(std::move(form))
{
    const std::size_t n = X_.n();
    const Field& T = X_.top();
    require(form_.rows == n && form_.cols == n, "form must be n x n");
    require(inverse(T, form_).has_value(), "form is degenerate");
    bool sym = true, alt = true;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (form_(i, j) != form_(j, i)) sym = false;
            if (form_(i, j) != T.neg(form_(j, i))) alt = false;
        }
    for (std::size_t i = 0; i < n; ++i)
        if (form_(i, i) != 0) alt = false;
    require(sym || alt, "form must be symmetric or alternating");

    const std::size_t N = X_.N(), m = X_.m();
    std::vector<Vec> e(N);
    for (std::size_t a = 0; a < N; ++a) {
        Vec x(n, 0);
        x[a / m] = X_.tower().basis()[a % m];
        e[a] = x;
    }
    gram_ = Matrix(N, N);
    for (std::size_t a = 0; a < N; ++a)
        for (std::size_t b = 0; b < N; ++b) gram_(a, b) = X_.tower().trace(sigma(e[a], e[b]));
    verify(rank(X_.base(), gram_) == N, "trace form is degenerate");
}

Elem DualityContext::sigma(std::span<const Elem> x, std::span<const Elem> y) const
{
    const Field& T = X_.top();
    Elem s = 0;
    for (std::size_t i = 0; i < X_.n(); ++i) {
        if (x[i] == 0) continue;
        for (std::size_t j = 0; j < X_.n(); ++j)
            if (form_(i, j) && y[j]) s = T.add(s, T.mul(x[i], T.mul(form_(i, j), y[j])));
    }
    return s;
}

Elem DualityContext::sigma_prime(std::span<const Elem> u, std::span<const Elem> v) const
{
    return X_.tower().trace(sigma(X_.contract(u), X_.contract(v)));
}

Subspace DualityContext::perp_fq(const Subspace& U) const
{
    require(U.ambient_dim() == X_.N(), "perp_fq: ambient mismatch");
    const Matrix M = mul(X_.base(), U.basis(), gram_);
    return Subspace::span(X_.base_ptr(), X_.N(), nullspace(X_.base(), M, X_.N()));
}

Subspace DualityContext::perp_fqm(const Subspace& W) const
{
    require(W.ambient_dim() == X_.n(), "perp_fqm: ambient mismatch");
    const Matrix M = mul(X_.top(), W.basis(), form_);
    return Subspace::span(X_.top_ptr(), X_.n(), nullspace(X_.top(), M, X_.n()));
}

DualWeight check_dual_weight(const Subspace& U, const Subspace& W, const DualityContext& ctx)
{
    const Ambient& X = ctx.ambient();
    const Subspace Wq = X.fq_expansion(W);
    const Subspace Up = ctx.perp_fq(U);
    const Subspace Wp = ctx.perp_fq(Wq);
    DualWeight r;
    r.dim_U = U.dim();
    r.s = W.dim();
    r.lhs = long(meet_dim(Up, Wp)) - long(meet_dim(U, Wq));
    r.rhs = long(X.N()) - long(U.dim()) - long(W.dim() * X.m());
    return r;
}

DualReport dual_scattered(const Subspace& U, const DualityContext& ctx, unsigned h)
{
    const Ambient& X = ctx.ambient();
    DualReport r(ctx.perp_fq(U));
    r.dual_max_dim = desarguesian_profile(r.dual, X).max_dim;
    const std::size_t mn = X.N();
    if (h == 1 && 2 * U.dim() == mn) {
        r.transfer = "max-scattered";
        r.applicable = true;
        r.checked = true;
        r.premise = is_desarguesian_scattered(U, X, 1);
        r.conclusion = r.dual_max_dim <= 1;
        r.detail = "U scattered of dim mn/2 iff its dual is";
        return r;
    }
    if ((h + 1) * U.dim() == mn && X.m() >= h + 3) {
        r.transfer = "h-scattered";
        r.applicable = true;
        r.conclusion = r.dual_max_dim <= h;
        try {
            r.premise = is_h_scattered(U, X, h);
            r.checked = true;
            r.detail = "U h-scattered iff its dual is (D,h)-scattered";
        } catch (const GuardError& e) {
            r.detail = std::string("premise not enumerable: ") + e.what();
        }
        return r;
    }
    r.detail = "dimension or m >= h+3 hypothesis not met";
    return r;
}

}  // namespace scatterlab
