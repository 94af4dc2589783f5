#include "scatterlab/minimal.hpp"

#include <random>

#include "scatterlab/counting.hpp"
#include "scatterlab/errors.hpp"
#include "scatterlab/scattered.hpp"

namespace scatterlab {

bool LinearSet::partition_identity() const
{
    const std::uint64_t q = X.q();
    BigInt sum = 0;
    for (const auto& [key, w] : points) sum += big_pow(q, w) - 1;
    return sum == big_pow(q, long(U.dim())) - 1;
}

LinearSet linear_set(const Ambient& X, const Subspace& U)
{
    require(U.ambient_dim() == X.N(), "linear_set: U is not in the F_q-expansion of the ambient");
    LinearSet L{X, U, {}};
    for (const auto& [key, w] : desarguesian_profile(U, X).dims) L.points.emplace(key, w);
    return L;
}

bool is_cutting(const LinearSet& L, unsigned d)
{
    const Ambient& X = L.X;
    require(d >= 1 && d <= X.n(), "cutting dimension must be in [1, n]");
    check_guard(gauss_binomial_approx(X.n(), d, X.qm()), 1e6, "cutting check subspaces");
    GrassmannianCursor cur(X.top_ptr(), X.n(), d);
    while (cur.next()) {
        const Subspace inside = meet(L.U, X.fq_expansion(cur.current()));
        if (X.fqm_span(inside).dim() != d) return false;
    }
    return true;
}

bool cutting_feasible(unsigned m, unsigned n, unsigned h)
{
    return std::uint64_t(n) * m <= std::uint64_t(h + 1) * (2 * std::uint64_t(m) - h - 1);
}

CuttingResult cutting_from_scattered(const FieldTower& tower, unsigned n, unsigned h)
{
    const unsigned m = tower.m();
    require(n >= 2, "cutting_from_scattered needs n >= 2");
    require(h + 1 <= m, "cutting_from_scattered needs h <= m - 1");
    require(h + 1 >= n, "the dual pseudoregulus is only (D,n-1)-scattered: need h >= n - 1");
    require(cutting_feasible(m, n, h), "no such subspace: need n <= (h+1)(2m-h-1)/m");
    const Ambient X(tower, n);
    const Subspace D = pseudoregulus_dual(X);
    const std::size_t k = std::size_t(n - 2) * m + h + 1;

    constexpr unsigned kAttempts = 64;
    for (unsigned attempt = 0; attempt < kAttempts; ++attempt) {
        Subspace U = Subspace(X.base_ptr(), X.N());
        if (attempt == 0) {
            Matrix B(0, X.N());
            for (std::size_t i = 0; i < k; ++i) B.append_row(D.basis().row(i));
            U = Subspace::span(X.base_ptr(), X.N(), std::move(B));
        } else {
            U = sample_subspace(X.base_ptr(), D.dim(), k, attempt).image(D.basis());
        }
        if (X.fqm_span(U).dim() != n) continue;
        verify(is_desarguesian_scattered(U, X, h), "subspace of the dual pseudoregulus is not (D,h)-scattered");
        LinearSet L = linear_set(X, U);
        verify(is_cutting(L, 2), "scattered subspace of the critical dimension is not 2-cutting");
        return {std::move(U), std::move(L), h, attempt};
    }
    throw VerificationFailure("no candidate subspace spans the ambient over F_{q^m}");
}

// ---------------------------------------------------------------------------

VectorRankCode::VectorRankCode(FieldTower tower, Matrix G)
    : X_(std::move(tower), G.rows), G_(std::move(G)), U_(X_.base_ptr(), X_.N())
{
    require(G_.rows >= 1 && G_.cols >= 1, "generator matrix must be nonempty");
    for (Elem x : G_.a) require(x < X_.qm(), "generator entry outside F_{q^m}");
    Matrix cols(0, X_.N());
    for (std::size_t j = 0; j < G_.cols; ++j) {
        Vec g(G_.rows);
        for (std::size_t i = 0; i < G_.rows; ++i) g[i] = G_(i, j);
        cols.append_row(X_.expand(g));
    }
    U_ = Subspace::span(X_.base_ptr(), X_.N(), std::move(cols));
}

VectorRankCode VectorRankCode::from_system(const Ambient& X, const Subspace& U)
{
    require(U.ambient_dim() == X.N(), "system lives in the wrong ambient");
    require(U.dim() >= 1, "empty system");
    Matrix G(X.n(), U.dim());
    for (std::size_t j = 0; j < U.dim(); ++j) {
        const Vec c = X.contract(U.basis().row(j));
        for (std::size_t i = 0; i < X.n(); ++i) G(i, j) = c[i];
    }
    return VectorRankCode(X.tower(), std::move(G));
}

bool VectorRankCode::non_degenerate() const
{
    return U_.dim() == G_.cols && X_.fqm_span(U_).dim() == G_.rows;
}

Vec VectorRankCode::encode(std::span<const Elem> x) const
{
    require(x.size() == G_.rows, "message has the wrong length");
    return row_times(X_.top(), x, G_);
}

unsigned VectorRankCode::rank_weight(std::span<const Elem> x) const
{
    return unsigned(rank_support(X_.tower(), encode(x)).dim());
}

Subspace rank_support(const FieldTower& tower, std::span<const Elem> c)
{
    const std::size_t m = tower.m();
    Matrix M(m, c.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
        const auto d = tower.coords(c[i]);
        for (std::size_t j = 0; j < m; ++j) M(j, i) = d[j];
    }
    return Subspace::span(tower.base_ptr(), c.size(), std::move(M));
}

Subspace hyperplane_meet(const VectorRankCode& C, std::span<const Elem> x)
{
    const Ambient& X = C.ambient();
    Matrix row(1, x.size());
    for (std::size_t i = 0; i < x.size(); ++i) row(0, i) = x[i];
    const Subspace perp = Subspace::span(X.top_ptr(), X.n(), nullspace(X.top(), row, X.n()));
    return meet(C.system(), X.fq_expansion(perp));
}

bool check_weight_system(const VectorRankCode& C, std::uint64_t samples, std::uint64_t seed)
{
    require(C.system().dim() == C.length(), "columns of G must be F_q-independent");
    const Ambient& X = C.ambient();
    auto ok = [&](const Vec& x) {
        return C.rank_weight(x) + hyperplane_meet(C, x).dim() == C.length();
    };
    const double total = std::pow(double(X.qm()), double(X.n()));
    if (total <= double(1u << 16)) {
        bool good = true;
        X.for_each_point([&](const Vec& x) {
            if (good && !ok(x)) good = false;
        });
        return good;
    }
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<Elem> entry(0, X.qm() - 1);
    for (std::uint64_t t = 0; t < samples; ++t) {
        Vec x(X.n());
        for (auto& e : x) e = entry(rng);
        if (is_zero(x)) continue;
        if (!ok(x)) return false;
    }
    return true;
}

MinimalityReport is_minimal_code(const VectorRankCode& C)
{
    const Ambient& X = C.ambient();
    MinimalityReport r;
    const double classes = double(X.point_count());
    check_guard(classes * classes, 2e7, "pairwise minimality check");
    std::vector<Vec> xs;
    std::vector<Subspace> supports, meets;
    X.for_each_point([&](const Vec& x) {
        xs.push_back(x);
        supports.push_back(rank_support(X.tower(), C.encode(x)));
        meets.push_back(hyperplane_meet(C, x));
    });
    r.classes = xs.size();

    r.by_supports = true;
    for (std::size_t i = 0; i < xs.size() && r.by_supports; ++i)
        for (std::size_t j = 0; j < xs.size(); ++j) {
            if (i == j || supports[i].dim() > supports[j].dim()) continue;
            if (supports[j].contains(supports[i])) {
                r.by_supports = false;
                r.certificate = std::make_pair(xs[i], xs[j]);
                break;
            }
        }

    r.by_hyperplanes = true;
    for (std::size_t i = 0; i < xs.size() && r.by_hyperplanes; ++i)
        for (std::size_t j = 0; j < xs.size(); ++j) {
            if (i == j || meets[i].dim() < meets[j].dim()) continue;
            if (meets[i].contains(meets[j])) {
                r.by_hyperplanes = false;
                break;
            }
        }
    verify(r.by_supports == r.by_hyperplanes, "support and hyperplane minimality tests disagree");
    r.minimal = r.by_supports;
    return r;
}

MinimalCode construct_minimal_code(const FieldTower& tower)
{
    require(tower.m() >= 4, "construct_minimal_code needs m >= 4");
    CuttingResult cut = cutting_from_scattered(tower, 3, 2);
    VectorRankCode code = VectorRankCode::from_system(cut.L.X, cut.U);
    verify(code.non_degenerate(), "system of the cutting set is degenerate");
    verify(code.length() == tower.m() + 3 && code.k() == 3, "unexpected code parameters");
    MinimalCode out{std::move(code), std::move(cut), std::nullopt};
    try {
        out.report = is_minimal_code(out.code);
    } catch (const GuardError&) {
    }
    if (out.report) verify(out.report->minimal, "code from a cutting system is not minimal");
    return out;
}

}  // namespace scatterlab
