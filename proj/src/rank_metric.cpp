#include "scatterlab/rank_metric.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "scatterlab/errors.hpp"
#include "scatterlab/scattered.hpp"

namespace scatterlab {

namespace {

Matrix scale(const Field& F, Elem c, Matrix A)
{
    for (auto& x : A.a) x = F.mul(c, x);
    return A;
}

Matrix add(const Field& F, Matrix A, const Matrix& B)
{
    for (std::size_t i = 0; i < A.a.size(); ++i) A.a[i] = F.add(A.a[i], B.a[i]);
    return A;
}

// Calls fn on every m x mp matrix over F in counter order; stops when fn returns false.
void for_each_matrix(const Field& F, std::size_t m, std::size_t mp, const std::function<bool(const Matrix&)>& fn)
{
    check_guard(std::pow(double(F.order()), double(m * mp)), double(1u << 24), "matrix space sweep");
    Matrix Y(m, mp);
    const Elem q = F.order();
    for (;;) {
        if (!fn(Y)) return;
        std::size_t i = 0;
        while (i < Y.a.size() && ++Y.a[i] == q) Y.a[i++] = 0;
        if (i == Y.a.size()) return;
    }
}

unsigned rank_of_difference(const Field& F, const Matrix& A, const Matrix& B)
{
    return unsigned(rank(F, sub(F, A, B)));
}

bool is_zero_matrix(const Matrix& A)
{
    return std::all_of(A.a.begin(), A.a.end(), [](Elem x) { return x == 0; });
}

}  // namespace

MatrixCode::MatrixCode(std::shared_ptr<const Field> field, std::vector<Matrix> codewords, bool linear)
    : field_(std::move(field)), linear_(linear)
{
    require(!codewords.empty(), "empty code");
    const std::size_t r = codewords[0].rows, c = codewords[0].cols;
    for (const auto& A : codewords) require(A.rows == r && A.cols == c, "codewords differ in shape");
    for (const auto& A : codewords)
        for (Elem x : A.a) require(x < field_->order(), "matrix entry outside F_q");
    if (r > c) {
        transposed_ = true;
        for (auto& A : codewords) A = transpose(A);
    }
    m_ = std::min(r, c);
    mp_ = std::max(r, c);
    std::sort(codewords.begin(), codewords.end());
    codewords.erase(std::unique(codewords.begin(), codewords.end()), codewords.end());
    words_ = std::move(codewords);
    require(words_.size() >= 2, "a code needs at least two codewords");
    if (linear_) require(closed_under_linear_combinations(*this), "code flagged linear is not F_q-linear");
}

MatrixCode MatrixCode::span(std::shared_ptr<const Field> field, const std::vector<Matrix>& basis)
{
    require(!basis.empty(), "empty basis");
    const Field& F = *field;
    check_guard(std::pow(double(F.order()), double(basis.size())), double(1u << 24), "linear code enumeration");
    std::vector<Matrix> words;
    std::vector<Elem> c(basis.size(), 0);
    for (;;) {
        Matrix A(basis[0].rows, basis[0].cols);
        for (std::size_t i = 0; i < basis.size(); ++i)
            if (c[i]) A = add(F, A, scale(F, c[i], basis[i]));
        words.push_back(std::move(A));
        std::size_t i = 0;
        while (i < c.size() && ++c[i] == F.order()) c[i++] = 0;
        if (i == c.size()) break;
    }
    return MatrixCode(std::move(field), std::move(words), true);
}

MatrixCode MatrixCode::whole_space(std::shared_ptr<const Field> field, std::size_t m, std::size_t mp)
{
    std::vector<Matrix> words;
    for_each_matrix(*field, m, mp, [&](const Matrix& Y) {
        words.push_back(Y);
        return true;
    });
    return MatrixCode(std::move(field), std::move(words), true);
}

bool closed_under_linear_combinations(const MatrixCode& C)
{
    const auto& w = C.codewords();
    const Field& F = C.field();
    check_guard(double(w.size()) * double(w.size()), 1e8, "linearity check");
    auto has = [&](const Matrix& A) { return std::binary_search(w.begin(), w.end(), A); };
    for (std::size_t i = 0; i < w.size(); ++i) {
        for (Elem c = 2; c < F.order(); ++c)
            if (!has(scale(F, c, w[i]))) return false;
        for (std::size_t j = i; j < w.size(); ++j)
            if (!has(add(F, w[i], w[j]))) return false;
    }
    return has(Matrix(C.m(), C.mp()));
}

unsigned min_rank_distance(const MatrixCode& C)
{
    const auto& w = C.codewords();
    const Field& F = C.field();
    unsigned d = unsigned(C.m());
    if (C.linear()) {
        for (const auto& A : w)
            if (!is_zero_matrix(A)) d = std::min(d, unsigned(rank(F, A)));
        return d;
    }
    check_guard(double(w.size()) * double(w.size()) / 2, 1e8, "pairwise distance");
    for (std::size_t i = 0; i < w.size(); ++i)
        for (std::size_t j = i + 1; j < w.size(); ++j) d = std::min(d, rank_of_difference(F, w[i], w[j]));
    return d;
}

SingletonReport singleton_defect(const MatrixCode& C)
{
    SingletonReport r;
    r.d = min_rank_distance(C);
    r.exponent = long(C.mp()) * (long(C.m()) - long(r.d) + 1);
    r.size = C.size();
    const BigInt bound = big_pow(C.q(), r.exponent);
    r.violated = r.size > bound;
    BigInt p = 1;
    long e = 0;
    while (p < r.size) {
        p *= C.q();
        ++e;
    }
    if (p == r.size) r.defect = r.exponent - e;
    r.mrd = r.size == bound;
    return r;
}

Subspace graph_space(std::shared_ptr<const Field> fp, const Matrix& A)
{
    const std::size_t m = A.rows, mp = A.cols;
    Matrix G(m, m + mp);
    for (std::size_t i = 0; i < m; ++i) {
        G(i, i) = 1;
        for (std::size_t j = 0; j < mp; ++j) G(i, m + j) = A(i, j);
    }
    return Subspace::span(std::move(fp), m + mp, std::move(G));
}

Subspace s_infinity(std::shared_ptr<const Field> field, std::size_t m, std::size_t mp)
{
    Matrix G(mp, m + mp);
    for (std::size_t j = 0; j < mp; ++j) G(j, m + j) = 1;
    return Subspace::span(std::move(field), m + mp, std::move(G));
}

CodeSpread code_to_partial_spread(const MatrixCode& C)
{
    const unsigned d = min_rank_distance(C);
    require(d == C.m(), "code_to_partial_spread needs minimum distance m, got " + std::to_string(d));
    std::vector<Subspace> elems;
    elems.reserve(C.size());
    for (const auto& A : C.codewords()) elems.push_back(graph_space(C.field_ptr(), A));
    PartialSpread S(C.field_ptr(), C.m() + C.mp(), C.m(), std::move(elems), SpreadKind::adhoc);
    return {std::move(S), s_infinity(C.field_ptr(), C.m(), C.mp())};
}

MatrixCode spread_to_code(const PartialSpread& A, std::size_t m, std::size_t mp)
{
    require(A.N() == m + mp && A.m() == m, "spread shape does not match m + m'");
    const Subspace inf = s_infinity(A.field_ptr(), m, mp);
    std::vector<Matrix> words;
    for (const auto& S : A.elements()) {
        require(meet_dim(S, inf) == 0, "spread element meets S_inf");
        Matrix Y(m, mp);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < mp; ++j) Y(i, j) = S.basis()(i, m + j);
        words.push_back(std::move(Y));
    }
    return MatrixCode(A.field_ptr(), std::move(words));
}

CoveringBound covering_radius_lower_bound(std::size_t m, std::size_t mp, const BigInt& size, std::uint64_t q)
{
    require(m <= mp, "covering bound expects m <= m'");
    require(size >= 1, "code size must be positive");
    CoveringBound b;
    unsigned h = 0;
    while (!(4 * size < big_pow(q, long(h + 1) * (long(mp) - long(m) + h + 1)))) ++h;
    b.h_star = h;
    b.bound = h >= m ? 0 : unsigned(m - h);
    if (q != 2 && q != 3) {
        BigInt p = 1;
        long s = 0;
        while (p < size) {
            p *= q;
            ++s;
        }
        if (p == size) b.simplified = long(m) - long(std::sqrt(double(s + 1)) + 1e-9);
    }
    return b;
}

CoveringBound covering_radius_lower_bound_exp(std::size_t m, std::size_t mp, unsigned s, std::uint64_t q)
{
    return covering_radius_lower_bound(m, mp, big_pow(q, s), q);
}

unsigned covering_radius_scattered(const MatrixCode& C)
{
    const std::size_t m = C.m(), N = C.m() + C.mp();
    check_guard(gauss_binomial_approx(N, m, C.q()) * double(C.size()), 5e7, "scattered covering formulation");
    const Subspace inf = s_infinity(C.field_ptr(), m, C.mp());
    std::vector<Subspace> graphs;
    for (const auto& A : C.codewords()) graphs.push_back(graph_space(C.field_ptr(), A));
    unsigned h_min = unsigned(m);
    GrassmannianCursor cur(C.field_ptr(), N, m);
    while (cur.next()) {
        const Subspace& U = cur.current();
        if (meet_dim(U, inf) != 0) continue;
        unsigned worst = 0;
        for (const auto& S : graphs) {
            worst = std::max(worst, unsigned(meet_dim(U, S)));
            if (worst >= h_min) break;
        }
        h_min = std::min(h_min, worst);
        if (h_min == 0) break;
    }
    return unsigned(m) - h_min;
}

CoveringReport covering_radius_exact(const MatrixCode& C)
{
    CoveringReport r;
    const auto b = covering_radius_lower_bound(C.m(), C.mp(), BigInt(C.size()), C.q());
    r.lower_bound = b.bound;
    r.h_star = b.h_star;
    r.simplified_bound = b.simplified;

    const Field& F = C.field();
    unsigned best = 0;
    bool first = true;
    for_each_matrix(F, C.m(), C.mp(), [&](const Matrix& Y) {
        ++r.swept;
        unsigned dist = unsigned(C.m());
        for (const auto& A : C.codewords()) {
            dist = std::min(dist, rank_of_difference(F, A, Y));
            if (!first && dist <= best) break;
        }
        if (first || dist > best) {
            best = dist;
            r.witness = Y;
            first = false;
        }
        return best < C.m();
    });
    r.exact = best;
    try {
        r.scattered_radius = covering_radius_scattered(C);
    } catch (const GuardError&) {
    }
    if (r.scattered_radius)
        verify(*r.scattered_radius == best, "scattered formulation disagrees with the covering-radius sweep");
    verify(r.lower_bound <= best, "covering-radius lower bound exceeds the exact radius");
    return r;
}

std::optional<Matrix> find_extension(const MatrixCode& C)
{
    const Field& F = C.field();
    std::optional<Matrix> found;
    for_each_matrix(F, C.m(), C.mp(), [&](const Matrix& Y) {
        for (const auto& A : C.codewords())
            if (rank_of_difference(F, A, Y) < C.m()) return true;
        found = Y;
        return false;
    });
    if (found) {
        auto words = C.codewords();
        words.push_back(*found);
        verify(min_rank_distance(MatrixCode(C.field_ptr(), std::move(words))) == C.m(),
               "extension lowers the minimum distance");
    }
    return found;
}

std::optional<MatrixCode> random_linear_code(std::shared_ptr<const Field> field, std::size_t m, std::size_t mp,
                                             unsigned dim, unsigned d, std::mt19937_64& rng, unsigned tries)
{
    require(dim >= 1, "dimension must be positive");
    std::uniform_int_distribution<Elem> entry(0, field->order() - 1);
    const std::uint64_t want = std::uint64_t(std::pow(double(field->order()), double(dim)) + 0.5);
    for (unsigned t = 0; t < tries; ++t) {
        std::vector<Matrix> basis(dim, Matrix(m, mp));
        for (auto& B : basis)
            for (auto& x : B.a) x = entry(rng);
        bool zero = std::any_of(basis.begin(), basis.end(), is_zero_matrix);
        if (zero) continue;
        MatrixCode C = MatrixCode::span(field, basis);
        if (C.size() == want && min_rank_distance(C) >= d) return C;
    }
    return std::nullopt;
}

MatrixCode multiplication_code(const FieldTower& tower)
{
    const std::size_t m = tower.m();
    std::vector<Matrix> words;
    for (Elem a = 0; a < tower.qm(); ++a) {
        Matrix M(m, m);
        for (std::size_t i = 0; i < m; ++i) {
            const auto c = tower.coords(tower.top().mul(a, tower.basis()[i]));
            for (std::size_t j = 0; j < m; ++j) M(i, j) = c[j];
        }
        words.push_back(std::move(M));
    }
    return MatrixCode(tower.base_ptr(), std::move(words), true);
}

ScatteredCode code_from_scattered(const PartialSpread& A, const Subspace& U, unsigned h)
{
    require(A.ambient().has_value() && A.has_points(), "code_from_scattered needs a spread of F_{q^m}-points");
    const Ambient& X = *A.ambient();
    const std::size_t m = X.m(), N = X.N();
    require(U.ambient_dim() == N, "U lives in the wrong ambient");
    require(h < m, "need h < m");
    require(U.dim() < N, "U must be a proper subspace");
    const PartialSpread A2 = second_order_closure(A);
    require(is_scattered(U, A2, h), "U is not scattered w.r.t. the second-order closure");

    const std::size_t s = A.size();
    const double qm = double(X.qm());
    check_guard(double(s) * (qm - 1) + 1, 1e6, "code_from_scattered size");

    const Field& Fq = X.base();
    const Field& T = X.top();
    const Matrix G = U.annihilator().basis();  // (N - k) x N, kernel U
    auto word = [&](const Vec& v) {
        Matrix tau(N, m);  // column j = expand(b_j v)
        for (std::size_t j = 0; j < m; ++j) {
            Vec w(v.size());
            for (std::size_t i = 0; i < v.size(); ++i) w[i] = T.mul(X.tower().basis()[j], v[i]);
            const Vec e = X.expand(w);
            for (std::size_t c = 0; c < N; ++c) tau(c, j) = e[c];
        }
        return mul(Fq, G, tau);
    };

    std::vector<Matrix> words;
    words.push_back(Matrix(G.rows, m));
    for (const auto& p : A.points())
        for (Elem lam = 1; lam < X.qm(); ++lam) {
            Vec v(p.size());
            for (std::size_t i = 0; i < p.size(); ++i) v[i] = T.mul(lam, p[i]);
            words.push_back(word(v));
        }

    ScatteredCode r{MatrixCode(X.base_ptr(), words), false, false, 0, h, s * (X.qm() - 1) + 1};
    verify(r.code.size() == r.expected_size, "codewords G∘tau_v are not pairwise distinct");
    const Subspace W = Subspace::span(X.top_ptr(), X.n(), A.points());
    r.linear_by_criterion = point_count_of_dim(unsigned(W.dim()), X.qm()) == s;
    r.linear_by_closure = closed_under_linear_combinations(r.code);
    verify(r.linear_by_criterion == r.linear_by_closure, "linearity criterion disagrees with the closure test");
    if (r.linear_by_closure) r.code = MatrixCode(X.base_ptr(), std::move(words), true);
    r.d = min_rank_distance(r.code);
    verify(r.d + h >= m, "code distance below m - h");
    return r;
}

}  // namespace scatterlab
