#include "scatterlab/scattered.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>

#include "scatterlab/count_table.hpp"
#include "scatterlab/duality.hpp"
#include "scatterlab/errors.hpp"

namespace scatterlab {

namespace {

constexpr double kVectorGuard = 1 << 26;

double qpow(double q, double e) { return std::pow(q, e); }

void finish(ScatterProfile& P, std::uint64_t total_elements, bool know_total)
{
    for (const auto& [key, d] : P.dims) {
        ++P.histogram[d];
        if (d > P.max_dim || !P.witness) {
            if (d > P.max_dim) P.max_dim = d;
            if (d == P.max_dim) P.witness = key;
        }
    }
    if (know_total) P.histogram[0] = total_elements - P.dims.size();
}

std::uint64_t threshold_points(std::uint32_t q, unsigned h)
{
    return point_count_of_dim(h + 1, q);
}

// q = 2 fast path: vectors of F_2^{mn} as words, Gray-code enumeration.
struct Packed {
    const Ambient& X;
    unsigned m;
    std::uint64_t mask;
    std::vector<std::uint64_t> rows;

    Packed(const Ambient& X_, const Subspace& U) : X(X_), m(unsigned(X_.m())), mask((std::uint64_t{1} << m) - 1)
    {
        for (std::size_t r = 0; r < U.dim(); ++r) {
            std::uint64_t w = 0;
            const auto row = U.basis().row(r);
            for (std::size_t c = 0; c < row.size(); ++c)
                if (row[c]) w |= std::uint64_t{1} << c;
            rows.push_back(w);
        }
    }

    std::uint64_t key(std::uint64_t v) const
    {
        const Field& T = X.top();
        const std::size_t n = X.n();
        std::size_t i = 0;
        Elem lead = 0;
        while ((lead = Elem((v >> (i * m)) & mask)) == 0) ++i;
        if (lead == 1) return v;
        const Elem s = T.inv(lead);
        std::uint64_t out = 0;
        for (std::size_t j = i; j < n; ++j) {
            const Elem x = Elem((v >> (j * m)) & mask);
            if (x) out |= std::uint64_t(T.mul(s, x)) << (j * m);
        }
        return out;
    }

    // fn(key) returns false to stop.
    template <class Fn>
    void for_each_key(Fn&& fn) const
    {
        const std::size_t k = rows.size();
        std::uint64_t v = 0;
        const std::uint64_t total = std::uint64_t{1} << k;
        for (std::uint64_t g = 1; g < total; ++g) {
            v ^= rows[std::countr_zero(g)];
            if (!fn(key(v))) return;
        }
    }
};

bool use_packed(const Ambient& X)
{
    return X.packable() && X.q() == 2 && X.N() <= 64;
}

template <class Fn>
void for_each_point_key(const Subspace& U, const Ambient& X, Fn&& fn)
{
    check_guard(qpow(X.q(), double(U.dim())), kVectorGuard, "vector enumeration of U");
    if (use_packed(X)) {
        Packed P(X, U);
        P.for_each_key(fn);
        return;
    }
    for_each_projective_vector(U, [&](const Vec& v) { return fn(X.point_key(X.normalize(X.contract(v)))); });
}

}  // namespace

// ---------------------------------------------------------------------------

ScatterProfile scatter_profile(const Subspace& U, const PartialSpread& A, const PointClassifier& C)
{
    require(U.ambient_dim() == A.N(), "scatter_profile: ambient mismatch");
    check_guard(qpow(U.field().order(), double(U.dim())), kVectorGuard, "vector enumeration of U");
    std::map<std::uint64_t, std::uint64_t> counts;
    for_each_projective_vector(U, [&](const Vec& v) {
        if (auto i = C.classify(v)) ++counts[*i];
        return true;
    });
    ScatterProfile P;
    for (const auto& [i, c] : counts) P.dims[i] = dim_from_point_count(c, U.field().order());
    finish(P, A.size(), true);
    return P;
}

ScatterProfile scatter_profile(const Subspace& U, const PartialSpread& A, ProfilePath path)
{
    require(U.ambient_dim() == A.N(), "scatter_profile: ambient mismatch");
    if (path == ProfilePath::automatic)
        path = qpow(U.field().order(), double(U.dim())) <= kVectorGuard * guard_scale() ? ProfilePath::fast
                                                                                         : ProfilePath::generic;
    if (path == ProfilePath::fast) return scatter_profile(U, A, PointClassifier(A));
    ScatterProfile P;
    for (std::size_t i = 0; i < A.size(); ++i)
        if (const auto d = meet_dim(U, A[i]); d > 0) P.dims[i] = unsigned(d);
    finish(P, A.size(), true);
    return P;
}

bool is_scattered(const Subspace& U, const PartialSpread& A, const PointClassifier& C, unsigned h)
{
    if (U.dim() <= h || A.size() == 0) return true;
    const std::uint64_t limit = threshold_points(U.field().order(), h);
    std::unordered_map<std::size_t, std::uint64_t> counts;
    bool ok = true;
    for_each_projective_vector(U, [&](const Vec& v) {
        if (auto i = C.classify(v))
            if (++counts[*i] >= limit) ok = false;
        return ok;
    });
    return ok;
}

bool is_scattered(const Subspace& U, const PartialSpread& A, unsigned h)
{
    return scatter_profile(U, A).max_dim <= h;
}

ScatterProfile desarguesian_profile(const Subspace& U, const Ambient& X, const std::function<bool(std::uint64_t)>& skip)
{
    require(U.ambient_dim() == X.N(), "desarguesian_profile: ambient mismatch");
    CountTable table;
    table.reset(std::size_t(std::min(qpow(X.q(), double(U.dim())), 1e8)));
    for_each_point_key(U, X, [&](std::uint64_t k) {
        table.bump(k);
        return true;
    });
    ScatterProfile P;
    table.for_each([&](std::uint64_t key, std::uint32_t c) {
        if (!skip || !skip(key)) P.dims[key] = dim_from_point_count(c, X.q());
    });
    finish(P, X.point_count(), !skip);
    return P;
}

bool is_desarguesian_scattered(const Subspace& U, const Ambient& X, unsigned h,
                               const std::function<bool(std::uint64_t)>& skip)
{
    if (U.dim() <= h) return true;
    DesarguesianChecker C(X);
    if (!skip) return C.scattered(U, h);
    return desarguesian_profile(U, X, skip).max_dim <= h;
}

struct DesarguesianChecker::Impl {
    CountTable table;
};

DesarguesianChecker::DesarguesianChecker(const Ambient& X) : X_(&X), impl_(std::make_shared<Impl>()) {}

bool DesarguesianChecker::scattered(const Subspace& U, unsigned h)
{
    if (U.dim() <= h) return true;
    const std::uint64_t limit = threshold_points(X_->q(), h);
    impl_->table.reset(std::size_t(std::min(qpow(X_->q(), double(U.dim())), 1e8)));
    bool ok = true;
    for_each_point_key(U, *X_, [&](std::uint64_t k) {
        if (impl_->table.bump(k) >= limit) ok = false;
        return ok;
    });
    return ok;
}

// ---------------------------------------------------------------------------

namespace {

// Max over h-dim F_{q^m}-subspaces W of dim(U ∩ W); stops once above `stop`.
unsigned max_meet_fqm(const Subspace& U, const Ambient& X, unsigned h, unsigned stop)
{
    const std::size_t n = X.n(), m = X.m();
    require(h >= 1 && h <= n, "F_{q^m}-dimension out of range");
    if (h == n) return unsigned(U.dim());
    const Field& T = X.top();
    const Field& F = X.base();
    std::vector<Vec> cu;
    for (std::size_t r = 0; r < U.dim(); ++r) cu.push_back(X.contract(U.basis().row(r)));
    unsigned best = 0;
    GrassmannianCursor cur(X.top_ptr(), n, n - h);
    Matrix R(U.dim(), (n - h) * m);
    while (cur.next()) {
        const Matrix& M = cur.current().basis();
        for (std::size_t u = 0; u < cu.size(); ++u)
            for (std::size_t r = 0; r < M.rows; ++r) {
                Elem y = 0;
                for (std::size_t c = 0; c < n; ++c)
                    if (M(r, c) && cu[u][c]) y = T.add(y, T.mul(M(r, c), cu[u][c]));
                const auto co = X.tower().coords(y);
                for (std::size_t j = 0; j < m; ++j) R(u, r * m + j) = co[j];
            }
        const unsigned d = unsigned(U.dim() - rank(F, R));
        best = std::max(best, d);
        if (best > stop) break;
    }
    return best;
}

}  // namespace

unsigned max_meet_with_fqm_subspaces(const Subspace& U, const Ambient& X, unsigned h)
{
    return max_meet_fqm(U, X, h, ~0u);
}

bool is_h_scattered(const Subspace& U, const Ambient& X, unsigned h)
{
    require(U.ambient_dim() == X.N(), "is_h_scattered: ambient mismatch");
    require(h >= 1 && h + 1 <= X.n(), "h-scattered needs 1 <= h <= n-1");
    if (X.fqm_span(U).dim() != X.n()) return false;
    return max_meet_fqm(U, X, h, h) <= h;
}

// ---------------------------------------------------------------------------

Subspace direct_sum(const std::vector<Subspace>& parts)
{
    require(!parts.empty(), "direct_sum needs at least one part");
    std::size_t N = 0;
    for (const auto& P : parts) N += P.ambient_dim();
    Matrix M(0, N);
    std::size_t off = 0;
    for (const auto& P : parts) {
        require(P.field().order() == parts.front().field().order(), "direct_sum: field mismatch");
        for (std::size_t r = 0; r < P.dim(); ++r) {
            Vec v(N, 0);
            for (std::size_t c = 0; c < P.ambient_dim(); ++c) v[off + c] = P.basis()(r, c);
            M.append_row(v);
        }
        off += P.ambient_dim();
    }
    return Subspace::span(parts.front().field_ptr(), N, std::move(M));
}

namespace {

// F_q-span of { (f_1(b), ..., f_n(b)) : b in the tower basis } for F_q-linear f_i.
Subspace image_of_basis(const Ambient& X, const std::function<Vec(Elem)>& f, const std::vector<Vec>& extra = {})
{
    Matrix M(0, X.N());
    for (Elem b : X.tower().basis()) M.append_row(X.expand(f(b)));
    for (const auto& e : extra) M.append_row(X.expand(e));
    return Subspace::span(X.base_ptr(), X.N(), std::move(M));
}

Subspace pseudoregulus_in(const Ambient& X, const std::vector<unsigned>& powers)
{
    return image_of_basis(X, [&](Elem b) {
        Vec x(X.n());
        for (std::size_t i = 0; i < X.n(); ++i) x[i] = X.tower().frobenius(b, powers[i]);
        return x;
    });
}

std::vector<unsigned> iota_powers(std::size_t n)
{
    std::vector<unsigned> p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = unsigned(i);
    return p;
}

std::string check_against_D(const Ambient& X, const Subspace& U, unsigned h,
                            const std::function<bool(std::uint64_t)>& skip = {})
{
    if (qpow(X.q(), double(U.dim())) > kVectorGuard * guard_scale())
        return "skipped: vector enumeration exceeds guard";
    verify(is_desarguesian_scattered(U, X, h, skip), "constructed subspace is not scattered as advertised");
    return "verified";
}

FieldTower tower_for(std::uint32_t q, unsigned m)
{
    const auto [p, e] = prime_power(q);
    return FieldTower::make(p, e, m);
}

}  // namespace

Subspace pseudoregulus_dual(const Ambient& X)
{
    return DualityContext(X).perp_fq(pseudoregulus_in(X, iota_powers(X.n())));
}

std::vector<std::string> family_kinds()
{
    return {"even-n", "odd-n", "pseudoregulus", "alt-pseudoregulus", "direct-sum", "padded", "complement-augmented"};
}

FamilyResult construct_family(const std::string& kind, const FamilyParams& p)
{
    require(p.m >= 1, "m must be >= 1");
    const FieldTower tower = tower_for(p.q, p.m);
    const unsigned m = p.m;

    auto even_part = [&](const Ambient& X, unsigned t) {
        return image_of_basis(X, [&](Elem b) {
            Vec x(X.n(), 0);
            for (unsigned i = 0; i < t; ++i) {
                x[2 * i] = b;
                x[2 * i + 1] = tower.frobenius(b, 1);
            }
            return x;
        });
    };

    if (kind == "even-n") {
        require(p.t >= 1, "even-n needs t >= 1");
        Ambient X(tower, 2 * p.t);
        // Each block x_i contributes independently.
        std::vector<Subspace> blocks(p.t, even_part(Ambient(tower, 2), 1));
        Subspace U = direct_sum(blocks);
        verify(U.dim() == m * p.t, "even-n dimension mismatch");
        FamilyResult r{X, U, 1, "", {}};
        r.verification = check_against_D(X, U, 1);
        return r;
    }
    if (kind == "odd-n") {
        require(p.t >= 1, "odd-n needs t >= 1");
        Ambient X(tower, 2 * p.t + 1);
        std::vector<Subspace> blocks(p.t, even_part(Ambient(tower, 2), 1));
        Ambient X1(tower, 1);
        Vec one(1, 1);
        blocks.push_back(Subspace::span(X.base_ptr(), m, std::vector<Vec>{X1.expand(one)}));
        Subspace U = direct_sum(blocks);
        verify(U.dim() == m * p.t + 1, "odd-n dimension mismatch");
        FamilyResult r{X, U, 1, "", {}};
        r.verification = check_against_D(X, U, 1);
        return r;
    }
    if (kind == "pseudoregulus") {
        require(p.n >= 2 && p.n <= m, "pseudoregulus needs 2 <= n <= m");
        Ambient X(tower, p.n);
        Subspace U = pseudoregulus_in(X, iota_powers(p.n));
        verify(U.dim() == m, "pseudoregulus dimension mismatch");
        FamilyResult r{X, U, p.n - 1, "", {}};
        try {
            verify(is_h_scattered(U, X, p.n - 1), "pseudoregulus is not (n-1)-scattered");
            r.verification = "verified";
        } catch (const GuardError& e) {
            r.verification = std::string("skipped: ") + e.what();
        }
        return r;
    }
    if (kind == "alt-pseudoregulus") {
        require((m == 7 && p.q % 2 == 1) || (m == 8 && p.q % 3 == 1),
                "alt-pseudoregulus is only available for m = 7 with q odd or m = 8 with q = 1 mod 3");
        Ambient X(tower, 3);
        Subspace U = pseudoregulus_in(X, {0, 1, 3});
        verify(U.dim() == m, "alt-pseudoregulus dimension mismatch");
        // Throws GuardError rather than returning an unchecked subspace.
        verify(is_h_scattered(U, X, 2), "alt-pseudoregulus failed the 2-scattered check");
        return FamilyResult{X, U, 2, "verified", {}};
    }
    if (kind == "direct-sum") {
        require(p.t >= 1 && p.copies >= 1, "direct-sum needs t >= 1 and copies >= 1");
        Ambient X(tower, 2 * p.t * p.copies);
        std::vector<Subspace> parts;
        for (unsigned c = 0; c < p.copies; ++c) parts.push_back(construct_family("even-n", {p.q, m, p.t}).U);
        Subspace U = direct_sum(parts);
        FamilyResult r{X, U, 1, "", {}};
        r.verification = check_against_D(X, U, 1);
        return r;
    }
    if (kind == "padded") {
        require(p.h >= 1 && p.h + 1 <= m, "padded needs 1 <= h <= m-1");
        const unsigned t = p.t;
        const unsigned n = p.n ? p.n : t * (p.h + 1);
        require(t >= 1 && n >= t * (p.h + 1), "padded needs n >= t(h+1)");
        Ambient X(tower, n);
        const Subspace block = pseudoregulus_dual(Ambient(tower, p.h + 1));
        std::vector<Subspace> parts(t, block);
        if (n > t * (p.h + 1)) parts.push_back(Subspace(X.base_ptr(), m * (n - t * (p.h + 1))));
        Subspace U = direct_sum(parts);
        verify(U.dim() == p.h * m * t, "padded dimension mismatch");
        FamilyResult r{X, U, p.h, "", {}};
        r.verification = check_against_D(X, U, p.h);
        return r;
    }
    if (kind == "complement-augmented") {
        require(p.h >= 1 && p.h + 1 <= m, "complement-augmented needs 1 <= h <= m-1");
        require(p.t1 >= 1 && p.t1 % (p.h + 1) == 0 && p.t2 >= 1, "complement-augmented needs (h+1) | t1 and t2 >= 1");
        const unsigned n = p.t1 + p.t2;
        Ambient X(tower, n);
        FamilyParams q1 = p;
        q1.n = p.t1;
        q1.t = p.t1 / (p.h + 1);
        const Subspace U1 = construct_family("padded", q1).U;
        const Subspace U = direct_sum({U1, Subspace::full(X.base_ptr(), m * p.t2)});
        verify((p.h + 1) * U.dim() == p.h * m * n + m * p.t2, "complement-augmented dimension mismatch");
        std::uint64_t Qt1 = 1;
        for (unsigned i = 0; i < p.t1; ++i) Qt1 *= X.qm();
        // Normalized points of T_2 have zero first t1 coordinates.
        auto in_T2 = [Qt1](std::uint64_t key) { return key % Qt1 == 0; };
        FamilyResult r{X, U, p.h, "", {}};
        r.excluded = in_T2;
        r.verification = check_against_D(X, U, p.h, in_T2);
        return r;
    }
    throw ValidationError("unknown family kind '" + kind + "'");
}

// ---------------------------------------------------------------------------

unsigned applicable_upper_bound(const PartialSpread& A, unsigned h)
{
    const unsigned N = unsigned(A.N()), m = unsigned(A.m());
    if (A.size() == 0 || h >= m) return N;
    unsigned b = N - m + h;
    const double cap = qpow(A.field().order(), double(N - m));
    if (double(A.size()) > cap) b -= 1;
    if (A.kind() == SpreadKind::desarguesian && A.size() == A.full_size())
        b = std::min(b, unsigned(std::uint64_t(h) * N / (h + 1)));
    return b;
}

SearchResult max_scattered_dimension(const PartialSpread& A, unsigned h, const SearchOptions& opt)
{
    const std::size_t N = A.N();
    SearchResult res;
    if (h >= A.m() || A.size() == 0) {
        res.k_max = unsigned(N);
        res.witness = Subspace::full(A.field_ptr(), N);
        res.start_k = unsigned(N);
        return res;
    }
    const PointClassifier C(A);
    if (opt.mode == SearchMode::exhaustive) {
        res.start_k = opt.start_from_bound ? applicable_upper_bound(A, h) : unsigned(N);
        for (unsigned k = res.start_k + 1; k-- > 0;) {
            check_guard(gauss_binomial_approx(N, k, A.field().order()), kGrassmannianGuard, "exhaustive search");
            GrassmannianCursor cur(A.field_ptr(), N, k);
            while (cur.next()) {
                ++res.visited;
                if (is_scattered(cur.current(), A, C, h)) {
                    res.k_max = k;
                    res.witness = cur.current();
                    return res;
                }
            }
        }
        verify(false, "exhaustive search found no scattered subspace, not even {0}");
    }
    res.is_lower_bound = true;
    res.start_k = unsigned(N);
    std::mt19937_64 rng(opt.seed);
    const Field& F = A.field();
    std::uniform_int_distribution<Elem> coef(0, F.order() - 1);
    res.witness = Subspace(A.field_ptr(), N);
    for (unsigned trial = 0; trial < opt.trials; ++trial) {
        Subspace U(A.field_ptr(), N);
        unsigned stall = 0;
        while (stall < 64 && U.dim() < N) {
            Vec v(N);
            for (auto& x : v) x = coef(rng);
            if (U.contains(v)) continue;
            Matrix G = U.basis();
            G.append_row(v);
            Subspace W = Subspace::span(A.field_ptr(), N, std::move(G));
            ++res.visited;
            if (is_scattered(W, A, C, h)) {
                U = std::move(W);
                stall = 0;
            } else {
                ++stall;
            }
        }
        if (U.dim() > res.k_max) {
            res.k_max = unsigned(U.dim());
            res.witness = U;
        }
    }
    return res;
}

// ---------------------------------------------------------------------------

bool general_sharper_condition(unsigned m, unsigned n, unsigned h)
{
    // m > (h^2-1)/(h+1-n) with h+1-n > 0
    return n < h + 1 && std::uint64_t(m) * (h + 1 - n) > std::uint64_t(h) * h - 1;
}

BoundTable bound_table(unsigned m, unsigned n, unsigned h)
{
    require(h >= 1 && h <= m && n >= 1, "bound_table needs 1 <= h <= m, n >= 1");
    BoundTable b;
    b.m = m;
    b.n = n;
    b.h = h;
    b.general_bound = m * (n - 1) + h;
    b.spread_bound = m * (n - 1) + h - 1;
    b.desarguesian_bound = unsigned(std::uint64_t(h) * m * n / (h + 1));
    b.sharper = std::uint64_t(h + 1) * b.spread_bound < std::uint64_t(h) * m * n ? "general" : "desarguesian";
    return b;
}

unsigned partial_desarguesian_size_exponent(unsigned m, unsigned n, unsigned h, unsigned k)
{
    require(k <= m * n && h >= 1 && h <= m, "partial_desarguesian_size_exponent: bad parameters");
    if (k + m <= m * n) return (m * n - k) * (h + 1);
    return m * (m * n - k - m + h + 1);
}

// ---------------------------------------------------------------------------

std::map<unsigned, std::uint64_t> hyperplane_weight_spectrum(const Subspace& U, const Ambient& X)
{
    require(U.ambient_dim() == X.N(), "hyperplane spectrum: ambient mismatch");
    check_guard(double(X.point_count()), 1e7, "hyperplane enumeration");
    const Field& T = X.top();
    const std::size_t m = X.m(), n = X.n();
    std::vector<Vec> cu;
    for (std::size_t r = 0; r < U.dim(); ++r) cu.push_back(X.contract(U.basis().row(r)));
    std::map<unsigned, std::uint64_t> spec;
    Matrix R(U.dim(), m);
    X.for_each_point([&](const Vec& a) {
        for (std::size_t u = 0; u < cu.size(); ++u) {
            Elem y = 0;
            for (std::size_t i = 0; i < n; ++i)
                if (a[i] && cu[u][i]) y = T.add(y, T.mul(a[i], cu[u][i]));
            const auto co = X.tower().coords(y);
            for (std::size_t j = 0; j < m; ++j) R(u, j) = co[j];
        }
        ++spec[unsigned(U.dim() - rank(X.base(), R))];
    });
    return spec;
}

bool max_scattered_hyperplane_criterion(const std::map<unsigned, std::uint64_t>& spectrum, const Ambient& X)
{
    const long mn = long(X.N()), m = long(X.m());
    if (mn % 2) return false;
    for (const auto& [d, c] : spectrum)
        if (long(d) != mn / 2 - m && long(d) != mn / 2 - m + 1) return false;
    return true;
}

bool h_scattered_hyperplane_criterion(const std::map<unsigned, std::uint64_t>& spectrum, const Ambient& X, unsigned h)
{
    const long mn = long(X.N()), m = long(X.m());
    if (mn % long(h + 1)) return false;
    for (const auto& [d, c] : spectrum)
        if (long(d) > mn / long(h + 1) - m + long(h)) return false;
    return true;
}

}  // namespace scatterlab
