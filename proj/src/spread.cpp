#include "scatterlab/spread.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <unordered_set>

#include "scatterlab/errors.hpp"

namespace scatterlab {

std::string to_string(SpreadKind k)
{
    switch (k) {
    case SpreadKind::desarguesian: return "desarguesian";
    case SpreadKind::partial_desarguesian: return "partial-desarguesian";
    case SpreadKind::constructed: return "constructed";
    case SpreadKind::adhoc: return "adhoc";
    }
    return "adhoc";
}

SpreadKind parse_spread_kind(const std::string& s)
{
    if (s == "desarguesian") return SpreadKind::desarguesian;
    if (s == "partial-desarguesian") return SpreadKind::partial_desarguesian;
    if (s == "constructed") return SpreadKind::constructed;
    if (s == "adhoc") return SpreadKind::adhoc;
    throw ValidationError("unknown spread kind '" + s + "'");
}

std::string to_string(PointClassifier::Strategy s)
{
    switch (s) {
    case PointClassifier::Strategy::desarguesian_normalize: return "desarguesian-normalize";
    case PointClassifier::Strategy::point_table: return "point-table";
    case PointClassifier::Strategy::generic_meet: return "generic-meet";
    }
    return "generic-meet";
}

namespace {

bool keys_fit(std::uint64_t q, std::size_t N)
{
    long double s = 1;
    for (std::size_t i = 0; i < N; ++i) s *= q;
    return s < 9.2e18L;
}

}  // namespace

std::uint64_t fq_point_key(const Field& F, std::span<const Elem> v)
{
    std::size_t i = 0;
    while (i < v.size() && v[i] == 0) ++i;
    require(i < v.size(), "zero vector has no projective key");
    const Elem s = v[i] == 1 ? 1 : F.inv(v[i]);
    std::uint64_t k = 0;
    for (std::size_t j = v.size(); j-- > i;) k = k * F.order() + (s == 1 ? v[j] : F.mul(s, v[j]));
    for (std::size_t j = i; j-- > 0;) k *= F.order();
    return k;
}

bool pairwise_trivial(const std::vector<Subspace>& family)
{
    if (family.size() < 2) return true;
    const Field& F = family.front().field();
    const std::size_t N = family.front().ambient_dim();
    double pts = 0;
    for (const auto& S : family) pts += (std::pow(double(F.order()), double(S.dim())) - 1) / (F.order() - 1);
    if (keys_fit(F.order(), N) && pts <= 5e7) {
        std::unordered_set<std::uint64_t> seen;
        seen.reserve(static_cast<std::size_t>(pts));
        bool ok = true;
        for (const auto& S : family) {
            for_each_projective_vector(S, [&](const Vec& v) {
                if (!seen.insert(fq_point_key(F, v)).second) ok = false;
                return ok;
            });
            if (!ok) return false;
        }
        return true;
    }
    check_guard(double(family.size()) * double(family.size()) / 2, 1e8, "pairwise meet check");
    for (std::size_t i = 0; i < family.size(); ++i)
        for (std::size_t j = i + 1; j < family.size(); ++j)
            if (meet_dim(family[i], family[j]) != 0) return false;
    return true;
}

// ---------------------------------------------------------------------------

PartialSpread::PartialSpread(std::shared_ptr<const Field> field, std::size_t N, std::size_t m,
                             std::vector<Subspace> elements, SpreadKind kind)
    : field_(std::move(field)), N_(N), m_(m), elements_(std::move(elements)), kind_(kind)
{
    require(m >= 1 && m <= N, "spread element dimension must lie in [1, N]");
    for (const auto& S : elements_) {
        require(S.ambient_dim() == N, "spread element has wrong ambient dimension");
        require(S.dim() == m, "spread element has dimension " + std::to_string(S.dim()) + ", expected " +
                                  std::to_string(m));
    }
    std::sort(elements_.begin(), elements_.end());
    require(std::adjacent_find(elements_.begin(), elements_.end()) == elements_.end(),
            "spread contains a repeated element");
    require(pairwise_trivial(elements_), "spread elements do not intersect trivially");
}

PartialSpread PartialSpread::from_points(const Ambient& X, const std::vector<Vec>& points, SpreadKind kind)
{
    PartialSpread A;
    A.field_ = X.base_ptr();
    A.N_ = X.N();
    A.m_ = X.m();
    A.kind_ = kind;
    A.ambient_ = X;
    std::set<std::uint64_t> keys;
    for (const auto& p : points) {
        require(p.size() == X.n(), "point has wrong length");
        const Vec x = X.normalize(p);
        require(keys.insert(X.point_key(x)).second, "repeated point in partial Desarguesian spread");
        A.points_.push_back(x);
        A.elements_.push_back(X.fq_expansion(std::vector<Vec>{x}));
    }
    A.sort_elements();
    return A;
}

void PartialSpread::sort_elements()
{
    std::vector<std::size_t> idx(elements_.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return elements_[a] < elements_[b]; });
    std::vector<Subspace> e;
    std::vector<Vec> p;
    for (auto i : idx) {
        e.push_back(elements_[i]);
        if (!points_.empty()) p.push_back(points_[i]);
    }
    elements_ = std::move(e);
    points_ = std::move(p);
}

std::uint64_t PartialSpread::full_size() const
{
    if (N_ % m_ != 0) return 0;
    const double total = (std::pow(double(field_->order()), double(N_)) - 1) /
                         (std::pow(double(field_->order()), double(m_)) - 1);
    return static_cast<std::uint64_t>(std::llround(total));
}

std::optional<std::size_t> PartialSpread::find(const Subspace& S) const
{
    auto it = std::lower_bound(elements_.begin(), elements_.end(), S);
    if (it == elements_.end() || !(*it == S)) return std::nullopt;
    return static_cast<std::size_t>(it - elements_.begin());
}

// ---------------------------------------------------------------------------

PointClassifier::PointClassifier(const PartialSpread& A)
    : PointClassifier(A, A.ambient() && !A.points().empty()
                             ? Strategy::desarguesian_normalize
                             : (keys_fit(A.field().order(), A.N()) ? Strategy::point_table : Strategy::generic_meet))
{
}

PointClassifier::PointClassifier(const PartialSpread& A, Strategy s) : A_(&A), strategy_(s)
{
    switch (s) {
    case Strategy::desarguesian_normalize: {
        require(A.ambient().has_value() && A.points().size() == A.size(),
                "desarguesian classification needs F_{q^m}-point metadata");
        const Ambient& X = *A.ambient();
        for (std::size_t i = 0; i < A.size(); ++i) index_.emplace(X.point_key(A.points()[i]), i);
        break;
    }
    case Strategy::point_table: {
        require(keys_fit(A.field().order(), A.N()), "point table needs q^N < 2^63");
        check_guard(double(A.size()) * std::pow(double(A.field().order()), double(A.m())), 5e7,
                    "point table construction");
        for (std::size_t i = 0; i < A.size(); ++i)
            for_each_projective_vector(A[i], [&](const Vec& v) {
                index_.emplace(fq_point_key(A.field(), v), i);
                return true;
            });
        break;
    }
    case Strategy::generic_meet:
        for (const auto& S : A.elements()) annihilators_.push_back(S.annihilator().basis());
        break;
    }
}

std::optional<std::size_t> PointClassifier::classify(std::span<const Elem> v) const
{
    if (is_zero(v)) return std::nullopt;
    switch (strategy_) {
    case Strategy::desarguesian_normalize: {
        const Ambient& X = *A_->ambient();
        const Vec x = X.normalize(X.contract(v));
        auto it = index_.find(X.point_key(x));
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }
    case Strategy::point_table: {
        auto it = index_.find(fq_point_key(A_->field(), v));
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }
    case Strategy::generic_meet: {
        const Field& F = A_->field();
        for (std::size_t i = 0; i < annihilators_.size(); ++i) {
            const Matrix& H = annihilators_[i];
            bool inside = true;
            for (std::size_t r = 0; r < H.rows && inside; ++r) {
                Elem s = 0;
                for (std::size_t c = 0; c < H.cols; ++c)
                    if (H(r, c) && v[c]) s = F.add(s, F.mul(H(r, c), v[c]));
                inside = s == 0;
            }
            if (inside) return i;
        }
        return std::nullopt;
    }
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------

SpreadReport validate(const PartialSpread& A)
{
    SpreadReport r;
    r.is_partial = pairwise_trivial(A.elements());
    for (const auto& S : A.elements())
        if (S.dim() != A.m()) r.is_partial = false;
    r.is_full = r.is_partial && A.full_size() != 0 && A.size() == A.full_size();
    r.normality_vacuous = A.N() == 2 * A.m();
    if (!r.is_partial) {
        r.detail = "elements intersect nontrivially";
        return r;
    }
    if (A.size() < 2 || r.normality_vacuous) {
        r.is_normal = true;
        r.detail = A.size() < 2 ? "fewer than two elements" : "N = 2m: normality is vacuous";
        return r;
    }
    const double s = double(A.size());
    check_guard(s * s * s / 2, 2e8, "normality check");
    const Field& F = A.field();
    const std::uint64_t tiles = [&] {
        std::uint64_t qm = 1;
        for (std::size_t i = 0; i < A.m(); ++i) qm *= F.order();
        return qm + 1;
    }();
    r.is_normal = true;
    for (std::size_t i = 0; i < A.size() && r.is_normal; ++i) {
        for (std::size_t j = i + 1; j < A.size() && r.is_normal; ++j) {
            const Subspace W = join(A[i], A[j]);
            const Matrix H = transpose(W.annihilator().basis());
            std::uint64_t inside = 0;
            for (const auto& T : A.elements()) {
                const std::size_t d = T.dim() - rank(F, mul(F, T.basis(), H));
                if (d == T.dim()) {
                    ++inside;
                } else if (d != 0) {
                    r.is_normal = false;
                    r.detail = "an element meets the span of two others partially";
                    break;
                }
            }
            if (r.is_normal && inside != tiles) {
                r.is_normal = false;
                r.detail = "elements inside the span of two elements do not tile it";
            }
        }
    }
    if (r.is_normal) r.detail = "normal";
    return r;
}

PartialSpread desarguesian_spread(const FieldTower& tower, std::size_t n)
{
    Ambient X(tower, n);
    check_guard(double(X.point_count()), 2e6, "Desarguesian spread materialization");
    std::vector<Vec> pts;
    X.for_each_point([&](const Vec& x) { pts.push_back(x); });
    return PartialSpread::from_points(X, pts, SpreadKind::desarguesian);
}

PartialSpread second_order_closure(const PartialSpread& A)
{
    require(A.ambient().has_value() && A.points().size() == A.size(),
            "second-order closure needs a partial Desarguesian spread with point metadata");
    const Ambient& X = *A.ambient();
    const Field& T = X.top();
    std::set<std::uint64_t> keys;
    std::vector<Vec> pts;
    auto add = [&](const Vec& x) {
        const Vec y = X.normalize(x);
        if (keys.insert(X.point_key(y)).second) pts.push_back(y);
    };
    for (const auto& v : A.points()) add(v);
    const double s = double(A.size());
    check_guard(s * s / 2 * X.qm(), 5e7, "second-order closure");
    for (std::size_t i = 0; i < A.size(); ++i)
        for (std::size_t j = i + 1; j < A.size(); ++j)
            for (Elem a = 1; a < X.qm(); ++a) {
                Vec x(X.n());
                for (std::size_t c = 0; c < X.n(); ++c)
                    x[c] = T.add(T.mul(a, A.points()[i][c]), A.points()[j][c]);
                add(x);
            }
    const SpreadKind kind = pts.size() == X.point_count() ? SpreadKind::desarguesian : SpreadKind::partial_desarguesian;
    return PartialSpread::from_points(X, pts, kind);
}

PartialSpread restrict_spread(const PartialSpread& A, const Subspace& avoid)
{
    require(avoid.ambient_dim() == A.N(), "restrict_spread: ambient mismatch");
    if (A.ambient() && A.points().size() == A.size()) {
        std::vector<Vec> pts;
        for (std::size_t i = 0; i < A.size(); ++i)
            if (!avoid.contains(A[i])) pts.push_back(A.points()[i]);
        const SpreadKind kind = (A.kind() == SpreadKind::desarguesian && pts.size() == A.size())
                                    ? SpreadKind::desarguesian
                                    : SpreadKind::partial_desarguesian;
        return PartialSpread::from_points(*A.ambient(), pts, kind);
    }
    std::vector<Subspace> keep;
    for (const auto& S : A.elements())
        if (!avoid.contains(S)) keep.push_back(S);
    return PartialSpread(A.field_ptr(), A.N(), A.m(), std::move(keep), A.kind());
}

}  // namespace scatterlab
