#include "scatterlab/subspace.hpp"

#include <cmath>
#include <sstream>

#include "scatterlab/errors.hpp"

namespace scatterlab {

Subspace::Subspace(std::shared_ptr<const Field> field, std::size_t N)
    : field_(std::move(field)), N_(N), basis_(0, N)
{
    require(field_ != nullptr, "subspace needs a field");
}

Subspace Subspace::span(std::shared_ptr<const Field> field, std::size_t N, Matrix generators)
{
    Subspace S(std::move(field), N);
    if (generators.rows == 0) return S;
    require(generators.cols == N, "generator matrix has " + std::to_string(generators.cols) +
                                      " columns, ambient dimension is " + std::to_string(N));
    for (auto e : generators.a) require(e < S.field_->order(), "generator entry out of field range");
    S.pivots_ = rref_in_place(*S.field_, generators);
    generators.a.resize(S.pivots_.size() * N);
    generators.rows = S.pivots_.size();
    S.basis_ = std::move(generators);
    return S;
}

Subspace Subspace::span(std::shared_ptr<const Field> field, std::size_t N, const std::vector<Vec>& generators)
{
    return span(std::move(field), N, Matrix::from_rows(generators, N));
}

Subspace Subspace::full(std::shared_ptr<const Field> field, std::size_t N)
{
    return span(std::move(field), N, Matrix::identity(N));
}

bool Subspace::contains(std::span<const Elem> v) const
{
    require(v.size() == N_, "vector length does not match ambient dimension");
    Vec r(v.begin(), v.end());
    const Field& F = *field_;
    for (std::size_t i = 0; i < pivots_.size(); ++i) {
        const Elem c = r[pivots_[i]];
        if (c) axpy(F, F.neg(c), basis_.row(i), r);
    }
    return is_zero(r);
}

bool Subspace::contains(const Subspace& other) const
{
    require(other.N_ == N_, "ambient mismatch");
    if (other.dim() > dim()) return false;
    for (std::size_t i = 0; i < other.dim(); ++i)
        if (!contains(other.basis_.row(i))) return false;
    return true;
}

Subspace Subspace::annihilator() const
{
    Subspace S(field_, N_);
    S.basis_ = nullspace(*field_, basis_, N_);
    Matrix tmp = S.basis_;
    S.pivots_ = rref_in_place(*field_, tmp);
    return S;
}

Vec Subspace::combine(std::span<const Elem> coeffs) const
{
    require(coeffs.size() == dim(), "coefficient count does not match dimension");
    return row_times(*field_, coeffs, basis_);
}

Subspace Subspace::image(const Matrix& M) const
{
    require(M.rows == N_, "linear map has wrong number of rows");
    return span(field_, M.cols, mul(*field_, basis_, M));
}

std::string Subspace::key() const
{
    std::string k;
    k.reserve(8 + basis_.a.size() * 3);
    auto put = [&k](std::uint32_t x) {
        k.push_back(static_cast<char>(x & 0xff));
        k.push_back(static_cast<char>((x >> 8) & 0xff));
        k.push_back(static_cast<char>((x >> 16) & 0xff));
    };
    put(static_cast<std::uint32_t>(N_));
    put(static_cast<std::uint32_t>(basis_.rows));
    for (auto e : basis_.a) put(e);
    return k;
}

Subspace join(const Subspace& U, const Subspace& V)
{
    require(U.ambient_dim() == V.ambient_dim(), "join: ambient mismatch");
    return Subspace::span(U.field_ptr(), U.ambient_dim(), vstack(U.basis(), V.basis()));
}

Subspace meet(const Subspace& U, const Subspace& V)
{
    require(U.ambient_dim() == V.ambient_dim(), "meet: ambient mismatch");
    const Subspace a = U.annihilator();
    const Subspace b = V.annihilator();
    return join(a, b).annihilator();
}

std::size_t meet_dim(const Subspace& U, const Subspace& V)
{
    require(U.ambient_dim() == V.ambient_dim(), "meet: ambient mismatch");
    return U.dim() + V.dim() - join(U, V).dim();
}

// ---------------------------------------------------------------------------

GrassmannianCursor::GrassmannianCursor(std::shared_ptr<const Field> field, std::size_t N, std::size_t k)
    : field_(std::move(field)), N_(N), k_(k)
{
    require(k <= N, "subspace dimension exceeds ambient dimension");
    check_guard(gauss_binomial_approx(N, k, field_->order()), kGrassmannianGuard, "Grassmannian enumeration");
    pivots_.resize(k);
    for (std::size_t i = 0; i < k; ++i) pivots_[i] = i;
}

void GrassmannianCursor::setup_pattern()
{
    free_.clear();
    std::vector<bool> is_piv(N_, false);
    for (auto p : pivots_) is_piv[p] = true;
    for (std::size_t i = 0; i < k_; ++i)
        for (std::size_t c = pivots_[i] + 1; c < N_; ++c)
            if (!is_piv[c]) free_.emplace_back(i, c);
    digits_.assign(free_.size(), 0);
}

bool GrassmannianCursor::next_pivots()
{
    if (k_ == 0) return false;
    std::size_t i = k_;
    while (i-- > 0) {
        if (pivots_[i] < N_ - k_ + i) {
            ++pivots_[i];
            for (std::size_t j = i + 1; j < k_; ++j) pivots_[j] = pivots_[j - 1] + 1;
            return true;
        }
    }
    return false;
}

void GrassmannianCursor::build()
{
    Matrix M(k_, N_);
    for (std::size_t i = 0; i < k_; ++i) M(i, pivots_[i]) = 1;
    for (std::size_t f = 0; f < free_.size(); ++f) M(free_[f].first, free_[f].second) = digits_[f];
    // Already in RREF by construction.
    current_ = std::make_unique<Subspace>(Subspace::span(field_, N_, std::move(M)));
}

bool GrassmannianCursor::next()
{
    if (done_) return false;
    if (!started_) {
        started_ = true;
        setup_pattern();
        build();
        ++visited_;
        return true;
    }
    const Elem q = field_->order();
    std::size_t f = 0;
    while (f < digits_.size()) {
        if (++digits_[f] < q) break;
        digits_[f] = 0;
        ++f;
    }
    if (f == digits_.size()) {
        if (!next_pivots()) {
            done_ = true;
            return false;
        }
        setup_pattern();
    }
    build();
    ++visited_;
    return true;
}

double gauss_binomial_approx(std::size_t N, std::size_t k, double q)
{
    if (k > N) return 0;
    double r = 1;
    for (std::size_t i = 0; i < k; ++i) r *= (std::pow(q, double(N - i)) - 1) / (std::pow(q, double(i + 1)) - 1);
    return r;
}

void for_each_subspace(std::shared_ptr<const Field> field, std::size_t N, std::size_t k,
                       const std::function<void(const Subspace&)>& fn)
{
    GrassmannianCursor cur(std::move(field), N, k);
    while (cur.next()) fn(cur.current());
}

Subspace sample_subspace(std::shared_ptr<const Field> field, std::size_t N, std::size_t k, std::mt19937_64& rng)
{
    require(k <= N, "subspace dimension exceeds ambient dimension");
    const Elem q = field->order();
    std::uniform_int_distribution<Elem> dist(0, q - 1);
    for (;;) {
        Matrix M(k, N);
        for (auto& e : M.a) e = dist(rng);
        Subspace S = Subspace::span(field, N, std::move(M));
        if (S.dim() == k) return S;
    }
}

Subspace sample_subspace(std::shared_ptr<const Field> field, std::size_t N, std::size_t k, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    return sample_subspace(std::move(field), N, k, rng);
}

std::pair<std::uint32_t, unsigned> prime_power(std::uint64_t q)
{
    require(q >= 2, "field order must be at least 2");
    std::uint64_t p = 2;
    while (p * p <= q && q % p != 0) ++p;
    if (q % p != 0) p = q;
    unsigned e = 0;
    std::uint64_t r = q;
    while (r % p == 0) {
        r /= p;
        ++e;
    }
    require(r == 1, std::to_string(q) + " is not a prime power");
    require(q <= kMaxFieldOrder, "field order exceeds 2^20");
    return {static_cast<std::uint32_t>(p), e};
}

std::shared_ptr<const Field> field_of_order(std::uint32_t q)
{
    const auto [p, e] = prime_power(q);
    return FieldTower::make(p, e, 1).base_ptr();
}

}  // namespace scatterlab
