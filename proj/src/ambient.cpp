#include "scatterlab/ambient.hpp"

#include "scatterlab/errors.hpp"

namespace scatterlab {

Ambient::Ambient(FieldTower tower, std::size_t n) : tower_(std::move(tower)), n_(n)
{
    require(n >= 1, "n must be >= 1");
    const std::uint32_t p = tower_.p();
    const unsigned e = tower_.e();
    if (p == 2 && N() * e <= 64 && tower_.has_polynomial_basis()) {
        packable_ = true;
        bits_ = e;
    }
}

Vec Ambient::expand(std::span<const Elem> x) const
{
    require(x.size() == n_, "F_{q^m}-vector has wrong length");
    Vec v(N());
    const std::size_t mm = m();
    for (std::size_t i = 0; i < n_; ++i) {
        const auto c = tower_.coords(x[i]);
        for (std::size_t j = 0; j < mm; ++j) v[i * mm + j] = c[j];
    }
    return v;
}

Vec Ambient::contract(std::span<const Elem> v) const
{
    require(v.size() == N(), "F_q-vector has wrong length");
    Vec x(n_);
    const std::size_t mm = m();
    for (std::size_t i = 0; i < n_; ++i) x[i] = tower_.uncoords(v.subspan(i * mm, mm));
    return x;
}

Subspace Ambient::fq_expansion(const std::vector<Vec>& gens) const
{
    Matrix M(0, N());
    const Field& T = top();
    for (const auto& g : gens) {
        for (Elem b : tower_.basis()) {
            Vec y(n_);
            for (std::size_t i = 0; i < n_; ++i) y[i] = T.mul(b, g[i]);
            M.append_row(expand(y));
        }
    }
    return Subspace::span(base_ptr(), N(), std::move(M));
}

Subspace Ambient::fq_expansion(const Subspace& W) const
{
    require(W.ambient_dim() == n_, "F_{q^m}-subspace has wrong ambient dimension");
    std::vector<Vec> gens;
    for (std::size_t i = 0; i < W.dim(); ++i) gens.push_back(W.basis().row_vec(i));
    return fq_expansion(gens);
}

Subspace Ambient::fqm_span(const Subspace& U) const
{
    require(U.ambient_dim() == N(), "F_q-subspace has wrong ambient dimension");
    Matrix M(0, n_);
    for (std::size_t i = 0; i < U.dim(); ++i) M.append_row(contract(U.basis().row(i)));
    return Subspace::span(top_ptr(), n_, std::move(M));
}

Vec Ambient::normalize(Vec x) const
{
    const Field& T = top();
    std::size_t i = 0;
    while (i < x.size() && x[i] == 0) ++i;
    require(i < x.size(), "cannot normalize the zero vector");
    if (x[i] != 1) {
        const Elem s = T.inv(x[i]);
        for (std::size_t j = i; j < x.size(); ++j) x[j] = T.mul(x[j], s);
    }
    return x;
}

std::uint64_t Ambient::point_key(std::span<const Elem> x) const
{
    long double size = 1;
    for (std::size_t i = 0; i < n_; ++i) size *= qm();
    require(size < 9.2e18L, "point keys need q^{mn} < 2^63");
    std::uint64_t k = 0;
    for (std::size_t i = n_; i-- > 0;) k = k * qm() + x[i];
    return k;
}

Vec Ambient::point_from_key(std::uint64_t key) const
{
    Vec x(n_);
    for (std::size_t i = 0; i < n_; ++i) {
        x[i] = static_cast<Elem>(key % qm());
        key /= qm();
    }
    return x;
}

std::uint64_t Ambient::point_count() const
{
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < n_; ++i) total *= qm();
    return (total - 1) / (qm() - 1);
}

void Ambient::for_each_point(const std::function<void(const Vec&)>& fn) const
{
    const Elem Q = qm();
    for (std::size_t lead = 0; lead < n_; ++lead) {
        Vec x(n_, 0);
        x[lead] = 1;
        const std::size_t tail = n_ - lead - 1;
        for (;;) {
            fn(x);
            std::size_t j = 0;
            while (j < tail) {
                Elem& d = x[lead + 1 + j];
                if (++d < Q) break;
                d = 0;
                ++j;
            }
            if (j == tail) break;
        }
    }
}

void for_each_projective_vector(const Subspace& U, const std::function<bool(const Vec&)>& fn)
{
    const Field& F = U.field();
    const std::size_t k = U.dim();
    const std::size_t N = U.ambient_dim();
    const Elem q = F.order();
    // mult[i][c] = c * row_i
    std::vector<std::vector<Vec>> mult(k, std::vector<Vec>(q, Vec(N, 0)));
    for (std::size_t i = 0; i < k; ++i)
        for (Elem c = 1; c < q; ++c)
            for (std::size_t j = 0; j < N; ++j) mult[i][c][j] = F.mul(c, U.basis()(i, j));
    for (std::size_t lead = 0; lead < k; ++lead) {
        Vec v = mult[lead][1];
        std::vector<Elem> coef(k - lead - 1, 0);
        for (;;) {
            if (!fn(v)) return;
            std::size_t j = 0;
            while (j < coef.size()) {
                const std::size_t row = lead + 1 + j;
                const Elem old = coef[j];
                const Elem nw = old + 1 < q ? old + 1 : 0;
                coef[j] = nw;
                for (std::size_t t = 0; t < N; ++t)
                    v[t] = F.add(F.sub(v[t], mult[row][old][t]), mult[row][nw][t]);
                if (nw != 0) break;
                ++j;
            }
            if (j == coef.size()) break;
        }
    }
}

std::uint64_t point_count_of_dim(unsigned d, std::uint64_t q)
{
    std::uint64_t r = 0, pw = 1;
    for (unsigned i = 0; i < d; ++i) {
        r += pw;
        pw *= q;
    }
    return r;
}

unsigned dim_from_point_count(std::uint64_t count, std::uint64_t q)
{
    std::uint64_t total = count * (q - 1) + 1;
    unsigned d = 0;
    while (total > 1) {
        verify(total % q == 0, "point count is not of the form (q^d-1)/(q-1)");
        total /= q;
        ++d;
    }
    return d;
}

}  // namespace scatterlab
