#include "scatterlab/field.hpp"

#include <algorithm>
#include <sstream>

#include "scatterlab/errors.hpp"

namespace scatterlab {

bool is_prime(std::uint64_t n)
{
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

namespace {

std::vector<std::uint64_t> prime_factors(std::uint64_t n)
{
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

std::uint64_t ipow(std::uint64_t b, unsigned e)
{
    std::uint64_t r = 1;
    while (e--) r *= b;
    return r;
}

// Field ops on raw polynomials, used only while building tables.
struct SlowField {
    const Field& base;
    const Poly& modulus;
    unsigned degree;

    Poly to_poly(Elem a) const
    {
        Poly c(degree, 0);
        for (unsigned j = 0; j < degree; ++j) {
            c[j] = a % base.order();
            a /= base.order();
        }
        return c;
    }
    Elem to_code(const Poly& c) const
    {
        Elem code = 0;
        for (unsigned j = degree; j-- > 0;) code = code * base.order() + (j < c.size() ? c[j] : 0);
        return code;
    }
    Elem mul(Elem a, Elem b) const
    {
        return to_code(poly::mod(base, poly::mul(base, to_poly(a), to_poly(b)), modulus));
    }
    Elem pow(Elem a, std::uint64_t e) const
    {
        Elem r = 1;
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }
};

}  // namespace

// ---------------------------------------------------------------------------
// Polynomials

namespace poly {

Poly trim(Poly a)
{
    while (!a.empty() && a.back() == 0) a.pop_back();
    return a;
}

Poly mul(const Field& f, const Poly& a, const Poly& b)
{
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = f.add(r[i + j], f.mul(a[i], b[j]));
    }
    return trim(std::move(r));
}

Poly mod(const Field& f, Poly a, const Poly& m)
{
    a = trim(std::move(a));
    const Poly mm = trim(m);
    if (mm.empty()) throw ValidationError("polynomial modulus is zero");
    const std::size_t dm = mm.size() - 1;
    const Elem lead_inv = f.inv(mm.back());
    while (a.size() > dm) {
        const Elem c = f.mul(a.back(), lead_inv);
        const std::size_t shift = a.size() - 1 - dm;
        for (std::size_t j = 0; j <= dm; ++j) a[shift + j] = f.sub(a[shift + j], f.mul(c, mm[j]));
        a = trim(std::move(a));
    }
    return a;
}

Poly gcd(const Field& f, Poly a, Poly b)
{
    a = trim(std::move(a));
    b = trim(std::move(b));
    while (!b.empty()) {
        Poly r = mod(f, a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        const Elem li = f.inv(a.back());
        for (auto& c : a) c = f.mul(c, li);
    }
    return a;
}

Poly powmod(const Field& f, Poly a, std::uint64_t e, const Poly& m)
{
    Poly r{1};
    a = mod(f, std::move(a), m);
    while (e) {
        if (e & 1) r = mod(f, mul(f, r, a), m);
        a = mod(f, mul(f, a, a), m);
        e >>= 1;
    }
    return r;
}

}  // namespace poly

// ---------------------------------------------------------------------------
// Field

bool Field::is_irreducible(const Field& base, const Poly& f_in)
{
    const Poly f = poly::trim(f_in);
    if (f.size() < 2) return false;
    const unsigned d = static_cast<unsigned>(f.size() - 1);
    if (d == 1) return true;
    // Ben-Or: f has no factor of degree i iff gcd(x^{r^i} - x, f) = 1.
    const Poly x{0, 1};
    Poly h = x;
    for (unsigned i = 1; i <= d / 2; ++i) {
        h = poly::powmod(base, h, base.order(), f);
        Poly diff = h;
        if (diff.size() < 2) diff.resize(2, 0);
        diff[1] = base.sub(diff[1], 1);
        diff = poly::trim(diff);
        if (diff.empty()) return false;
        const Poly g = poly::gcd(base, diff, f);
        if (g.size() > 1) return false;
    }
    return true;
}

Poly Field::least_irreducible(const Field& base, unsigned degree)
{
    require(degree >= 1, "polynomial degree must be >= 1");
    const std::uint64_t r = base.order();
    const std::uint64_t total = ipow(r, degree);
    for (std::uint64_t code = 0; code < total; ++code) {
        Poly f(degree + 1, 0);
        std::uint64_t c = code;
        for (unsigned j = 0; j < degree; ++j) {
            f[j] = static_cast<Elem>(c % r);
            c /= r;
        }
        f[degree] = 1;
        if (is_irreducible(base, f)) return f;
    }
    throw VerificationFailure("no irreducible polynomial found");
}

std::shared_ptr<const Field> Field::prime(std::uint32_t p)
{
    require(is_prime(p), "characteristic " + std::to_string(p) + " is not prime");
    require(p <= kMaxFieldOrder, "field order exceeds 2^20");
    auto f = std::shared_ptr<Field>(new Field());
    f->p_ = p;
    f->order_ = p;
    f->degree_ = 1;
    f->abs_degree_ = 1;
    f->modulus_ = {0, 1};
    if (p == 2) {
        f->build_tables({1});
        return f;
    }
    const auto factors = prime_factors(p - 1);
    auto powmod_u = [p](std::uint64_t b, std::uint64_t e) {
        std::uint64_t r = 1;
        b %= p;
        while (e) {
            if (e & 1) r = r * b % p;
            b = b * b % p;
            e >>= 1;
        }
        return r;
    };
    std::uint64_t g = 2;
    for (;; ++g) {
        bool ok = true;
        for (auto fac : factors)
            if (powmod_u(g, (p - 1) / fac) == 1) ok = false;
        if (ok) break;
    }
    std::vector<Elem> cycle(p - 1);
    std::uint64_t cur = 1;
    for (std::uint32_t i = 0; i + 1 < p; ++i) {
        cycle[i] = static_cast<Elem>(cur);
        cur = cur * g % p;
    }
    f->build_tables(cycle);
    return f;
}

std::shared_ptr<const Field> Field::extension(std::shared_ptr<const Field> base, Poly modulus)
{
    require(base != nullptr, "extension needs a base field");
    modulus = poly::trim(std::move(modulus));
    require(modulus.size() >= 2, "modulus must have degree >= 1");
    for (auto c : modulus) require(c < base->order(), "modulus coefficient out of range");
    require(modulus.back() == 1, "modulus must be monic");
    const unsigned d = static_cast<unsigned>(modulus.size() - 1);
    const std::uint64_t order = ipow(base->order(), d);
    require(order <= kMaxFieldOrder, "field order exceeds 2^20");
    if (!is_irreducible(*base, modulus)) {
        std::ostringstream os;
        os << "modulus of degree " << d << " is reducible over F_" << base->order();
        throw ValidationError(os.str());
    }

    auto f = std::shared_ptr<Field>(new Field());
    f->p_ = base->characteristic();
    f->order_ = static_cast<std::uint32_t>(order);
    f->degree_ = d;
    f->abs_degree_ = d * base->absolute_degree();
    f->base_ = base;
    f->modulus_ = modulus;

    if (d == 1) {
        // Degree-1 extension is the base itself re-encoded identically.
        std::vector<Elem> cycle(base->order() - 1);
        for (std::uint32_t i = 0; i + 1 < base->order(); ++i) cycle[i] = base->pow(base->primitive(), i);
        f->build_tables(cycle);
        return f;
    }

    SlowField slow{*base, f->modulus_, d};
    const std::uint64_t n = order - 1;
    const auto factors = prime_factors(n);
    Elem g = 0;
    // Prefer y itself (code r), which is primitive for primitive moduli.
    std::vector<Elem> candidates;
    candidates.push_back(base->order());
    for (Elem c = 2; c < order; ++c)
        if (c != base->order()) candidates.push_back(c);
    for (Elem c : candidates) {
        bool ok = true;
        for (auto fac : factors)
            if (slow.pow(c, n / fac) == 1) {
                ok = false;
                break;
            }
        if (ok) {
            g = c;
            break;
        }
    }
    verify(g != 0, "no primitive element found");
    std::vector<Elem> cycle(n);
    Elem cur = 1;
    for (std::uint64_t i = 0; i < n; ++i) {
        cycle[i] = cur;
        cur = slow.mul(cur, g);
    }
    f->build_tables(cycle);
    return f;
}

void Field::build_tables(const std::vector<Elem>& cycle)
{
    const std::uint32_t n = order_ - 1;
    exp_.assign(2 * static_cast<std::size_t>(n) + 1, 0);
    log_.assign(order_, 0);
    for (std::uint32_t i = 0; i < n; ++i) {
        exp_[i] = cycle[i];
        exp_[i + n] = cycle[i];
        log_[cycle[i]] = i;
    }
    exp_[2 * static_cast<std::size_t>(n)] = cycle[0];

    neg_.assign(order_, 0);
    for (Elem a = 0; a < order_; ++a) {
        Elem r = 0, pw = 1, x = a;
        while (x) {
            const Elem dgt = x % p_;
            r += ((p_ - dgt) % p_) * pw;
            pw *= p_;
            x /= p_;
        }
        neg_[a] = r;
    }
    if (p_ != 2 && order_ <= 1024) {
        add_table_.assign(static_cast<std::size_t>(order_) * order_, 0);
        for (Elem a = 0; a < order_; ++a)
            for (Elem b = 0; b < order_; ++b) add_table_[a * order_ + b] = add_digits(a, b);
    }
}

Elem Field::add_digits(Elem a, Elem b) const
{
    Elem r = 0, pw = 1;
    while (a || b) {
        r += ((a % p_ + b % p_) % p_) * pw;
        pw *= p_;
        a /= p_;
        b /= p_;
    }
    return r;
}

Elem Field::neg(Elem a) const { return neg_[a]; }

Elem Field::inv(Elem a) const
{
    if (a == 0) throw ValidationError("inverse of zero");
    const std::uint32_t n = order_ - 1;
    return exp_[(n - log_[a]) % n];
}

Elem Field::pow(Elem a, std::uint64_t e) const
{
    if (e == 0) return 1;
    if (a == 0) return 0;
    const std::uint64_t n = order_ - 1;
    return exp_[static_cast<std::size_t>((static_cast<std::uint64_t>(log_[a]) * (e % n)) % n)];
}

Elem Field::digit(Elem a, unsigned j) const
{
    const Elem r = base_order();
    for (unsigned i = 0; i < j; ++i) a /= r;
    return degree_ == 1 && !base_ ? (j == 0 ? a : 0) : a % r;
}

Elem Field::from_digits(std::span<const Elem> digits) const
{
    const Elem r = base_order();
    Elem code = 0;
    for (std::size_t j = digits.size(); j-- > 0;) code = code * r + digits[j];
    return code;
}

// ---------------------------------------------------------------------------
// FieldTower

FieldTower FieldTower::make(std::uint32_t p, unsigned e, unsigned m,
                            std::optional<std::pair<Poly, Poly>> moduli)
{
    require(is_prime(p), "p = " + std::to_string(p) + " is not prime");
    require(e >= 1, "extension degree e must be >= 1");
    require(m >= 1, "tower degree m must be >= 1");
    {
        long double size = 1;
        for (unsigned i = 0; i < e * m; ++i) size *= p;
        require(size <= static_cast<long double>(kMaxFieldOrder), "q^m exceeds 2^20");
    }
    auto fp = Field::prime(p);
    std::shared_ptr<const Field> base = fp;
    if (moduli) require(moduli->first.size() == e + 1, "base modulus must have degree e");
    if (e > 1) base = Field::extension(fp, moduli ? moduli->first : Field::least_irreducible(*fp, e));
    FieldTower t;
    t.base_ = base;
    t.m_ = m;
    if (m == 1) {
        t.top_ = base;
    } else {
        Poly tm = moduli ? moduli->second : Field::least_irreducible(*base, m);
        require(tm.size() == m + 1, "top modulus must have degree m");
        t.top_ = Field::extension(base, tm);
    }
    t.basis_.resize(m);
    Elem pw = 1;
    for (unsigned j = 0; j < m; ++j) {
        t.basis_[j] = pw;
        pw *= base->order();
    }
    t.poly_basis_ = true;
    return t;
}

Elem FieldTower::frobenius(Elem x, unsigned i) const
{
    if (x == 0 || m_ == 1) return x;
    std::uint64_t e = 1;
    for (unsigned k = 0; k < i % m_; ++k) e *= q();
    return top_->pow(x, e);
}

Elem FieldTower::trace(Elem x) const
{
    Elem s = 0;
    Elem cur = x;
    for (unsigned i = 0; i < m_; ++i) {
        s = top_->add(s, cur);
        cur = top_->pow(cur, q());
    }
    verify(s < q(), "trace left the base field");
    return s;
}

std::vector<Elem> FieldTower::coords(Elem x) const
{
    std::vector<Elem> d(m_);
    for (unsigned j = 0; j < m_; ++j) d[j] = m_ == 1 ? x : top_->digit(x, j);
    if (poly_basis_) return d;
    std::vector<Elem> c(m_, 0);
    for (unsigned i = 0; i < m_; ++i) {
        if (d[i] == 0) continue;
        for (unsigned j = 0; j < m_; ++j)
            c[j] = base_->add(c[j], base_->mul(d[i], to_basis_[i * m_ + j]));
    }
    return c;
}

Elem FieldTower::uncoords(std::span<const Elem> c) const
{
    require(c.size() == m_, "coordinate vector has wrong length");
    if (poly_basis_) return m_ == 1 ? c[0] : top_->from_digits(c);
    Elem x = 0;
    for (unsigned j = 0; j < m_; ++j) x = top_->add(x, top_->mul(c[j], basis_[j]));
    return x;
}

FieldTower FieldTower::with_basis(std::vector<Elem> basis) const
{
    require(basis.size() == m_, "basis must have m elements");
    const Field& F = *base_;
    // Row i of D holds the digits of basis[i]; invert D over F_q.
    std::vector<Elem> D(m_ * m_), Inv(m_ * m_, 0);
    for (unsigned i = 0; i < m_; ++i) {
        require(basis[i] < qm(), "basis element out of range");
        for (unsigned j = 0; j < m_; ++j) D[i * m_ + j] = m_ == 1 ? basis[i] : top_->digit(basis[i], j);
        Inv[i * m_ + i] = 1;
    }
    for (unsigned c = 0; c < m_; ++c) {
        unsigned piv = c;
        while (piv < m_ && D[piv * m_ + c] == 0) ++piv;
        require(piv < m_, "basis elements are linearly dependent over F_q");
        if (piv != c)
            for (unsigned j = 0; j < m_; ++j) {
                std::swap(D[piv * m_ + j], D[c * m_ + j]);
                std::swap(Inv[piv * m_ + j], Inv[c * m_ + j]);
            }
        const Elem s = F.inv(D[c * m_ + c]);
        for (unsigned j = 0; j < m_; ++j) {
            D[c * m_ + j] = F.mul(D[c * m_ + j], s);
            Inv[c * m_ + j] = F.mul(Inv[c * m_ + j], s);
        }
        for (unsigned r = 0; r < m_; ++r) {
            if (r == c || D[r * m_ + c] == 0) continue;
            const Elem f = D[r * m_ + c];
            for (unsigned j = 0; j < m_; ++j) {
                D[r * m_ + j] = F.sub(D[r * m_ + j], F.mul(f, D[c * m_ + j]));
                Inv[r * m_ + j] = F.sub(Inv[r * m_ + j], F.mul(f, Inv[c * m_ + j]));
            }
        }
    }
    FieldTower t = *this;
    t.basis_ = std::move(basis);
    t.poly_basis_ = false;
    t.to_basis_ = std::move(Inv);
    return t;
}

bool FieldTower::same_fields(const FieldTower& other) const
{
    return p() == other.p() && e() == other.e() && m_ == other.m_ &&
           base_->modulus() == other.base_->modulus() && top_->modulus() == other.top_->modulus();
}

}  // namespace scatterlab
