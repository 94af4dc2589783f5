#include "scatterlab/counting.hpp"

#include <cstdio>
#include <random>
#include <sstream>

#include "scatterlab/errors.hpp"
#include "scatterlab/scattered.hpp"

namespace scatterlab {

BigInt big_pow(std::uint64_t q, long e)
{
    require(e >= 0, "negative exponent");
    return boost::multiprecision::pow(BigInt(q), unsigned(e));
}

BigInt gauss_binomial(long a, long b, std::uint64_t q)
{
    if (a < 0 || b < 0 || b > a) return 0;
    BigInt num = 1, den = 1;
    for (long i = 0; i < b; ++i) {
        num *= big_pow(q, a - i) - 1;
        den *= big_pow(q, i + 1) - 1;
    }
    return num / den;
}

namespace {

BigInt floor_of(const BigRat& r)
{
    const BigInt n = boost::multiprecision::numerator(r), d = boost::multiprecision::denominator(r);
    if (n >= 0) return BigInt(n / d);
    return BigInt(-((-n + d - 1) / d));
}

long choose2(long x) { return x * (x - 1) / 2; }

void check_params(unsigned N, unsigned k, unsigned m, std::uint64_t q)
{
    require(q >= 2, "q must be a prime power >= 2");
    require(k >= 1 && k <= N, "need 1 <= k <= N");
    require(m >= 1 && m <= N, "need 1 <= m <= N");
}

// Number of k-spaces meeting a fixed m-space in dimension exactly l.
BigInt exact_meet(long N, long k, long m, long l, std::uint64_t q)
{
    BigInt s = 0;
    for (long b = l; b <= m; ++b) {
        BigInt t = gauss_binomial(m - l, b - l, q) * gauss_binomial(N - b, k - b, q) * big_pow(q, choose2(b - l));
        if ((b - l) % 2) s -= t;
        else s += t;
    }
    return gauss_binomial(m, l, q) * s;
}

}  // namespace

CountReport delta_count(unsigned N, unsigned k, unsigned m, unsigned h, std::uint64_t q)
{
    check_params(N, k, m, q);
    CountReport r;
    r.N = N;
    r.k = k;
    r.m = m;
    r.h = h;
    r.q = q;
    r.in_lemma_range = m + k <= N;
    r.formula = "sum_{l=h+1}^{m} sum_{b=l}^{m} [m,l][m-l,b-l][N-b,k-b](-1)^{b-l} q^{C(b-l,2)}";
    for (long l = long(h) + 1; l <= long(m); ++l) r.value += exact_meet(N, k, m, l, q);
    return r;
}

CountReport omega_count(unsigned N, unsigned k, unsigned m, unsigned h, std::uint64_t q)
{
    check_params(N, k, m, q);
    require(2 * m <= N, "omega_count needs two disjoint m-spaces (2m <= N)");
    CountReport r;
    r.N = N;
    r.k = k;
    r.m = m;
    r.h = h;
    r.q = q;
    r.in_lemma_range = m + k <= N;
    r.formula = "sum_{l,l'>=h+1} [m,l][m,l'] sum_{r,s} [m-l,r-l][m-l',s-l'][N-r-s,k-r-s](-1)^{r+s-l-l'} q^{C(r-l,2)+C(s-l',2)}";
    const long M = m;
    for (long l = long(h) + 1; l <= M; ++l)
        for (long lp = long(h) + 1; lp <= M; ++lp) {
            BigInt inner = 0;
            for (long a = l; a <= M; ++a)
                for (long b = lp; b <= M; ++b) {
                    BigInt t = gauss_binomial(M - l, a - l, q) * gauss_binomial(M - lp, b - lp, q) *
                               gauss_binomial(long(N) - a - b, long(k) - a - b, q) *
                               big_pow(q, choose2(a - l) + choose2(b - lp));
                    if ((a + b - l - lp) % 2) inner -= t;
                    else inner += t;
                }
            r.value += gauss_binomial(M, l, q) * gauss_binomial(M, lp, q) * inner;
        }
    return r;
}

BigInt disjoint_count(unsigned N, unsigned k, unsigned l, std::uint64_t q)
{
    if (k + l > N) return 0;
    return big_pow(q, long(l) * long(k)) * gauss_binomial(long(N) - long(l), k, q);
}

CountBounds scattered_count_bounds(const BigInt& s, unsigned N, unsigned k, unsigned m, unsigned h, std::uint64_t q)
{
    require(s >= 1, "scattered_count_bounds needs |A| >= 1");
    const BigInt d = delta_count(N, k, m, h, q).value;
    CountBounds b;
    b.total = gauss_binomial(N, k, q);
    b.lower = b.total - s * d;
    if (b.lower < 0) b.lower = 0;
    BigInt w = 0;
    if (2 * m <= N) w = omega_count(N, k, m, h, q).value;
    else require(s == 1, "two disjoint m-spaces need 2m <= N");
    const BigInt den = d + (s - 1) * w;
    if (den == 0) {
        b.upper = BigRat(b.total);
    } else {
        b.upper = BigRat(b.total) - BigRat(s * d * d, den);
    }
    b.upper_floor = floor_of(b.upper);
    return b;
}

long density_exponent(unsigned N, unsigned k, unsigned m, unsigned h)
{
    return long(h + 1) * (long(N) + long(h) + 1 - long(k) - long(m));
}

std::optional<BigRat> spread_size_threshold(unsigned m, unsigned mp, unsigned k, unsigned h, std::uint64_t q)
{
    const BigInt den = gauss_binomial(m, h + 1, q) * gauss_binomial(long(m) - long(h) - 1, long(k) - long(h) - 1, q);
    if (den == 0) return std::nullopt;
    return BigRat(big_pow(q, long(mp) * (h + 1)) * gauss_binomial(m, k, q), den);
}

BigRat quarter_threshold(unsigned m, unsigned mp, unsigned h, std::uint64_t q)
{
    require(mp + h + 1 >= m, "quarter_threshold: negative exponent");
    return BigRat(big_pow(q, long(h + 1) * (long(mp) - long(m) + long(h) + 1)), 4);
}

namespace {

long floor_rat(const BigRat& r)
{
    return floor_of(r).convert_to<long>();
}

}  // namespace

Thresholds thresholds(unsigned N, unsigned m, unsigned h, std::uint64_t q, std::optional<unsigned> k,
                      std::optional<unsigned> m_prime)
{
    require(h >= 1 && m >= 1 && h <= m, "thresholds need 1 <= h <= m");
    Thresholds t;
    const BigRat H(h), N1(N), M(m), h1(h + 1);
    t.existence_bound = H * N1 / h1 + M / h1 - M + H;
    t.existence_k_max = floor_rat(t.existence_bound);
    t.field_condition = big_pow(q, h + 1) >= 64;
    t.tipping_dimension = H * N1 / h1 - M * H / h1 + H;
    t.tipping_k = floor_rat(t.tipping_dimension);
    if (m_prime) {
        t.m_prime = m_prime;
        t.quarter_threshold = quarter_threshold(m, *m_prime, h, q);
        if (k) t.size_threshold_k = spread_size_threshold(m, *m_prime, *k, h, q);
    }
    return t;
}

AsymptoticExponents asymptotic_exponents(unsigned N, unsigned k, unsigned m, unsigned h)
{
    const long n = N, kk = k, mm = m, hh = h;
    return {(hh + 1) * (mm - hh - 1) + (kk - hh - 1) * (n - kk),
            2 * (hh + 1) * (mm - hh - 1) + (kk - 2 * hh - 2) * (n - kk)};
}

double ratio_to_power(const BigInt& value, std::uint64_t q, long exp)
{
    BigRat r = exp >= 0 ? BigRat(value, big_pow(q, exp)) : BigRat(value * big_pow(q, -exp));
    return r.convert_to<double>();
}

// ---------------------------------------------------------------------------

namespace {

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace

std::uint64_t trial_seed(std::uint64_t seed, unsigned k, std::uint64_t trial)
{
    return splitmix64(splitmix64(splitmix64(seed) ^ k) ^ trial);
}

std::string DensityCurve::to_csv() const
{
    std::ostringstream os;
    os << "q,m,n,h,k,samples,scattered,proportion,seed\n";
    for (const auto& r : rows) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.4f", r.proportion());
        os << q << ',' << m << ',' << n << ',' << h << ',' << r.k << ',' << r.samples << ',' << r.scattered << ','
           << buf << ',' << seed << '\n';
    }
    return os.str();
}

DensityCurve empirical_density(std::uint32_t q, unsigned m, unsigned n, unsigned h, unsigned k_lo, unsigned k_hi,
                               std::uint64_t samples, std::uint64_t seed)
{
    require(k_lo <= k_hi && k_hi <= m * n, "density needs k_lo <= k_hi <= mn");
    require(h >= 1 && h <= m, "density needs 1 <= h <= m");
    const auto [p, e] = prime_power(q);
    const Ambient X(FieldTower::make(p, e, m), n);
    DesarguesianChecker check(X);
    DensityCurve c;
    c.q = q;
    c.m = m;
    c.n = n;
    c.h = h;
    c.seed = seed;
    for (unsigned k = k_lo; k <= k_hi; ++k) {
        DensityRow row;
        row.k = k;
        row.samples = samples;
        for (std::uint64_t t = 0; t < samples; ++t) {
            std::mt19937_64 rng(trial_seed(seed, k, t));
            const Subspace U = sample_subspace(X.base_ptr(), X.N(), k, rng);
            if (check.scattered(U, h)) ++row.scattered;
        }
        c.rows.push_back(row);
    }
    return c;
}

}  // namespace scatterlab
