#include <doctest.h>

#include <cmath>
#include <sstream>

#include "oracles.hpp"
#include "scatterlab/counting.hpp"
#include "scatterlab/errors.hpp"
#include "scatterlab/subspace.hpp"

using namespace scatterlab;

namespace {

BigInt big(unsigned __int128 v)
{
    BigInt r = 0;
    for (int s = 96; s >= 0; s -= 32) r = (r << 32) + std::uint32_t(v >> s);
    return r;
}

// #{k-spaces U : dim(U ∩ A) >= h+1 (and the same for B when given)}
BigInt brute(const oracle::PrimeSpace& X, const std::vector<oracle::Bits>& Us, const oracle::Bits& A,
             const oracle::Bits* B, unsigned h)
{
    BigInt c = 0;
    for (const auto& U : Us)
        if (X.meet_dim(U, A) >= h + 1 && (!B || X.meet_dim(U, *B) >= h + 1)) ++c;
    return c;
}

}  // namespace

TEST_CASE("q-binomial values")
{
    CHECK(gauss_binomial(5, 0, 3) == 1);
    CHECK(gauss_binomial(2, 1, 2) == 3);
    CHECK(gauss_binomial(4, 2, 2) == 35);
    CHECK(gauss_binomial(3, 4, 2) == 0);
    for (unsigned q : {2u, 3u, 4u, 7u})
        for (unsigned n = 0; n <= 9; ++n)
            for (unsigned k = 0; k <= n; ++k) CHECK(gauss_binomial(n, k, q) == big(oracle::q_binomial(n, k, q)));
}

TEST_CASE("counting examples")
{
    CHECK(delta_count(4, 2, 2, 2, 2).value == 0);
    CHECK(delta_count(4, 2, 2, 1, 2).value == 1);
    CHECK(delta_count(4, 2, 2, 0, 2).value == 19);
    CHECK(omega_count(4, 2, 2, 1, 2).value == 0);
    CHECK(omega_count(4, 2, 1, 0, 2).value == 1);
    CHECK(disjoint_count(2, 1, 1, 2) == 2);
    CHECK(disjoint_count(4, 2, 1, 2) == 28);
    CHECK(disjoint_count(5, 2, 0, 3) == gauss_binomial(5, 2, 3));
    CHECK_THROWS_AS(omega_count(5, 2, 3, 0, 2), ValidationError);
    CHECK_THROWS_AS(delta_count(4, 0, 2, 0, 2), ValidationError);

    const auto b = scattered_count_bounds(5, 4, 2, 2, 1, 2);
    CHECK(b.total == 35);
    CHECK(b.lower == 30);
    CHECK(b.upper_floor >= 30);
}

TEST_CASE("delta and omega equal brute force for N <= 5")
{
    for (unsigned q : {2u, 3u})
        for (unsigned N = 2; N <= 5; ++N) {
            oracle::PrimeSpace X(q, N);
            for (unsigned k = 1; k <= N; ++k) {
                const auto Us = X.subspaces(k);
                for (unsigned m = 1; m <= N; ++m) {
                    const auto A = oracle::coordinate_space(X, 0, m);
                    const oracle::Bits* B = nullptr;
                    oracle::Bits Bm;
                    if (2 * m <= N) {
                        Bm = oracle::coordinate_space(X, m, m);
                        B = &Bm;
                    }
                    for (unsigned h = 0; h <= m; ++h) {
                        REQUIRE(delta_count(N, k, m, h, q).value == brute(X, Us, A, nullptr, h));
                        if (B) REQUIRE(omega_count(N, k, m, h, q).value == brute(X, Us, A, B, h));
                    }
                }
            }
        }
}

TEST_CASE("partition identity and the exact-meet decomposition")
{
    for (unsigned q : {2u, 3u})
        for (unsigned N = 2; N <= 6; ++N)
            for (unsigned k = 1; k <= N; ++k)
                for (unsigned m = 1; m <= N; ++m) {
                    BigInt sum = 0;
                    for (unsigned l = 0; l <= m; ++l) {
                        const BigInt at_least = l == 0 ? gauss_binomial(N, k, q) : delta_count(N, k, m, l - 1, q).value;
                        const BigInt more = delta_count(N, k, m, l, q).value;
                        CHECK(at_least >= more);
                        sum += at_least - more;
                    }
                    CHECK(sum == gauss_binomial(N, k, q));
                    CHECK(gauss_binomial(N, k, q) - delta_count(N, k, m, 0, q).value == disjoint_count(N, k, m, q));
                }
}

TEST_CASE("counts do not depend on the choice of the fixed spaces")
{
    std::mt19937_64 rng(99);
    for (auto [q, N, k, m, h] : {std::tuple{2u, 6u, 3u, 2u, 0u}, {2u, 6u, 4u, 3u, 1u}, {3u, 4u, 2u, 2u, 0u}}) {
        auto F = field_of_order(q);
        std::vector<Subspace> Us;
        for_each_subspace(F, N, k, [&](const Subspace& S) { Us.push_back(S); });
        const BigInt d = delta_count(N, k, m, h, q).value;
        const BigInt o = omega_count(N, k, m, h, q).value;
        for (int t = 0; t < 5; ++t) {
            const auto A = sample_subspace(F, N, m, rng);
            Subspace B = sample_subspace(F, N, m, rng);
            while (meet_dim(A, B) != 0) B = sample_subspace(F, N, m, rng);
            BigInt cd = 0, co = 0;
            for (const auto& U : Us) {
                const bool a = meet_dim(U, A) >= h + 1;
                cd += a;
                co += a && meet_dim(U, B) >= h + 1;
            }
            CHECK(cd == d);
            CHECK(co == o);
        }
    }
}

TEST_CASE("delta is weakly decreasing in h")
{
    for (unsigned N = 2; N <= 8; ++N)
        for (unsigned k = 1; k <= N; ++k)
            for (unsigned m = 1; m <= N; ++m)
                for (unsigned h = 0; h < m; ++h) CHECK(delta_count(N, k, m, h + 1, 3).value <= delta_count(N, k, m, h, 3).value);
}

TEST_CASE("omega vanishes below the size needed for two disjoint meets")
{
    // k < 2(h+1) forces omega = 0; at k = 2(h+1) it is positive.
    for (unsigned h = 0; h <= 1; ++h) {
        const unsigned m = h + 1, N = 2 * m + 1;
        CHECK(omega_count(N, 2 * h + 1, m, h, 2).value == 0);
        CHECK(omega_count(N, 2 * h + 2, m, h, 2).value > 0);
    }
}

TEST_CASE("thresholds")
{
    const auto t = thresholds(25, 5, 1, 8);
    CHECK(t.existence_k_max == 11);
    CHECK(t.tipping_k == 11);
    CHECK(t.field_condition);
    CHECK(!thresholds(25, 5, 1, 7).field_condition);
    const auto s = thresholds(6, 3, 1, 2, 2, 3);
    REQUIRE(s.quarter_threshold);
    CHECK(*s.quarter_threshold == BigRat(big_pow(2, 4), 4));
    CHECK(quarter_threshold(3, 3, 2, 2) == BigRat(big_pow(2, 9), 4));
    CHECK(density_exponent(25, 12, 5, 1) == 2 * (25 + 2 - 12 - 5));
}

TEST_CASE("asymptotic exponents and finite-q trend")
{
    const auto e = asymptotic_exponents(4, 2, 2, 1);
    CHECK(e.delta_exp == 0);
    for (unsigned q : {2u, 3u, 4u, 5u}) CHECK(delta_count(4, 2, 2, 1, q).value == 1);
    CHECK(asymptotic_exponents(4, 2, 1, 0).omega_exp == 0);
    CHECK(omega_count(4, 2, 1, 0, 5).value == 1);

    const auto x = asymptotic_exponents(6, 3, 2, 1);
    double prev = 0;
    for (unsigned q : {2u, 3u, 4u, 5u}) {
        const double r = ratio_to_power(delta_count(6, 3, 2, 1, q).value, q, x.delta_exp);
        if (q >= 3) {
            CHECK(r >= 0.5);
            CHECK(r <= 2.0);
        }
        if (prev) CHECK(std::abs(r - 1) <= std::abs(prev - 1) + 1e-12);
        prev = r;
    }
}

TEST_CASE("density curve properties")
{
    const auto c = empirical_density(2, 3, 3, 1, 1, 6, 2000, 5);
    REQUIRE(c.rows.size() == 6);
    CHECK(c.rows[0].proportion() == 1.0);
    for (std::size_t i = 1; i < c.rows.size(); ++i) {
        const double p = c.rows[i - 1].proportion(), n = double(c.rows[i].samples);
        const double sigma = std::sqrt(std::max(p * (1 - p), 1e-4) / n);
        CHECK(c.rows[i].proportion() <= p + 2 * sigma + 1e-12);
    }
    CHECK(c.rows[5].proportion() == 0.0);  // floor(hmn/(h+1)) = 4

    const auto d = empirical_density(2, 3, 3, 1, 1, 6, 2000, 5);
    CHECK(d.to_csv() == c.to_csv());
    std::istringstream csv(c.to_csv());
    std::string header;
    std::getline(csv, header);
    CHECK(header == "q,m,n,h,k,samples,scattered,proportion,seed");
    CHECK(trial_seed(1, 2, 3) == trial_seed(1, 2, 3));
    CHECK(trial_seed(1, 2, 3) != trial_seed(1, 2, 4));
}
