#include <doctest.h>

#include <map>
#include <set>

#include "oracles.hpp"
#include "scatterlab/ambient.hpp"
#include "scatterlab/errors.hpp"
#include "scatterlab/subspace.hpp"

using namespace scatterlab;

TEST_CASE("canonical RREF does not depend on the generators")
{
    auto F2 = field_of_order(2);
    const auto A = Subspace::span(F2, 4, std::vector<Vec>{{1, 1, 0, 0}, {0, 1, 1, 0}});
    const auto B = Subspace::span(F2, 4, std::vector<Vec>{{1, 0, 1, 0}, {1, 1, 0, 0}, {0, 1, 1, 0}});
    CHECK(A == B);
    CHECK(A.dim() == 2);
    CHECK(A.basis().row_vec(0) == Vec{1, 0, 1, 0});
    CHECK(A.basis().row_vec(1) == Vec{0, 1, 1, 0});
    CHECK(A.pivots() == std::vector<std::size_t>{0, 1});

    auto F3 = field_of_order(3);
    const auto C = Subspace::span(F3, 3, std::vector<Vec>{{2, 1, 0}});
    CHECK(C.basis().row_vec(0) == Vec{1, 2, 0});
    CHECK(Subspace::span(F3, 3, std::vector<Vec>{{0, 0, 0}}).dim() == 0);
    CHECK(Subspace::full(F3, 3).dim() == 3);
}

TEST_CASE("Grassmannian counts match the q-binomial and all elements are distinct")
{
    for (unsigned q : {2u, 3u})
        for (unsigned N = 1; N <= 6; ++N)
            for (unsigned k = 0; k <= N; ++k) {
                std::set<Subspace> seen;
                GrassmannianCursor cur(field_of_order(q), N, k);
                while (cur.next()) seen.insert(cur.current());
                REQUIRE(seen.size() == std::size_t(oracle::q_binomial(N, k, q)));
                CHECK(cur.visited() == seen.size());
            }
}

TEST_CASE("Grassmannian enumeration equals the oracle's point-set enumeration")
{
    for (auto [q, N] : {std::pair{2u, 5u}, {3u, 4u}, {5u, 3u}})
        for (unsigned k = 0; k <= N; ++k) {
            oracle::PrimeSpace X(q, N);
            const auto expected = X.subspaces(k);
            std::set<oracle::Bits> got;
            for_each_subspace(field_of_order(q), N, k, [&](const Subspace& S) { got.insert(X.of(S)); });
            CHECK(got == std::set<oracle::Bits>(expected.begin(), expected.end()));
        }
}

TEST_CASE("meet and join satisfy the dimension formula and agree with point sets")
{
    for (auto [q, N] : {std::pair{2u, 4u}, {3u, 3u}}) {
        auto F = field_of_order(q);
        oracle::PrimeSpace X(q, N);
        std::vector<Subspace> all;
        for (unsigned k = 0; k <= N; ++k) for_each_subspace(F, N, k, [&](const Subspace& S) { all.push_back(S); });
        for (const auto& U : all)
            for (const auto& V : all) {
                const auto I = meet(U, V);
                const auto J = join(U, V);
                REQUIRE(I.dim() + J.dim() == U.dim() + V.dim());
                REQUIRE(meet_dim(U, V) == I.dim());
                REQUIRE(X.of(I) == oracle::PrimeSpace::intersect(X.of(U), X.of(V)));
                REQUIRE(J.contains(U));
                REQUIRE(U.contains(I));
            }
    }
}

TEST_CASE("annihilator has complementary dimension and is orthogonal")
{
    auto F = field_of_order(3);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto U = sample_subspace(F, 6, seed % 7, seed);
        const auto A = U.annihilator();
        CHECK(U.dim() + A.dim() == 6);
        for (std::size_t i = 0; i < U.dim(); ++i)
            for (std::size_t j = 0; j < A.dim(); ++j) {
                Elem s = 0;
                for (std::size_t c = 0; c < 6; ++c) s = F->add(s, F->mul(U.basis()(i, c), A.basis()(j, c)));
                CHECK(s == 0);
            }
        CHECK(A.annihilator() == U);
    }
}

TEST_CASE("sampling: edge cases, determinism and rough uniformity")
{
    auto F = field_of_order(2);
    CHECK(sample_subspace(F, 5, 0, 1).dim() == 0);
    CHECK(sample_subspace(F, 5, 5, 1) == Subspace::full(F, 5));
    CHECK(sample_subspace(F, 6, 3, 42) == sample_subspace(F, 6, 3, 42));
    CHECK_THROWS_AS(sample_subspace(F, 3, 4, 1), ValidationError);

    // 35 lines... 2-spaces of F_2^4: 35 of them, 7000 draws
    std::map<Subspace, int> hist;
    std::mt19937_64 rng(3);
    for (int t = 0; t < 7000; ++t) ++hist[sample_subspace(F, 4, 2, rng)];
    CHECK(hist.size() == 35);
    for (const auto& [S, c] : hist) {
        CHECK(c > 120);
        CHECK(c < 290);
    }
}

TEST_CASE("inverse and nullspace")
{
    auto F = field_of_order(5);
    const Matrix M = Matrix::from_rows({{1, 2, 0}, {0, 1, 3}, {4, 0, 2}}, 3);
    const auto inv = inverse(*F, M);
    REQUIRE(inv);
    CHECK(mul(*F, M, *inv) == Matrix::identity(3));
    const Matrix S = Matrix::from_rows({{1, 2, 3}, {2, 4, 1}}, 3);
    CHECK(!inverse(*F, Matrix::from_rows({{1, 2}, {2, 4}}, 2)));
    const Matrix K = nullspace(*F, S, 3);
    CHECK(K.rows == 3 - rank(*F, S));
    for (std::size_t i = 0; i < K.rows; ++i) {
        const Vec x = K.row_vec(i);
        for (std::size_t r = 0; r < S.rows; ++r) {
            Elem s = 0;
            for (std::size_t c = 0; c < 3; ++c) s = F->add(s, F->mul(S(r, c), x[c]));
            CHECK(s == 0);
        }
    }
}

TEST_CASE("ambient expansion and contraction")
{
    const Ambient X(FieldTower::make(2, 1, 3), 2);
    CHECK(X.N() == 6);
    CHECK(X.point_count() == 9);
    std::uint64_t pts = 0;
    X.for_each_point([&](const Vec& x) {
        ++pts;
        CHECK(X.contract(X.expand(x)) == x);
        CHECK(X.point_from_key(X.point_key(x)) == x);
        CHECK(X.fq_expansion(std::vector<Vec>{x}).dim() == 3);
    });
    CHECK(pts == 9);
    CHECK(X.expand(Vec{2, 0}) == Vec{0, 1, 0, 0, 0, 0});
    CHECK(X.fqm_span(Subspace::full(X.base_ptr(), 6)).dim() == 2);
    CHECK(dim_from_point_count(point_count_of_dim(4, 3), 3) == 4);
}
