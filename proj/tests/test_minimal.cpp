#include <doctest.h>

#include "scatterlab/errors.hpp"
#include "scatterlab/minimal.hpp"
#include "scatterlab/scattered.hpp"

using namespace scatterlab;

namespace {

Subspace units(const Ambient& X, std::initializer_list<std::size_t> idx)
{
    std::vector<Vec> g;
    for (auto i : idx) {
        Vec v(X.N(), 0);
        v[i] = 1;
        g.push_back(v);
    }
    return Subspace::span(X.base_ptr(), X.N(), g);
}

}  // namespace

TEST_CASE("linear sets")
{
    const Ambient X(FieldTower::make(2, 1, 3), 2);
    const auto all = linear_set(X, Subspace::full(X.base_ptr(), 6));
    CHECK(all.size() == 9);
    CHECK(all.partition_identity());
    CHECK(is_cutting(all, 1));
    CHECK(is_cutting(all, 2));
    const auto ev = construct_family("even-n", {2, 3, 1});
    const auto L = linear_set(ev.X, ev.U);
    CHECK(L.rank() == 3);
    CHECK(L.size() == 7);
    CHECK(L.partition_identity());
}

TEST_CASE("cutting sets from scattered subspaces")
{
    CHECK(cutting_feasible(4, 3, 2));
    CHECK(!cutting_feasible(4, 4, 1));
    const auto c4 = cutting_from_scattered(FieldTower::make(2, 1, 4), 3, 2);
    CHECK(c4.U.dim() == 7);
    CHECK(is_cutting(c4.L, 2));
    CHECK(c4.L.partition_identity());
    const auto c3 = cutting_from_scattered(FieldTower::make(2, 1, 3), 3, 2);
    CHECK(c3.U.dim() == 6);
    CHECK(is_cutting(c3.L, 2));
    CHECK_THROWS_AS(cutting_from_scattered(FieldTower::make(2, 1, 4), 3, 1), ValidationError);
}

TEST_CASE("a non-scattered subspace of the same dimension need not be cutting")
{
    const Ambient X(FieldTower::make(2, 1, 4), 3);
    // Y: 3 dims inside the expansion of <e1>; X_1: the third coordinate.
    const auto U = units(X, {0, 1, 2, 8, 9, 10, 11});
    CHECK(U.dim() == 7);
    CHECK(!is_desarguesian_scattered(U, X, 2));
    CHECK(!is_cutting(linear_set(X, U), 2));
}

TEST_CASE("the [m+3,3] minimal code")
{
    const auto mc = construct_minimal_code(FieldTower::make(2, 1, 4));
    CHECK(mc.code.length() == 7);
    CHECK(mc.code.k() == 3);
    CHECK(mc.code.non_degenerate());
    REQUIRE(mc.report);
    CHECK(mc.report->minimal);
    CHECK(mc.report->by_supports);
    CHECK(mc.report->by_hyperplanes);
    CHECK(mc.report->classes == 273);
    CHECK(check_weight_system(mc.code));

    const auto m5 = construct_minimal_code(FieldTower::make(2, 1, 5));
    CHECK(m5.code.length() == 8);
    CHECK(is_cutting(m5.cutting.L, 2));
    CHECK_THROWS_AS(construct_minimal_code(FieldTower::make(2, 1, 3)), ValidationError);
}

TEST_CASE("non-minimal codes come with a certificate")
{
    const Ambient X(FieldTower::make(2, 1, 4), 3);
    const auto U = units(X, {0, 1, 2, 3, 4, 8});
    const auto C = VectorRankCode::from_system(X, U);
    CHECK(C.non_degenerate());
    CHECK(check_weight_system(C));
    const auto r = is_minimal_code(C);
    CHECK(!r.minimal);
    REQUIRE(r.certificate);
    const auto& [x, y] = *r.certificate;
    CHECK(rank_support(C.tower(), C.encode(y)).contains(rank_support(C.tower(), C.encode(x))));
    CHECK(!is_cutting(linear_set(X, U), 2));

    const Ambient X1(FieldTower::make(2, 1, 4), 1);
    const auto one = VectorRankCode::from_system(X1, units(X1, {0, 1}));
    CHECK(is_minimal_code(one).minimal);
}

TEST_CASE("rank supports do not depend on the chosen basis")
{
    const auto T = FieldTower::make(2, 1, 4);
    const auto S = T.with_basis({3, 6, 12, 9 ^ 4});
    std::mt19937_64 rng(1);
    for (int t = 0; t < 50; ++t) {
        Vec c(6);
        for (auto& e : c) e = Elem(rng() % 16);
        CHECK(rank_support(T, c) == rank_support(S, c));
    }
    const Vec zero(5, 0);
    CHECK(rank_support(T, zero).dim() == 0);
}
