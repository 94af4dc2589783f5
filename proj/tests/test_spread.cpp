#include <doctest.h>

#include "oracles.hpp"
#include "scatterlab/errors.hpp"
#include "scatterlab/scattered.hpp"
#include "scatterlab/spread.hpp"

using namespace scatterlab;

namespace {

const FieldTower& T4()
{
    static const FieldTower t = FieldTower::make(2, 1, 2);
    return t;
}

// Normality straight from the definition on point sets: for every pair the
// elements inside their span cover it, and every other element is disjoint.
bool normal_by_definition(const PartialSpread& A)
{
    oracle::PrimeSpace X(A.field().order(), unsigned(A.N()));
    std::vector<oracle::Bits> pts;
    for (const auto& S : A.elements()) pts.push_back(X.of(S));
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            oracle::Bits W = X.span([&] {
                std::vector<std::uint32_t> g;
                for (const auto* S : {&A[i], &A[j]})
                    for (std::size_t r = 0; r < S->dim(); ++r)
                        g.push_back(X.encode(std::vector<std::uint32_t>(S->basis().row(r).begin(),
                                                                        S->basis().row(r).end())));
                return g;
            }());
            oracle::Bits covered = X.zero();
            for (const auto& P : pts) {
                const auto c = oracle::PrimeSpace::count(oracle::PrimeSpace::intersect(W, P));
                if (c == oracle::PrimeSpace::count(P)) {
                    for (std::size_t w = 0; w < covered.size(); ++w) covered[w] |= P[w];
                } else if (c != 1) {
                    return false;
                }
            }
            if (covered != W) return false;
        }
    return true;
}

}  // namespace

TEST_CASE("Desarguesian spread sizes and partition of the nonzero vectors")
{
    CHECK(desarguesian_spread(T4(), 1).size() == 1);
    CHECK(desarguesian_spread(T4(), 1)[0] == Subspace::full(T4().base_ptr(), 2));
    CHECK(desarguesian_spread(T4(), 2).size() == 5);
    for (auto [q, m, n] : {std::tuple{2u, 2u, 3u}, {3u, 2u, 2u}, {2u, 3u, 2u}}) {
        const auto T = FieldTower::make(q, 1, m);
        const auto A = desarguesian_spread(T, n);
        oracle::PrimeSpace X(q, m * n);
        std::vector<int> hits(X.size(), 0);
        for (const auto& S : A.elements()) {
            CHECK(S.dim() == m);
            for (auto v : X.members(X.of(S))) ++hits[v];
        }
        CHECK(hits[0] == int(A.size()));
        for (std::uint32_t v = 1; v < X.size(); ++v) REQUIRE(hits[v] == 1);
        CHECK(A.size() == A.full_size());
    }
    CHECK(desarguesian_spread(T4(), 3).size() == 21);
}

TEST_CASE("validate reports partial, full and normal")
{
    const auto D = desarguesian_spread(T4(), 3);
    const auto r = validate(D);
    CHECK(r.is_partial);
    CHECK(r.is_full);
    CHECK(r.is_normal);
    CHECK(normal_by_definition(D));

    const auto single = PartialSpread(T4().base_ptr(), 6, 2, {D[0]}, SpreadKind::adhoc);
    const auto rs = validate(single);
    CHECK(rs.is_partial);
    CHECK(!rs.is_full);
    CHECK(rs.is_normal);

    CHECK(validate(desarguesian_spread(T4(), 2)).normality_vacuous);
}

TEST_CASE("a transversal plane breaks the partial-spread property")
{
    const auto D = desarguesian_spread(T4(), 3);
    std::vector<Subspace> els(D.elements().begin(), D.elements().end());
    // plane through one vector of els[0] and one of els[1]
    Vec a = els[0].basis().row_vec(0), b = els[1].basis().row_vec(0);
    els[2] = Subspace::span(T4().base_ptr(), 6, std::vector<Vec>{a, b});
    CHECK(!pairwise_trivial(els));
    CHECK_THROWS_AS(PartialSpread(T4().base_ptr(), 6, 2, els, SpreadKind::adhoc), ValidationError);
}

TEST_CASE("the inductive tight spread is a full spread; normality matches the definition")
{
    const auto t = construct_tight_spread(T4(), 3, 1);
    const auto r = validate(t.spread);
    CHECK(r.is_full);
    CHECK(r.is_normal == normal_by_definition(t.spread));
}

TEST_CASE("classifier strategies agree and partition the space")
{
    const Ambient X(FieldTower::make(2, 1, 3), 2);
    const auto A = desarguesian_spread(X.tower(), 2);
    const PointClassifier c1(A, PointClassifier::Strategy::desarguesian_normalize);
    const PointClassifier c2(A, PointClassifier::Strategy::point_table);
    const PointClassifier c3(A, PointClassifier::Strategy::generic_meet);
    oracle::PrimeSpace O(2, 6);
    for (std::uint32_t v = 1; v < O.size(); ++v) {
        Vec x(6);
        for (unsigned i = 0; i < 6; ++i) x[i] = (v >> i) & 1;
        const auto i1 = c1.classify(x);
        REQUIRE(i1);
        CHECK(c2.classify(x) == i1);
        CHECK(c3.classify(x) == i1);
        CHECK(A[*i1].contains(x));
    }
    CHECK(!c3.classify(Vec(6, 0)));

    const auto R = restrict_spread(A, A[0]);
    const PointClassifier r2(R, PointClassifier::Strategy::point_table);
    CHECK(!r2.classify(A[0].basis().row(0)));
}

TEST_CASE("second-order closure")
{
    const Ambient X(T4(), 2);
    const auto D = desarguesian_spread(T4(), 2);
    CHECK(second_order_closure(D).size() == D.size());

    const auto two = PartialSpread::from_points(X, {{1, 0}, {0, 1}}, SpreadKind::partial_desarguesian);
    CHECK(second_order_closure(two).size() == 5);
    const auto one = PartialSpread::from_points(X, {{1, 2}}, SpreadKind::partial_desarguesian);
    CHECK(second_order_closure(one).size() == 1);

    const Ambient Y(T4(), 3);
    const auto pts = PartialSpread::from_points(Y, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, SpreadKind::partial_desarguesian);
    const auto cl = second_order_closure(pts);
    CHECK(cl.size() == 12);
}

TEST_CASE("restricting a spread")
{
    const auto D = desarguesian_spread(T4(), 2);
    CHECK(restrict_spread(D, Subspace(T4().base_ptr(), 4)).size() == 5);
    CHECK(restrict_spread(D, Subspace::full(T4().base_ptr(), 4)).size() == 0);
    CHECK(restrict_spread(D, D[0]).size() == 4);
}

TEST_CASE("tight constructions")
{
    auto max_meet = [](const PartialSpread& A, const Subspace& U) {
        std::size_t m = 0;
        for (const auto& S : A.elements()) m = std::max(m, meet_dim(S, U));
        return m;
    };
    {
        const auto t = construct_tight_spread(T4(), 2, 1);
        CHECK(t.spread.size() == 5);
        CHECK(validate(t.spread).is_full);
        CHECK(t.U.dim() == 2);
        CHECK(max_meet(t.spread, t.U) <= 1);
    }
    {
        const auto t = construct_tight_spread(T4(), 2, 2);
        CHECK(t.U.dim() == 3);
        CHECK(max_meet(t.spread, t.U) <= 2);
    }
    {
        const auto t = construct_tight_spread(T4(), 3, 1);
        CHECK(t.spread.size() == 21);
        CHECK(t.U.dim() == 4);
        CHECK(max_meet(t.spread, t.U) <= 1);
    }
    {
        const auto t = partial_spread_tight(T4(), 2, 1);
        CHECK(t.spread.size() == 4);
        CHECK(t.U.dim() == 3);
        CHECK(max_meet(t.spread, t.U) <= 1);
    }
    {
        const auto t = partial_spread_tight(T4(), 2, 2);
        CHECK(t.U.dim() == 4);
        for (const auto& S : t.spread.elements()) CHECK(meet_dim(S, t.U) == 2);
    }
    {
        const auto T = FieldTower::make(3, 1, 2);
        const auto t = construct_tight_spread(T, 3, 1);
        CHECK(validate(t.spread).is_full);
        CHECK(t.U.dim() == 4);
        CHECK(max_meet(t.spread, t.U) <= 1);
    }
}
