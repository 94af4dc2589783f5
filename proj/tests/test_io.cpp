#include <doctest.h>

#include <sstream>

#include "scatterlab/errors.hpp"
#include "scatterlab/io.hpp"
#include "scatterlab/scattered.hpp"

using namespace scatterlab;

TEST_CASE("subspace round-trip")
{
    auto F = field_of_order(9);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto U = sample_subspace(F, 5, seed % 6, seed);
        std::stringstream ss;
        write_subspace(ss, U);
        CHECK(read_subspace(ss) == U);
    }
}

TEST_CASE("spread round-trip keeps the Desarguesian tag")
{
    const auto T = FieldTower::make(2, 1, 2);
    for (const auto& A : {desarguesian_spread(T, 3), construct_tight_spread(T, 2, 1).spread}) {
        std::stringstream ss;
        write_spread(ss, A);
        const auto B = read_spread(ss);
        CHECK(B.elements() == A.elements());
        CHECK(B.kind() == A.kind());
        CHECK(B.ambient().has_value() == A.ambient().has_value());
    }
}

TEST_CASE("code round-trips")
{
    const auto C = multiplication_code(FieldTower::make(3, 1, 2));
    std::stringstream ss;
    write_code(ss, C);
    const auto D = read_code(ss);
    CHECK(D.codewords() == C.codewords());
    CHECK(D.linear() == C.linear());

    const auto mc = construct_minimal_code(FieldTower::make(2, 1, 4));
    std::stringstream vs;
    write_vector_code(vs, mc.code);
    const auto v = read_vector_code(vs);
    CHECK(v.generator() == mc.code.generator());
    CHECK(v.tower().qm() == 16);
}

TEST_CASE("malformed input is rejected")
{
    auto bad = [](const std::string& text, auto reader) {
        std::istringstream is(text);
        CHECK_THROWS_AS(reader(is), ValidationError);
    };
    bad("", read_subspace);
    bad("2 3 1\n1 0", read_subspace);
    bad("2 3 1\n1 0 5\n", read_subspace);
    bad("6 3 1\n1 0 0\n", read_subspace);
    bad("2 2 2 desarguesian 2\n", read_spread);
    bad("2 2 2 nonsense 0\n", read_spread);
    bad("2 2 2 1 1\n1 0 0 1\n", read_code);
    bad("2 4 3 x\n", read_vector_code);
    CHECK_THROWS_AS(read_file("/nonexistent/scatterlab/file"), ValidationError);
}
