#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ksat/dimacs.hpp"
#include "ksat/generators.hpp"

#include <sstream>

using namespace ksat;

TEST_CASE("write/read roundtrip with planted witness") {
    generator_spec spec{model::pairwise, 5, 10, 42, 1};
    gen_result g = generate(spec);
    std::ostringstream os;
    write_dimacs(os, g.inst, g.planted);

    std::istringstream is(os.str());
    dimacs_file f = read_dimacs(is);
    CHECK(f.inst.n == g.inst.n);
    REQUIRE(f.inst.clauses.size() == g.inst.clauses.size());
    for (std::size_t i = 0; i < f.inst.clauses.size(); ++i) CHECK(f.inst.clauses[i] == g.inst.clauses[i]);
    CHECK(f.planted.has_value() == g.planted.has_value());
    if (f.planted && g.planted) CHECK(f.planted->bits == g.planted->bits);
    CHECK(f.skipped == 0);
}

TEST_CASE("strict mode rejects malformed input") {
    SUBCASE("clause count mismatch") {
        std::istringstream is("p cnf 3 2\n1 2 3 0\n");
        CHECK_THROWS_AS(read_dimacs(is, true), std::runtime_error);
    }
    SUBCASE("repeated variable") {
        std::istringstream is("p cnf 3 1\n1 -1 2 0\n");
        CHECK_THROWS_AS(read_dimacs(is, true), std::runtime_error);
    }
    SUBCASE("wrong clause width") {
        std::istringstream is("p cnf 4 1\n1 2 3 4 0\n");
        CHECK_THROWS_AS(read_dimacs(is, true), std::runtime_error);
    }
    SUBCASE("variable out of range") {
        std::istringstream is("p cnf 3 1\n1 2 4 0\n");
        CHECK_THROWS_AS(read_dimacs(is, true), std::runtime_error);
    }
    SUBCASE("trailing literals") {
        std::istringstream is("p cnf 3 1\n1 2 3 0\n1 2\n");
        CHECK_THROWS_AS(read_dimacs(is, true), std::runtime_error);
    }
    SUBCASE("missing problem line") {
        std::istringstream is("1 2 3 0\n");
        CHECK_THROWS_AS(read_dimacs(is, true), std::runtime_error);
    }
}

TEST_CASE("lenient mode skips bad clauses and counts them") {
    std::istringstream is("p cnf 4 3\n1 2 3 0\n1 -1 2 0\n1 2 3 4 0\n-2 3 -4 0\n");
    dimacs_file f = read_dimacs(is, false);
    CHECK(f.inst.clauses.size() == 2);
    CHECK(f.skipped == 2);
}

TEST_CASE("clauses span multiple lines") {
    std::istringstream is("p cnf 5 2\n1 2\n3 0 -4\n2 5 0\n");
    dimacs_file f = read_dimacs(is);
    REQUIRE(f.inst.clauses.size() == 2);
    CHECK(f.inst.clauses[1].lit[0].var == 2);
    CHECK(f.inst.clauses[1].lit[1].var == 4);
    CHECK(f.inst.clauses[1].lit[1].neg);
}

TEST_CASE("planted comment roundtrips standalone") {
    std::istringstream is("c planted 10110\np cnf 5 1\n1 2 3 0\n");
    dimacs_file f = read_dimacs(is);
    REQUIRE(f.planted);
    CHECK(f.planted->bits == std::vector<bool>{true, false, true, true, false});
}

TEST_CASE("planted length mismatch rejected") {
    std::istringstream is("c planted 101\np cnf 5 1\n1 2 3 0\n");
    CHECK_THROWS_AS(read_dimacs(is), std::runtime_error);
}
