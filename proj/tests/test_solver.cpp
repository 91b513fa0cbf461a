#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ksat/generators.hpp"
#include "ksat/solver.hpp"

#include <cstdint>
#include <stdexcept>
#include <vector>

using namespace ksat;

namespace {

clause cl(int a, bool na, int b, bool nb, int c, bool nc) {
    return canonicalize(literal{a, na}, literal{b, nb}, literal{c, nc});
}

instance all_signs(int n) {
    instance f;
    f.n = n;
    for (std::uint64_t id = 0; id < 8; ++id) f.clauses.push_back(type_id_to_clause(id, n));
    return f;
}

// independent exhaustive check used to validate witnesses and counts
std::uint64_t slow_count(const instance& f) {
    std::uint64_t count = 0;
    for (std::uint64_t a = 0; a < (1ull << f.n); ++a) {
        assignment x;
        x.bits.resize(f.n);
        for (int v = 1; v <= f.n; ++v) x.bits[v - 1] = (a >> (f.n - v)) & 1;
        if (evaluate(f, x).satisfied) ++count;
    }
    return count;
}

} // namespace

TEST_CASE("empty instance is satisfied by all-false") {
    instance f;
    f.n = 4;
    solve_result r = brute_force(f);
    REQUIRE(r.v == verdict::sat);
    CHECK(*r.witness == assignment{std::vector<bool>(4, false)});
    CHECK(r.decisions == 1);
    solve_result d = dpll(f);
    CHECK(d.v == verdict::sat);
    CHECK(count_models(f) == 16);
}

TEST_CASE("single clause lexicographically first witness") {
    instance f;
    f.n = 3;
    f.clauses = {cl(1, false, 2, false, 3, false)};
    solve_result r = brute_force(f);
    REQUIRE(r.v == verdict::sat);
    // all-false falsifies the positive clause; the next assignment in lex
    // order (variable 1 most significant) is 001
    CHECK(*r.witness == assignment{{false, false, true}});
    CHECK(r.decisions == 2);
    CHECK(count_models(f) == 7);
}

TEST_CASE("all eight sign patterns on one triple are unsatisfiable") {
    instance f = all_signs(3);
    CHECK(brute_force(f).v == verdict::unsat);
    CHECK(brute_force_serial(f).v == verdict::unsat);
    CHECK(dpll(f).v == verdict::unsat);
    CHECK_FALSE(dpll(f).witness);
    CHECK(count_models(f) == 0);
    // same pattern embedded in a larger variable set
    instance g = all_signs(6);
    CHECK(dpll(g).v == verdict::unsat);
    CHECK(count_models(g) == 0);
}

TEST_CASE("parallel brute force matches serial") {
    for (std::uint64_t seed = 0; seed < 12; ++seed) {
        generator_spec spec{model::independent, 10, 44, seed, 1};
        gen_result g = generate(spec);
        solve_result par = brute_force(g.inst);
        solve_result ser = brute_force_serial(g.inst);
        REQUIRE(par.v == ser.v);
        if (par.v == verdict::sat) {
            CHECK(*par.witness == *ser.witness);
            CHECK(evaluate(g.inst, *par.witness).satisfied);
        }
    }
}

TEST_CASE("brute force returns the lexicographically first witness") {
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        generator_spec spec{model::independent, 8, 20, seed, 1};
        gen_result g = generate(spec);
        solve_result r = brute_force(g.inst);
        if (r.v != verdict::sat) continue;
        std::uint64_t first = 0;
        for (;; ++first) {
            assignment x;
            x.bits.resize(8);
            for (int v = 1; v <= 8; ++v) x.bits[v - 1] = (first >> (8 - v)) & 1;
            if (evaluate(g.inst, x).satisfied) break;
        }
        std::uint64_t got = 0;
        for (int v = 1; v <= 8; ++v) got = (got << 1) | (r.witness->bits[v - 1] ? 1 : 0);
        CHECK(got == first);
        CHECK(r.decisions == first + 1);
    }
}

TEST_CASE("dpll agrees with brute force across densities") {
    for (std::uint64_t m : {10ull, 30ull, 42ull, 60ull}) {
        for (std::uint64_t seed = 0; seed < 50; ++seed) {
            generator_spec spec{model::independent, 10, m, seed, 1};
            gen_result g = generate(spec);
            solve_result b = brute_force(g.inst);
            solve_result d = dpll(g.inst);
            REQUIRE(b.v == d.v);
            if (d.v == verdict::sat) CHECK(evaluate(g.inst, *d.witness).satisfied);
        }
    }
}

TEST_CASE("dpll solves planted instances and respects the witness") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        generator_spec spec{model::pairwise, 5, 10, seed, 1};
        gen_result g = generate(spec);
        solve_result d = dpll(g.inst);
        REQUIRE(d.v == verdict::sat);
        if (g.planted) CHECK(evaluate(g.inst, *g.planted).satisfied);
    }
}

TEST_CASE("model counts") {
    instance f;
    f.n = 3;
    f.clauses = {cl(1, false, 2, false, 3, false), cl(1, true, 2, true, 3, true)};
    CHECK(count_models(f) == 6);
    CHECK(count_models_serial(f) == 6);
    for (std::uint64_t seed = 0; seed < 15; ++seed) {
        generator_spec spec{model::independent, 9, 25, seed, 1};
        gen_result g = generate(spec);
        std::uint64_t fast = count_models(g.inst);
        CHECK(fast == count_models_serial(g.inst));
        CHECK(fast == slow_count(g.inst));
    }
}

TEST_CASE("out-of-range variable counts are rejected") {
    instance f;
    f.n = 31;
    f.clauses = {cl(1, false, 2, false, 3, false)};
    CHECK_THROWS_AS(brute_force(f), std::invalid_argument);
    f.n = 27;
    CHECK_THROWS_AS(count_models(f), std::invalid_argument);
    CHECK_NOTHROW(dpll(f));
}
