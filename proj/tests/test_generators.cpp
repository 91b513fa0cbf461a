#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ksat/generators.hpp"

#include <map>
#include <set>
#include <stdexcept>

using namespace ksat;

namespace {

int true_literals(const clause& c, const assignment& a) {
    int t = 0;
    for (const auto& l : c.lit)
        if (literal_true(l, a)) t++;
    return t;
}

std::map<std::uint64_t, int> rank_multiset(const instance& f) {
    std::map<std::uint64_t, int> m;
    for (const auto& c : f.clauses) m[clause_to_type_id(c, f.n) / 8]++;
    return m;
}

} // namespace

TEST_CASE("model names roundtrip") {
    for (model m : {model::independent, model::pairwise, model::threewise, model::univar})
        CHECK(model_from_name(model_name(m)) == m);
    CHECK(model_from_name("independent") == model::independent);
    CHECK_THROWS_AS(model_from_name("bogus"), std::invalid_argument);
}

TEST_CASE("spec validation") {
    CHECK_THROWS_AS((generator_spec{model::independent, 2, 5, 0, 1}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((generator_spec{model::independent, 5, 0, 0, 1}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((generator_spec{model::pairwise, 5, 9, 0, 1}.validate()), std::invalid_argument);
    CHECK_NOTHROW((generator_spec{model::pairwise, 5, 10, 0, 1}.validate()));
    CHECK_THROWS_AS((generator_spec{model::threewise, 9, 7, 0, 1}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((generator_spec{model::threewise, 9, 30, 0, 1}.validate()), std::invalid_argument);
    CHECK_NOTHROW((generator_spec{model::threewise, 9, 28, 0, 1}.validate()));
    CHECK_THROWS_AS((generator_spec{model::independent, 5, 5, 0, 2}.validate()), std::invalid_argument);
}

TEST_CASE("threewise branch weights") {
    generator_spec spec{model::threewise, 6, 6, 0, 1};
    CHECK(spec.branch_p() == rational(19, 80)); // (m-1)(N-1)/N^2 at N=20
    CHECK(spec.branch_q() == rational(1, 400));
    CHECK(rational(1) - spec.branch_p() - spec.branch_q() == rational(19, 25));
}

TEST_CASE("parity signs stay in the coset and cover it") {
    rng_stream rng(7);
    for (int parity : {0, 1})
        for (int s = 0; s < 8; ++s) {
            std::array<bool, 3> sigma{(s & 1) != 0, (s & 2) != 0, (s & 4) != 0};
            std::set<int> seen;
            for (int i = 0; i < 200; ++i) {
                auto negs = sample_parity_signs(sigma, parity, rng);
                int count = (negs[0] ? 1 : 0) + (negs[1] ? 1 : 0) + (negs[2] ? 1 : 0);
                int sig = (sigma[0] ? 1 : 0) + (sigma[1] ? 1 : 0) + (sigma[2] ? 1 : 0);
                CHECK((count + sig) % 2 == parity);
                seen.insert((negs[0] ? 1 : 0) | (negs[1] ? 2 : 0) | (negs[2] ? 4 : 0));
            }
            CHECK(seen.size() == 4); // uniform over the 4 coset members
        }
}

TEST_CASE("generation is deterministic in the seed") {
    generator_spec spec{model::threewise, 9, 14, 123, 1};
    gen_result a = generate(spec);
    gen_result b = generate(spec);
    CHECK(a.inst.clauses == b.inst.clauses);
    CHECK(a.planted == b.planted);
    spec.seed = 124;
    gen_result c = generate(spec);
    CHECK(a.inst.clauses != c.inst.clauses);
}

TEST_CASE("independent model shape") {
    generator_spec spec{model::independent, 7, 40, 5, 1};
    gen_result g = generate(spec);
    CHECK(g.inst.n == 7);
    CHECK(g.inst.clauses.size() == 40);
    CHECK_FALSE(g.planted);
    CHECK_NOTHROW(validate_instance(g.inst));
}

TEST_CASE("one-triple model puts every clause on one triple") {
    generator_spec spec{model::univar, 8, 25, 9, 1};
    gen_result g = generate(spec);
    CHECK(g.inst.clauses.size() == 25);
    auto ranks = rank_multiset(g.inst);
    CHECK(ranks.size() == 1);
}

TEST_CASE("pairwise planted branch is a permutation of all triples") {
    // the one-triple branch has probability 1/N; these seeds take the planted one
    for (std::uint64_t seed : {1u, 2u, 3u, 4u, 5u}) {
        generator_spec spec{model::pairwise, 5, 10, seed, 1};
        gen_result g = generate(spec);
        REQUIRE(g.inst.clauses.size() == 10);
        if (!g.planted) continue;
        auto ranks = rank_multiset(g.inst);
        CHECK(ranks.size() == 10); // every triple exactly once
        // parity 1: the planted assignment makes an odd number of literals true
        for (const auto& c : g.inst.clauses) CHECK(true_literals(c, *g.planted) % 2 == 1);
        CHECK(evaluate(g.inst, *g.planted).satisfied);
    }
}

TEST_CASE("pairwise parity 0 gives an even number of true literals") {
    bool saw_planted = false;
    for (std::uint64_t seed = 0; seed < 8 && !saw_planted; ++seed) {
        rng_stream rng(seed);
        gen_result g = gen_pairwise(6, rng, 0);
        if (!g.planted) continue;
        saw_planted = true;
        for (const auto& c : g.inst.clauses) CHECK(true_literals(c, *g.planted) % 2 == 0);
    }
    CHECK(saw_planted);
}

TEST_CASE("threewise branches have the right support") {
    int planted_seen = 0, paired_seen = 0;
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        generator_spec spec{model::threewise, 9, 14, seed, 1};
        gen_result g = generate(spec);
        REQUIRE(g.inst.clauses.size() == 14);
        auto ranks = rank_multiset(g.inst);
        if (g.planted) {
            planted_seen++;
            CHECK(ranks.size() == 14); // all distinct triples
            for (const auto& c : g.inst.clauses) CHECK(true_literals(c, *g.planted) % 2 == 1);
            CHECK(evaluate(g.inst, *g.planted).satisfied);
        } else {
            // paired branch (the 1/N^2 one-triple branch is too rare to hit here)
            paired_seen++;
            CHECK(ranks.size() == 7);
            for (const auto& [r, cnt] : ranks) {
                (void)r;
                CHECK(cnt == 2);
            }
        }
    }
    // p ~ 0.165 at n=9, m=14: both branches must show up in 60 seeds
    CHECK(planted_seen >= 30);
    CHECK(paired_seen >= 3);
}

TEST_CASE("generate_with_stream matches generate on stream 0") {
    generator_spec spec{model::threewise, 10, 20, 77, 1};
    rng_stream rng = substream(77, 0);
    gen_result a = generate_with_stream(spec, rng);
    gen_result b = generate(spec);
    CHECK(a.inst.clauses == b.inst.clauses);
}
