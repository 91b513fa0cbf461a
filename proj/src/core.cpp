#include "ksat/core.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

namespace ksat {

namespace {

std::uint64_t c2(std::uint64_t x) { return x < 2 ? 0 : x * (x - 1) / 2; }
std::uint64_t c3(std::uint64_t x) { return x < 3 ? 0 : x * (x - 1) / 2 * (x - 2) / 3; }

// largest c with c3(c) <= r
std::uint64_t invert_c3(std::uint64_t r, std::uint64_t hi) {
    std::uint64_t lo = 2; // c3(2) = 0 <= r
    while (lo < hi) {
        std::uint64_t mid = lo + (hi - lo + 1) / 2;
        if (c3(mid) <= r) lo = mid; else hi = mid - 1;
    }
    return lo;
}

std::uint64_t invert_c2(std::uint64_t r, std::uint64_t hi) {
    std::uint64_t lo = 1;
    while (lo < hi) {
        std::uint64_t mid = lo + (hi - lo + 1) / 2;
        if (c2(mid) <= r) lo = mid; else hi = mid - 1;
    }
    return lo;
}

} // namespace

std::uint64_t triple_count(int n) {
    if (n < 3) return 0;
    return c3(static_cast<std::uint64_t>(n));
}

std::uint64_t triple_rank(int v1, int v2, int v3) {
    if (!(1 <= v1 && v1 < v2 && v2 < v3))
        throw std::invalid_argument("triple_rank: variables must be sorted and distinct");
    std::uint64_t a = static_cast<std::uint64_t>(v1) - 1;
    std::uint64_t b = static_cast<std::uint64_t>(v2) - 1;
    std::uint64_t c = static_cast<std::uint64_t>(v3) - 1;
    return a + c2(b) + c3(c);
}

std::array<int, 3> triple_unrank(std::uint64_t rank, int n) {
    if (rank >= triple_count(n)) throw std::out_of_range("triple_unrank: rank out of range");
    std::uint64_t c = invert_c3(rank, static_cast<std::uint64_t>(n) - 1);
    rank -= c3(c);
    std::uint64_t b = invert_c2(rank, c - 1);
    rank -= c2(b);
    std::uint64_t a = rank;
    return {static_cast<int>(a) + 1, static_cast<int>(b) + 1, static_cast<int>(c) + 1};
}

std::uint64_t clause_type_count(int n) { return 8 * triple_count(n); }

clause canonicalize(literal a, literal b, literal c) {
    std::array<literal, 3> ls{a, b, c};
    std::sort(ls.begin(), ls.end(), [](literal x, literal y) { return x.var < y.var; });
    if (ls[0].var < 1) throw std::invalid_argument("canonicalize: variables are 1-based");
    if (ls[0].var == ls[1].var || ls[1].var == ls[2].var)
        throw std::invalid_argument("canonicalize: repeated variable in clause");
    return clause{ls};
}

std::uint64_t clause_to_type_id(const clause& c, int n) {
    if (c.lit[2].var > n) throw std::out_of_range("clause_to_type_id: variable exceeds n");
    std::uint64_t rank = triple_rank(c.lit[0].var, c.lit[1].var, c.lit[2].var);
    std::uint64_t sign = (c.lit[0].neg ? 1u : 0u) | (c.lit[1].neg ? 2u : 0u) | (c.lit[2].neg ? 4u : 0u);
    return rank * 8 + sign;
}

clause type_id_to_clause(std::uint64_t id, int n) {
    if (id >= clause_type_count(n)) throw std::out_of_range("type_id_to_clause: id out of range");
    auto vars = triple_unrank(id / 8, n);
    std::uint64_t sign = id % 8;
    clause c;
    for (int i = 0; i < 3; ++i) c.lit[i] = literal{vars[i], ((sign >> i) & 1) != 0};
    return c;
}

bool literal_true(literal l, const assignment& a) {
    return a.bits[static_cast<std::size_t>(l.var) - 1] != l.neg;
}

eval_result evaluate(const instance& f, const assignment& a) {
    for (std::size_t i = 0; i < f.clauses.size(); ++i) {
        const clause& c = f.clauses[i];
        if (!literal_true(c.lit[0], a) && !literal_true(c.lit[1], a) && !literal_true(c.lit[2], a))
            return {false, i};
    }
    return {true, no_clause};
}

instance deduplicate(const instance& f) {
    instance out;
    out.n = f.n;
    out.clauses.reserve(f.clauses.size());
    std::unordered_set<std::uint64_t> seen;
    for (const clause& c : f.clauses)
        if (seen.insert(clause_to_type_id(c, f.n)).second) out.clauses.push_back(c);
    return out;
}

void validate_instance(const instance& f) {
    if (f.n < 3) throw std::invalid_argument("instance: n must be at least 3");
    for (const clause& c : f.clauses) {
        if (!(1 <= c.lit[0].var && c.lit[0].var < c.lit[1].var && c.lit[1].var < c.lit[2].var))
            throw std::invalid_argument("instance: clause not canonical");
        if (c.lit[2].var > f.n) throw std::invalid_argument("instance: variable exceeds n");
    }
}

} // namespace ksat
