#include "ksat/refutation.hpp"

#include <json.hpp>

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace ksat {

namespace {

std::uint64_t pairs2(std::uint64_t c) { return c * (c - 1) / 2; }

std::uint64_t distinct_types(const instance& f) {
    std::set<std::uint64_t> t;
    for (const auto& c : f.clauses) t.insert(clause_to_type_id(c, f.n));
    return t.size();
}

} // namespace

std::uint64_t xi(const instance& f) {
    std::unordered_map<std::uint64_t, std::uint64_t> cnt;
    cnt.reserve(f.clauses.size() * 2);
    for (const auto& c : f.clauses) cnt[clause_to_type_id(c, f.n)]++;
    std::uint64_t s = 0;
    for (const auto& [t, c] : cnt) {
        (void)t;
        s += pairs2(c);
    }
    return s;
}

rational xi_expectation(int n, std::uint64_t m) {
    bigint M = clause_type_count(n);
    return rational(bigint(m) * (bigint(m) - 1), 2 * M);
}

rational xi_universal_lower_bound(int n, std::uint64_t m) {
    bigint M = clause_type_count(n);
    return rational(bigint(m) * (bigint(m) - M), 2 * M);
}

rational xi_sat_threshold(int n, std::uint64_t m) {
    bigint M = clause_type_count(n);
    return rational(bigint(m) * (8 * bigint(m) - 7 * M), 14 * M);
}

literal_graph build_literal_graph(const instance& f) {
    literal_graph g;
    g.n = f.n;
    g.edge_instances = 3 * static_cast<std::uint64_t>(f.clauses.size());
    std::map<std::uint64_t, std::uint32_t> type_mult;
    for (const auto& c : f.clauses) type_mult[clause_to_type_id(c, f.n)]++;
    g.adj.reserve(type_mult.size() * 3);
    for (const auto& [tid, mult] : type_mult) {
        clause c = type_id_to_clause(tid, f.n);
        std::uint32_t a = literal_graph::literal_code(c.lit[0]);
        std::uint32_t b = literal_graph::literal_code(c.lit[1]);
        std::uint32_t d = literal_graph::literal_code(c.lit[2]);
        g.adj[literal_graph::pair_key(a, b)].emplace_back(d, mult);
        g.adj[literal_graph::pair_key(a, d)].emplace_back(b, mult);
        g.adj[literal_graph::pair_key(b, d)].emplace_back(a, mult);
    }
    return g;
}

namespace {

// kappa of the simple graph: count wedges per right pair, then C(cnt, 2).
// Dense tables are keyed by lo * 2n + hi over literal codes.
std::uint64_t kappa_wedges(const literal_graph& g, bool parallel) {
    std::vector<std::vector<std::uint32_t>> lefts;
    lefts.reserve(g.adj.size());
    for (const auto& [key, rights] : g.adj) {
        (void)key;
        std::vector<std::uint32_t> r;
        r.reserve(rights.size());
        for (const auto& [code, mult] : rights) {
            (void)mult;
            r.push_back(code);
        }
        std::sort(r.begin(), r.end());
        lefts.push_back(std::move(r));
    }

    const std::uint64_t L = 2 * static_cast<std::uint64_t>(g.n);
    const std::uint64_t table = L * L;
    const bool dense = table <= (1u << 22);

    std::uint64_t total = 0;
    if (dense) {
        std::vector<std::uint64_t> counts(table, 0);
        if (parallel) {
#pragma omp parallel
            {
                std::vector<std::uint64_t> local(table, 0);
#pragma omp for schedule(dynamic, 256) nowait
                for (long long i = 0; i < static_cast<long long>(lefts.size()); ++i) {
                    const auto& r = lefts[static_cast<std::size_t>(i)];
                    for (std::size_t a = 0; a < r.size(); ++a)
                        for (std::size_t b = a + 1; b < r.size(); ++b)
                            local[r[a] * L + r[b]]++;
                }
#pragma omp critical
                for (std::uint64_t i = 0; i < table; ++i) counts[i] += local[i];
            }
        } else {
            for (const auto& r : lefts)
                for (std::size_t a = 0; a < r.size(); ++a)
                    for (std::size_t b = a + 1; b < r.size(); ++b)
                        counts[r[a] * L + r[b]]++;
        }
        for (std::uint64_t i = 0; i < table; ++i) total += pairs2(counts[i]);
    } else {
        std::unordered_map<std::uint64_t, std::uint64_t> counts;
        for (const auto& r : lefts)
            for (std::size_t a = 0; a < r.size(); ++a)
                for (std::size_t b = a + 1; b < r.size(); ++b)
                    counts[r[a] * L + r[b]]++;
        for (const auto& [key, c] : counts) {
            (void)key;
            total += pairs2(c);
        }
    }
    return total;
}

} // namespace

std::uint64_t kappa(const instance& f) {
    return kappa_wedges(build_literal_graph(deduplicate(f)), true);
}

std::uint64_t kappa_serial(const instance& f) {
    return kappa_wedges(build_literal_graph(deduplicate(f)), false);
}

std::uint64_t kappa_multigraph(const instance& f) {
    using u128 = unsigned __int128;
    literal_graph g = build_literal_graph(f);
    // per right pair track W = sum of wedge weights and W2 = sum of squares;
    // the multigraph count is sum (W^2 - W2)/2
    std::unordered_map<std::uint64_t, std::pair<std::uint64_t, u128>> acc;
    for (const auto& [key, rights] : g.adj) {
        (void)key;
        for (std::size_t a = 0; a < rights.size(); ++a)
            for (std::size_t b = a + 1; b < rights.size(); ++b) {
                std::uint32_t x = rights[a].first, y = rights[b].first;
                std::uint64_t w = static_cast<std::uint64_t>(rights[a].second) * rights[b].second;
                auto& slot = acc[literal_graph::pair_key(std::min(x, y), std::max(x, y))];
                slot.first += w;
                slot.second += static_cast<u128>(w) * w;
            }
    }
    u128 total = 0;
    for (const auto& [key, wv] : acc) {
        (void)key;
        total += (static_cast<u128>(wv.first) * wv.first - wv.second) / 2;
    }
    return static_cast<std::uint64_t>(total);
}

namespace {

using lset = std::array<std::uint32_t, 3>;

lset to_codes(const clause& c) {
    lset s{literal_graph::literal_code(c.lit[0]), literal_graph::literal_code(c.lit[1]),
           literal_graph::literal_code(c.lit[2])};
    std::sort(s.begin(), s.end());
    return s;
}

std::vector<std::uint32_t> inter(const lset& a, const lset& b) {
    std::vector<std::uint32_t> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

std::vector<std::uint32_t> diff(const lset& a, const lset& b) {
    std::vector<std::uint32_t> out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

bool equals_sorted(const lset& a, std::vector<std::uint32_t> v) {
    std::sort(v.begin(), v.end());
    return v.size() == 3 && a[0] == v[0] && a[1] == v[1] && a[2] == v[2];
}

// c1={x,y,g} c2={x,y,h} c3={z,w,g} c4={z,w,h}: two disjoint literal pairs
// seeing the same two third literals
bool match_split(const lset& c1, const lset& c2, const lset& c3, const lset& c4) {
    if (!inter(c1, c4).empty()) return false;
    if (inter(c1, c2).size() != 2) return false;
    if (inter(c2, c4).size() != 1) return false;
    auto left = diff(c1, c2);
    auto right = diff(c4, c2);
    left.insert(left.end(), right.begin(), right.end());
    return equals_sorted(c3, std::move(left));
}

// c1={w,p,g} c2={w,p,q} c3={w,g,d} c4={w,q,d}: all four clauses through one
// common literal w
bool match_star(const lset& c1, const lset& c2, const lset& c3, const lset& c4) {
    auto w = inter(c1, c4);
    if (w.size() != 1) return false;
    if (!std::binary_search(c2.begin(), c2.end(), w[0])) return false;
    if (inter(c1, c2).size() != 2) return false;
    if (inter(c2, c4).size() != 2) return false;
    auto rest = diff(c1, c2);
    auto rest2 = diff(c4, c2);
    rest.insert(rest.end(), rest2.begin(), rest2.end());
    rest.push_back(w[0]);
    return equals_sorted(c3, std::move(rest));
}

} // namespace

quad_case classify_four_clauses(const std::array<clause, 4>& quad) {
    std::array<lset, 4> c;
    for (std::size_t i = 0; i < 4; ++i) c[i] = to_codes(quad[i]);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = i + 1; j < 4; ++j)
            if (c[i] == c[j]) return quad_case::none;

    bool split = false, star = false;
    std::array<int, 4> idx{0, 1, 2, 3};
    do {
        const lset& a = c[static_cast<std::size_t>(idx[0])];
        const lset& b = c[static_cast<std::size_t>(idx[1])];
        const lset& d = c[static_cast<std::size_t>(idx[2])];
        const lset& e = c[static_cast<std::size_t>(idx[3])];
        if (match_split(a, b, d, e)) split = true;
        if (match_star(a, b, d, e)) star = true;
    } while (std::next_permutation(idx.begin(), idx.end()));

    if (split && star) throw std::logic_error("four-clause classifier matched both configurations");
    if (split) return quad_case::one;
    if (star) return quad_case::two;
    return quad_case::none;
}

std::uint64_t count_k22_generic(const std::array<clause, 4>& quad) {
    std::map<std::uint64_t, std::set<std::uint32_t>> adj;
    for (const auto& cl : quad) {
        std::uint32_t a = literal_graph::literal_code(cl.lit[0]);
        std::uint32_t b = literal_graph::literal_code(cl.lit[1]);
        std::uint32_t d = literal_graph::literal_code(cl.lit[2]);
        adj[literal_graph::pair_key(a, b)].insert(d);
        adj[literal_graph::pair_key(a, d)].insert(b);
        adj[literal_graph::pair_key(b, d)].insert(a);
    }
    std::vector<const std::set<std::uint32_t>*> lefts;
    for (const auto& [key, rights] : adj) {
        (void)key;
        lefts.push_back(&rights);
    }
    std::uint64_t total = 0;
    for (std::size_t i = 0; i < lefts.size(); ++i)
        for (std::size_t j = i + 1; j < lefts.size(); ++j) {
            std::vector<std::uint32_t> common;
            std::set_intersection(lefts[i]->begin(), lefts[i]->end(), lefts[j]->begin(),
                                  lefts[j]->end(), std::back_inserter(common));
            total += pairs2(common.size());
        }
    return total;
}

kappa_bounds_t kappa_bounds(int n, std::uint64_t m, std::uint64_t m_tilde) {
    bigint n2 = bigint(n) * n;
    bigint n4 = n2 * n2;
    bigint n6 = n4 * n2;
    bigint mm = m;
    bigint t = m_tilde;
    kappa_bounds_t b;
    b.expectation_upper = ratio(81 * ipow(mm, 4), 64 * n6) + ratio(729 * ipow(mm, 3), 32 * n4);
    b.universal_lower = ratio(81 * ipow(t, 4), 64 * n6) - ratio(27 * ipow(t, 3), 8 * n4);
    b.sat_lower = ratio(82 * ipow(t, 4), 64 * n6) - ratio(123 * ipow(t, 3), 16 * n4);
    b.universal_vacuous = b.universal_lower <= 0;
    b.sat_vacuous = b.sat_lower <= 0;
    return b;
}

kappa_terms_t kappa_expectation_terms(int n) {
    if (n < 10) throw std::domain_error("kappa expectation terms need n >= 10");
    bigint M = clause_type_count(n);
    kappa_terms_t t;
    t.p1_upper = rational(24) * ratio(9, M) * ratio(1, M) * ratio(1, 4);
    t.p2_upper = rational(6) * ratio(12 * binom2(bigint(n - 1)), M) * ratio(4, M) * ratio(1, M);
    return t;
}

moment_bound_t tilde_m_moment_bound(int n, std::uint64_t m) {
    moment_bound_t r;
    bigint mm = m;
    bigint n2 = bigint(n) * n;
    r.lower = rational(ipow(mm, 4)) - ratio(125, 6) * rational(ipow(mm, 3) * n2);
    r.in_regime = ipow(mm, 2) <= 10 * ipow(bigint(n), 5);
    return r;
}

std::optional<certificate> refute_by_xi(const instance& f) {
    std::uint64_t x = xi(f);
    rational thr = xi_sat_threshold(f.n, f.clauses.size());
    if (rational(x) < thr) {
        certificate c;
        c.verdict = "UNSAT";
        c.statistic = "xi";
        c.value = x;
        c.threshold = thr;
        c.m_tilde = distinct_types(f);
        return c;
    }
    return std::nullopt;
}

std::optional<certificate> refute_by_kappa(const instance& f) {
    instance d = deduplicate(f);
    std::uint64_t value = kappa(d);
    kappa_bounds_t b = kappa_bounds(f.n, f.clauses.size(), d.clauses.size());
    if (rational(value) < b.sat_lower) {
        certificate c;
        c.verdict = "UNSAT";
        c.statistic = "kappa";
        c.value = value;
        c.threshold = b.sat_lower;
        c.m_tilde = d.clauses.size();
        return c;
    }
    return std::nullopt;
}

std::string certificate_to_json(const std::optional<certificate>& cert) {
    nlohmann::ordered_json j;
    if (!cert) {
        j["found"] = false;
        j["verdict"] = "UNKNOWN";
        return j.dump(2);
    }
    j["found"] = true;
    j["verdict"] = cert->verdict;
    j["statistic"] = cert->statistic;
    j["value"] = cert->value;
    if (cert->threshold) j["threshold"] = to_fraction_string(*cert->threshold);
    j["m_tilde"] = cert->m_tilde;
    if (cert->witness) {
        std::string bits;
        for (bool b : cert->witness->bits) bits.push_back(b ? '1' : '0');
        j["witness"] = bits;
    }
    return j.dump(2);
}

} // namespace ksat
