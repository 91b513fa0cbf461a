#include "ksat/hypergraph.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <numeric>
#include <set>
#include <stdexcept>

namespace ksat {

variable_hypergraph to_hypergraph(const instance& f) {
    variable_hypergraph h;
    h.n = f.n;
    h.edges.reserve(f.clauses.size());
    for (const auto& c : f.clauses) h.edges.push_back({c.lit[0].var, c.lit[1].var, c.lit[2].var});
    return h;
}

namespace {

struct dsu {
    std::vector<std::size_t> p;
    explicit dsu(std::size_t n) : p(n) { std::iota(p.begin(), p.end(), std::size_t{0}); }
    std::size_t find(std::size_t x) {
        while (p[x] != x) x = p[x] = p[p[x]];
        return x;
    }
    bool unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        p[a] = b;
        return true;
    }
};

std::vector<int> shared_vars(const std::array<int, 3>& a, const std::array<int, 3>& b) {
    std::vector<int> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

} // namespace

std::optional<std::vector<std::size_t>> find_incidence_cycle(const variable_hypergraph& h) {
    // incidence graph nodes: variables 0..n-1, hyperedges n..n+m-1; the first
    // incidence whose endpoints are already connected closes a cycle
    const std::size_t n = static_cast<std::size_t>(h.n);
    const std::size_t m = h.edges.size();
    dsu d(n + m);
    std::vector<std::vector<std::size_t>> adj(n + m);
    for (std::size_t j = 0; j < m; ++j) {
        const std::size_t enode = n + j;
        for (int v : h.edges[j]) {
            const std::size_t vnode = static_cast<std::size_t>(v) - 1;
            if (!d.unite(enode, vnode)) {
                std::vector<std::size_t> parent(n + m, n + m);
                std::deque<std::size_t> q{enode};
                parent[enode] = enode;
                while (!q.empty()) {
                    std::size_t u = q.front();
                    q.pop_front();
                    if (u == vnode) break;
                    for (std::size_t w : adj[u])
                        if (parent[w] == n + m) {
                            parent[w] = u;
                            q.push_back(w);
                        }
                }
                std::vector<std::size_t> cyc;
                for (std::size_t u = vnode;; u = parent[u]) {
                    if (u >= n) cyc.push_back(u - n);
                    if (u == enode) break;
                }
                std::reverse(cyc.begin(), cyc.end());
                return cyc;
            }
            adj[enode].push_back(vnode);
            adj[vnode].push_back(enode);
        }
    }
    return std::nullopt;
}

std::optional<assignment> leaf_elimination_solve(const instance& f) {
    const int n = f.n;
    const std::size_t m = f.clauses.size();
    std::vector<std::vector<std::size_t>> occ(static_cast<std::size_t>(n) + 1);
    std::vector<std::size_t> cnt(static_cast<std::size_t>(n) + 1, 0);
    for (std::size_t j = 0; j < m; ++j)
        for (const auto& l : f.clauses[j].lit) {
            occ[static_cast<std::size_t>(l.var)].push_back(j);
            cnt[static_cast<std::size_t>(l.var)]++;
        }

    auto private_var = [&](std::size_t j) -> int {
        for (const auto& l : f.clauses[j].lit)
            if (cnt[static_cast<std::size_t>(l.var)] == 1) return l.var;
        return 0;
    };

    std::vector<char> active(m, 1);
    std::vector<std::size_t> stack;
    for (std::size_t j = 0; j < m; ++j)
        if (private_var(j) != 0) stack.push_back(j);

    assignment a;
    a.bits.assign(static_cast<std::size_t>(n), false);
    std::size_t removed = 0;
    while (!stack.empty()) {
        std::size_t j = stack.back();
        stack.pop_back();
        if (!active[j]) continue;
        int pv = private_var(j);
        if (pv == 0) continue; // queued before its private variable was shared away
        for (const auto& l : f.clauses[j].lit)
            if (l.var == pv) a.bits[static_cast<std::size_t>(pv) - 1] = !l.neg;
        active[j] = 0;
        ++removed;
        for (const auto& l : f.clauses[j].lit) {
            std::size_t v = static_cast<std::size_t>(l.var);
            if (--cnt[v] == 1)
                for (std::size_t t : occ[v])
                    if (active[t]) {
                        stack.push_back(t);
                        break;
                    }
        }
    }
    if (removed != m) return std::nullopt;
    if (!evaluate(f, a).satisfied) throw std::logic_error("leaf elimination produced a bad witness");
    return a;
}

namespace {

// Shared DFS over Berge-path extensions: consecutive edges share exactly one
// vertex, connectors differ from the previous connector, and the two
// non-connector vertices are fresh. Disjointness from non-consecutive edges
// and pairwise-distinct connectors follow from those local rules.
struct berge_walker {
    const std::vector<std::array<int, 3>>& E;
    std::vector<std::size_t> seq;
    std::vector<int> conns;
    std::set<int> used;

    explicit berge_walker(const variable_hypergraph& h) : E(h.edges) {}

    void start(std::size_t s) {
        seq.assign(1, s);
        conns.clear();
        used = {E[s][0], E[s][1], E[s][2]};
    }

    bool try_push(std::size_t e) {
        const auto sh = shared_vars(E[e], E[seq.back()]);
        if (sh.size() != 1) return false;
        const int conn = sh[0];
        if (!conns.empty() && conn == conns.back()) return false;
        for (int v : E[e])
            if (v != conn && used.count(v)) return false;
        seq.push_back(e);
        conns.push_back(conn);
        for (int v : E[e])
            if (v != conn) used.insert(v);
        return true;
    }

    void pop() {
        const std::size_t e = seq.back();
        const int conn = conns.back();
        for (int v : E[e])
            if (v != conn) used.erase(v);
        seq.pop_back();
        conns.pop_back();
    }

    // closing edge for a cycle: shares one vertex with both ends, the third
    // vertex is fresh, and the two new connectors are new and distinct
    bool closes(std::size_t e, int& c_last, int& c_first) const {
        const auto sh_last = shared_vars(E[e], E[seq.back()]);
        if (sh_last.size() != 1) return false;
        const auto sh_first = shared_vars(E[e], E[seq.front()]);
        if (sh_first.size() != 1) return false;
        c_last = sh_last[0];
        c_first = sh_first[0];
        if (c_last == c_first) return false;
        if (c_last == conns.back() || c_first == conns.front()) return false;
        for (int v : E[e])
            if (v != c_last && v != c_first && used.count(v)) return false;
        return true;
    }
};

} // namespace

std::uint64_t count_berge_paths(const variable_hypergraph& h, int length) {
    if (length < 2) throw std::invalid_argument("path length must be at least 2");
    const std::size_t m = h.edges.size();
    std::uint64_t count = 0;
    berge_walker w(h);
    std::function<void()> extend = [&]() {
        if (w.seq.size() == static_cast<std::size_t>(length)) {
            if (w.seq.front() < w.seq.back()) ++count;
            return;
        }
        for (std::size_t e = 0; e < m; ++e)
            if (w.try_push(e)) {
                extend();
                w.pop();
            }
    };
    for (std::size_t s = 0; s < m; ++s) {
        w.start(s);
        extend();
    }
    return count;
}

std::vector<berge_cycle> enumerate_berge_cycles(const variable_hypergraph& h, int length) {
    if (length < 2) throw std::invalid_argument("cycle length must be at least 2");
    const std::size_t m = h.edges.size();
    std::vector<berge_cycle> out;

    if (length == 2) {
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = i + 1; j < m; ++j) {
                auto sh = shared_vars(h.edges[i], h.edges[j]);
                if (sh.size() >= 2) out.push_back({{i, j}, {sh[0], sh[1]}});
            }
        return out;
    }

    berge_walker w(h);
    std::function<void()> extend = [&]() {
        if (w.seq.size() == static_cast<std::size_t>(length) - 1) {
            for (std::size_t e = w.seq.front() + 1; e < m; ++e) {
                int c_last = 0, c_first = 0;
                if (!w.closes(e, c_last, c_first)) continue;
                if (w.seq[1] > e) continue; // one direction per cycle
                berge_cycle cyc;
                cyc.edges = w.seq;
                cyc.edges.push_back(e);
                cyc.vertices = w.conns;
                cyc.vertices.push_back(c_last);
                cyc.vertices.push_back(c_first);
                out.push_back(std::move(cyc));
            }
            return;
        }
        for (std::size_t e = w.seq.front() + 1; e < m; ++e)
            if (w.try_push(e)) {
                extend();
                w.pop();
            }
    };
    for (std::size_t s = 0; s < m; ++s) {
        w.start(s);
        extend();
    }
    return out;
}

std::uint64_t count_berge_cycles(const variable_hypergraph& h, int length) {
    if (length == 2) {
        const std::size_t m = h.edges.size();
        std::uint64_t count = 0;
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = i + 1; j < m; ++j)
                if (shared_vars(h.edges[i], h.edges[j]).size() >= 2) ++count;
        return count;
    }
    return enumerate_berge_cycles(h, length).size();
}

namespace {

bigint falling(const bigint& x, int j) {
    bigint r = 1;
    for (int i = 0; i < j; ++i) r *= (x - i);
    return r;
}

} // namespace

expected_counts_t expected_counts(int n, std::uint64_t m, int k) {
    if (n < 3) throw std::invalid_argument("expected_counts needs n >= 3");
    if (k < 2) throw std::invalid_argument("expected_counts needs k >= 2");
    const bigint N = binom3(bigint(n));
    const bigint mm = m;
    expected_counts_t out;

    rational ord(falling(mm, k));
    ord *= ratio(3 * binom2(bigint(n - 3)), N);
    for (int t = 3; t <= k; ++t) ord *= ratio(2 * binom2(bigint(n) - 2 * t + 1), N);
    out.ordered_path_tuples = ord;
    out.unordered_paths = ord / 2;

    if (k > 2) out.cycles[2] = ratio(binom2(mm), 1) * ratio(3 * (bigint(n) - 3) + 1, N);
    for (int l = 3; l < k; ++l) {
        rational c(falling(mm, l));
        c /= 2 * l;
        c *= ratio(3 * binom2(bigint(n - 3)), N);
        for (int t = 3; t <= l - 1; ++t) c *= ratio(2 * binom2(bigint(n) - 2 * t + 1), N);
        bigint close = 4 * (bigint(n) - 2 * l + 1);
        if (close < 0) close = 0;
        c *= ratio(close, N);
        out.cycles[l] = c;
    }

    const rational six_m_over_n(6 * mm, n);
    rational tail = ratio(2, 3) * rational(ipow(6 * mm, static_cast<unsigned>(k)), ipow(bigint(n), static_cast<unsigned>(k - 1)));
    tail += ratio(3 * mm, n) * ratio(3 * mm, n);
    rational sum = 0;
    rational pw = six_m_over_n * six_m_over_n;
    for (int l = 3; l <= k - 1; ++l) {
        pw *= six_m_over_n;
        sum += pw;
    }
    out.unsat_prob_upper = tail + sum / 6;
    return out;
}

} // namespace ksat
