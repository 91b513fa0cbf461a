#include "ksat/solver.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace ksat {

namespace {

struct clause_masks {
    std::vector<std::uint32_t> mask;    // variable bits, variable v at bit n - v
    std::vector<std::uint32_t> pattern; // falsifying values: bit set iff literal negated
};

clause_masks build_masks(const instance& f, int max_n) {
    if (f.n < 1 || f.n > max_n) throw std::invalid_argument("exhaustive solver: n out of range");
    clause_masks cm;
    cm.mask.reserve(f.clauses.size());
    cm.pattern.reserve(f.clauses.size());
    for (const auto& c : f.clauses) {
        std::uint32_t m = 0, p = 0;
        for (const auto& l : c.lit) {
            std::uint32_t bit = 1u << (f.n - l.var);
            m |= bit;
            if (l.neg) p |= bit;
        }
        cm.mask.push_back(m);
        cm.pattern.push_back(p);
    }
    return cm;
}

bool falsified(const clause_masks& cm, std::uint32_t a) {
    for (std::size_t i = 0; i < cm.mask.size(); ++i)
        if ((a & cm.mask[i]) == cm.pattern[i]) return true;
    return false;
}

assignment decode(std::uint32_t a, int n) {
    assignment w;
    w.bits.resize(static_cast<std::size_t>(n));
    for (int v = 1; v <= n; ++v) w.bits[static_cast<std::size_t>(v) - 1] = (a >> (n - v)) & 1u;
    return w;
}

const std::uint64_t not_found = ~std::uint64_t{0};

} // namespace

solve_result brute_force_serial(const instance& f) {
    clause_masks cm = build_masks(f, 30);
    const std::uint64_t space = std::uint64_t{1} << f.n;
    solve_result r;
    for (std::uint64_t a = 0; a < space; ++a) {
        r.decisions++;
        if (!falsified(cm, static_cast<std::uint32_t>(a))) {
            r.v = verdict::sat;
            r.witness = decode(static_cast<std::uint32_t>(a), f.n);
            return r;
        }
    }
    r.v = verdict::unsat;
    return r;
}

solve_result brute_force(const instance& f) {
    clause_masks cm = build_masks(f, 30);
    const std::uint64_t space = std::uint64_t{1} << f.n;
    const std::uint64_t block = std::uint64_t{1} << 16;
    solve_result r;
    for (std::uint64_t lo = 0; lo < space; lo += block) {
        const std::uint64_t hi = std::min(space, lo + block);
        std::uint64_t first = not_found;
#pragma omp parallel for reduction(min : first) schedule(static)
        for (long long a = static_cast<long long>(lo); a < static_cast<long long>(hi); ++a)
            if (!falsified(cm, static_cast<std::uint32_t>(a)))
                first = std::min<std::uint64_t>(first, static_cast<std::uint64_t>(a));
        if (first != not_found) {
            r.decisions += first + 1 - lo;
            r.v = verdict::sat;
            r.witness = decode(static_cast<std::uint32_t>(first), f.n);
            return r;
        }
        r.decisions += hi - lo;
    }
    r.v = verdict::unsat;
    return r;
}

namespace {

struct dpll_state {
    const instance& f;
    std::vector<std::int8_t> val;                             // -1 free, 0 false, 1 true
    std::vector<std::vector<std::pair<std::size_t, bool>>> occ; // var -> (clause, negated)
    std::vector<int> true_lits;   // per clause
    std::vector<int> free_lits;   // per clause
    std::vector<int> trail;
    std::uint64_t decisions = 0;
    std::uint64_t propagations = 0;

    explicit dpll_state(const instance& inst) : f(inst) {
        val.assign(static_cast<std::size_t>(f.n) + 1, -1);
        occ.resize(static_cast<std::size_t>(f.n) + 1);
        true_lits.assign(f.clauses.size(), 0);
        free_lits.assign(f.clauses.size(), 3);
        for (std::size_t j = 0; j < f.clauses.size(); ++j)
            for (const auto& l : f.clauses[j].lit)
                occ[static_cast<std::size_t>(l.var)].emplace_back(j, l.neg);
    }

    void assign(int var, bool value) {
        val[static_cast<std::size_t>(var)] = value ? 1 : 0;
        trail.push_back(var);
        for (const auto& [j, neg] : occ[static_cast<std::size_t>(var)]) {
            free_lits[j]--;
            if (value != neg) true_lits[j]++;
        }
    }

    void undo_to(std::size_t mark) {
        while (trail.size() > mark) {
            int var = trail.back();
            trail.pop_back();
            bool value = val[static_cast<std::size_t>(var)] == 1;
            val[static_cast<std::size_t>(var)] = -1;
            for (const auto& [j, neg] : occ[static_cast<std::size_t>(var)]) {
                free_lits[j]++;
                if (value != neg) true_lits[j]--;
            }
        }
    }

    // returns false on conflict; applies unit and pure-literal rules until
    // fixpoint
    bool propagate() {
        for (;;) {
            bool changed = false;
            for (std::size_t j = 0; j < f.clauses.size(); ++j) {
                if (true_lits[j] > 0) continue;
                if (free_lits[j] == 0) return false;
                if (free_lits[j] == 1) {
                    for (const auto& l : f.clauses[j].lit)
                        if (val[static_cast<std::size_t>(l.var)] < 0) {
                            assign(l.var, !l.neg);
                            propagations++;
                            changed = true;
                            break;
                        }
                }
            }
            if (changed) continue;

            for (int v = 1; v <= f.n && !changed; ++v) {
                if (val[static_cast<std::size_t>(v)] >= 0) continue;
                int pos = 0, neg = 0;
                for (const auto& [j, negated] : occ[static_cast<std::size_t>(v)]) {
                    if (true_lits[j] > 0) continue;
                    if (negated) neg++;
                    else pos++;
                }
                if (pos + neg == 0) continue;
                if (neg == 0) {
                    assign(v, true);
                    propagations++;
                    changed = true;
                } else if (pos == 0) {
                    assign(v, false);
                    propagations++;
                    changed = true;
                }
            }
            if (!changed) return true;
        }
    }

    bool all_satisfied() const {
        for (std::size_t j = 0; j < f.clauses.size(); ++j)
            if (true_lits[j] == 0) return false;
        return true;
    }

    int pick_branch_var() const {
        int best = 0, best_count = -1;
        for (int v = 1; v <= f.n; ++v) {
            if (val[static_cast<std::size_t>(v)] >= 0) continue;
            int count = 0;
            for (const auto& [j, neg] : occ[static_cast<std::size_t>(v)]) {
                (void)neg;
                if (true_lits[j] == 0) count++;
            }
            if (count > best_count) {
                best_count = count;
                best = v;
            }
        }
        return best;
    }

    bool search() {
        std::size_t mark = trail.size();
        if (!propagate()) {
            undo_to(mark);
            return false;
        }
        if (all_satisfied()) return true;
        int v = pick_branch_var();
        for (bool value : {true, false}) {
            decisions++;
            std::size_t inner = trail.size();
            assign(v, value);
            if (search()) return true;
            undo_to(inner);
        }
        undo_to(mark);
        return false;
    }
};

} // namespace

solve_result dpll(const instance& f) {
    dpll_state st(f);
    solve_result r;
    r.decisions = 0;
    if (st.search()) {
        r.v = verdict::sat;
        assignment w;
        w.bits.resize(static_cast<std::size_t>(f.n));
        for (int v = 1; v <= f.n; ++v)
            w.bits[static_cast<std::size_t>(v) - 1] = st.val[static_cast<std::size_t>(v)] == 1;
        if (!evaluate(f, w).satisfied) throw std::logic_error("dpll produced a bad witness");
        r.witness = std::move(w);
    } else {
        r.v = verdict::unsat;
    }
    r.decisions = st.decisions;
    r.propagations = st.propagations;
    return r;
}

std::uint64_t count_models_serial(const instance& f) {
    clause_masks cm = build_masks(f, 26);
    const std::uint64_t space = std::uint64_t{1} << f.n;
    std::uint64_t count = 0;
    for (std::uint64_t a = 0; a < space; ++a)
        if (!falsified(cm, static_cast<std::uint32_t>(a))) count++;
    return count;
}

std::uint64_t count_models(const instance& f) {
    clause_masks cm = build_masks(f, 26);
    const std::uint64_t space = std::uint64_t{1} << f.n;
    std::uint64_t count = 0;
#pragma omp parallel for reduction(+ : count) schedule(static)
    for (long long a = 0; a < static_cast<long long>(space); ++a)
        if (!falsified(cm, static_cast<std::uint32_t>(a))) count++;
    return count;
}

} // namespace ksat
