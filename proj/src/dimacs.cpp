#include "ksat/dimacs.hpp"

#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace ksat {

namespace {

std::optional<assignment> parse_planted(const std::string& line) {
    // "c planted 0101..."
    std::istringstream ss(line);
    std::string c, tag, bits;
    if (!(ss >> c >> tag >> bits) || tag != "planted") return std::nullopt;
    assignment a;
    a.bits.reserve(bits.size());
    for (char ch : bits) {
        if (ch != '0' && ch != '1') return std::nullopt;
        a.bits.push_back(ch == '1');
    }
    return a;
}

} // namespace

dimacs_file read_dimacs(std::istream& in, bool strict) {
    dimacs_file out;
    long long n = -1, m = -1;
    std::string line;
    std::vector<long long> buf;
    auto flush_clause = [&](std::vector<long long>& lits) {
        bool ok = lits.size() == 3;
        if (ok) {
            long long v0 = std::llabs(lits[0]), v1 = std::llabs(lits[1]), v2 = std::llabs(lits[2]);
            ok = v0 != v1 && v1 != v2 && v0 != v2 && v0 >= 1 && v1 >= 1 && v2 >= 1
                 && v0 <= n && v1 <= n && v2 <= n;
        }
        if (!ok) {
            if (strict) throw std::runtime_error("dimacs: clause is not a 3-clause over distinct in-range variables");
            ++out.skipped;
        } else {
            out.inst.clauses.push_back(canonicalize(
                literal{static_cast<int>(std::llabs(lits[0])), lits[0] < 0},
                literal{static_cast<int>(std::llabs(lits[1])), lits[1] < 0},
                literal{static_cast<int>(std::llabs(lits[2])), lits[2] < 0}));
        }
        lits.clear();
    };

    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == 'c') {
            if (auto w = parse_planted(line)) out.planted = std::move(*w);
            continue;
        }
        if (line[0] == 'p') {
            std::istringstream ss(line);
            std::string p, cnf;
            if (!(ss >> p >> cnf >> n >> m) || cnf != "cnf" || n < 0 || m < 0)
                throw std::runtime_error("dimacs: malformed problem line");
            out.inst.n = static_cast<int>(n);
            continue;
        }
        if (n < 0) throw std::runtime_error("dimacs: clause before problem line");
        std::istringstream ss(line);
        long long v;
        while (ss >> v) {
            if (v == 0) flush_clause(buf);
            else buf.push_back(v);
        }
    }
    if (!buf.empty()) {
        if (strict) throw std::runtime_error("dimacs: trailing literals without terminating 0");
        flush_clause(buf);
    }
    if (n < 0) throw std::runtime_error("dimacs: missing problem line");
    if (strict && static_cast<long long>(out.inst.clauses.size()) != m)
        throw std::runtime_error("dimacs: clause count does not match header");
    if (out.planted && static_cast<long long>(out.planted->bits.size()) != n)
        throw std::runtime_error("dimacs: planted witness length does not match n");
    return out;
}

dimacs_file read_dimacs_file(const std::string& path, bool strict) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("dimacs: cannot open " + path);
    return read_dimacs(in, strict);
}

void write_dimacs(std::ostream& out, const instance& f, const std::optional<assignment>& planted) {
    if (planted) {
        out << "c planted ";
        for (bool b : planted->bits) out << (b ? '1' : '0');
        out << '\n';
    }
    out << "p cnf " << f.n << ' ' << f.clauses.size() << '\n';
    for (const clause& c : f.clauses) {
        for (const literal& l : c.lit) out << (l.neg ? -l.var : l.var) << ' ';
        out << "0\n";
    }
}

void write_dimacs_file(const std::string& path, const instance& f, const std::optional<assignment>& planted) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("dimacs: cannot open " + path);
    write_dimacs(out, f, planted);
}

} // namespace ksat
