#pragma once

#include "ksat/core.hpp"

#include <iosfwd>
#include <optional>
#include <string>

namespace ksat {

struct dimacs_file {
    instance inst;
    std::optional<assignment> planted; // from a "c planted <bits>" comment
    std::size_t skipped = 0;           // clauses dropped in lenient mode
};

// strict (default): clause count must match the header, every clause must have
// exactly three literals over distinct in-range variables.
// lenient: header mismatches are tolerated and non-conforming clauses are
// skipped (counted in .skipped) since the instance type cannot hold them.
dimacs_file read_dimacs(std::istream& in, bool strict = true);
dimacs_file read_dimacs_file(const std::string& path, bool strict = true);

void write_dimacs(std::ostream& out, const instance& f,
                  const std::optional<assignment>& planted = std::nullopt);
void write_dimacs_file(const std::string& path, const instance& f,
                       const std::optional<assignment>& planted = std::nullopt);

} // namespace ksat
