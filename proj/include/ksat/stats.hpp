#pragma once

#include <cstdint>

namespace ksat {

// survival probability P[X >= stat] for a chi-squared with df degrees of freedom
double chi_square_pvalue(double stat, std::uint64_t df);

struct interval {
    double low = 0.0;
    double high = 0.0;
    double half_width() const { return (high - low) / 2.0; }
};

// Wilson score interval for a binomial proportion (z ~ 1.96 for 95%)
interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z = 1.96);

} // namespace ksat
