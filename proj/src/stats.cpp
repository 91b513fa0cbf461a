#include "ksat/stats.hpp"

#include <boost/math/distributions/chi_squared.hpp>

#include <cmath>

namespace ksat {

double chi_square_pvalue(double stat, std::uint64_t df) {
    if (stat <= 0.0) return 1.0;
    boost::math::chi_squared dist(static_cast<double>(df));
    return boost::math::cdf(boost::math::complement(dist, stat));
}

interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z) {
    if (trials == 0) return {0.0, 1.0};
    double nt = static_cast<double>(trials);
    double p = static_cast<double>(successes) / nt;
    double z2 = z * z;
    double denom = 1.0 + z2 / nt;
    double center = (p + z2 / (2.0 * nt)) / denom;
    double half = z * std::sqrt(p * (1.0 - p) / nt + z2 / (4.0 * nt * nt)) / denom;
    return {center - half, center + half};
}

} // namespace ksat
