#pragma once

#include <cmath>
#include <span>
#include <stdexcept>

namespace fairsched {

struct Summary {
    double mean = 0.0;
    double stddev = 0.0;  // sample std, n-1 denominator
    double ci_low = 0.0;  // mean -/+ 2*std/sqrt(n), the two-sigma convention
    double ci_high = 0.0;
    size_t count = 0;
};

inline Summary summarize(std::span<const double> samples) {
    if (samples.size() < 2)
        throw std::invalid_argument("summarize: need at least 2 samples");
    Summary s;
    s.count = samples.size();
    for (double v : samples) s.mean += v;
    s.mean /= static_cast<double>(s.count);
    double ss = 0.0;
    for (double v : samples) ss += (v - s.mean) * (v - s.mean);
    s.stddev = std::sqrt(ss / static_cast<double>(s.count - 1));
    double half = 2.0 * s.stddev / std::sqrt(static_cast<double>(s.count));
    s.ci_low = s.mean - half;
    s.ci_high = s.mean + half;
    return s;
}

}  // namespace fairsched
