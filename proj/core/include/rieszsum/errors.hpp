#pragma once

#include <stdexcept>
#include <string>

namespace rieszsum {

// Pole of gamma / digamma at a nonpositive integer argument.
struct PoleError : std::domain_error {
    explicit PoleError(const std::string& what) : std::domain_error(what) {}
};

// A truncated sum or quadrature failed to settle within its cap.
// Carries the best partial value seen so callers can still inspect it.
struct NonConvergence : std::runtime_error {
    double best_partial;
    double tail_estimate;
    long level;

    NonConvergence(const std::string& what, double best, double tail, long lvl)
        : std::runtime_error(what), best_partial(best), tail_estimate(tail), level(lvl) {}
};

// A cross-check between two evaluation routes disagreed beyond its bar.
struct LowAccuracy : std::runtime_error {
    double discrepancy;

    LowAccuracy(const std::string& what, double disc)
        : std::runtime_error(what), discrepancy(disc) {}
};

// An x-grid unusable for exponent fitting (too few nonvanishing errors).
struct DegenerateGrid : std::invalid_argument {
    explicit DegenerateGrid(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace rieszsum
