#pragma once

#include <vector>

#include "rieszsum/identities.hpp"

namespace rieszsum::growth {

// Result of a log-log growth study of the identity error LHS - main.
struct ExponentFit {
    std::vector<double> grid;
    std::vector<double> errors;
    double fitted_slope = 0.0;
    // Exponent predicted for this parameter range; NaN when rho sits in the
    // gap where the identity holds but no error bound is claimed.
    double theory_slope = 0.0;
    // sup |error| / x^(theory_slope + 0.1) over the grid; NaN alongside
    // theory_slope.
    double normalized_sup = 0.0;
};

// Predicted error exponent for the case, or NaN outside the proven range.
double theory_exponent(const identities::RieszCase& c);

// LHS(x) minus the closed-form main term. Only the cosine-weighted cases
// carry an error-term prediction, so other kinds are rejected.
double error_term(const identities::RieszCase& c, double x);

// Least-squares slope of log|error| against log x (zero errors masked),
// plus the normalized sup statistic. Grid must be strictly increasing with
// at least 8 points; throws DegenerateGrid when more than half the errors
// vanish.
ExponentFit fit_exponent(const identities::RieszCase& c,
                         const std::vector<double>& x_grid);

// The fitting core on a precomputed error sequence (same validation and
// masking rules); theory_slope may be NaN, which propagates to
// normalized_sup.
ExponentFit fit_error_sequence(const std::vector<double>& x_grid,
                               const std::vector<double>& errors,
                               double theory_slope);

// 24 half-integer points, geometrically spaced over [20, 200].
std::vector<double> default_error_grid();

// True when the running sup of |error| / x^(theory+0.1) stops growing over
// the top half of the grid, the testable form of the big-O bound.
bool normalized_sup_nonincreasing(const ExponentFit& fit);

}  // namespace rieszsum::growth
