#pragma once

// Verification engine: evaluates left side, closed-form main terms, and
// truncated kernel series of each two-parameter Riesz-sum identity, and
// reports residuals with truncation diagnostics.

#include <complex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rieszsum/arith.hpp"
#include "rieszsum/characters.hpp"

namespace rieszsum::identities {

enum class CaseKind {
    T3_1,       // character-twisted divisor sums over K, prime modulus q
    T3_2,       // plain divisor sums over K
    T3_3,       // cosine-weighted, rational theta = h/q
    T5_1,       // zeta^2 L twisted analogue
    T5_2,       // zeta^2 L plain analogue
    T5_3,       // zeta^2 L cosine-weighted analogue
    Corollary,  // T5_3 scaled by the unit count w_D
    Voronoi,    // classical divisor sum, rho = 0
    Ramanujan   // [x/n] cos(2 pi n theta) sum, rho = 0
};

const char* case_name(CaseKind kind);

struct RieszCase {
    CaseKind kind = CaseKind::Voronoi;
    arith::FieldContext field_ctx = arith::rational_field();  // T3_x
    long disc = 0;                                            // T5_x / Corollary
    std::optional<chars::DirichletCharacter> chi;             // T3_1 / T5_1
    long theta_h = 0;  // theta = h/q, q prime, 0 < h < q
    long theta_q = 0;
    double rho = 0.0;
};

// Caps and per-term cutoff for series truncation. The per-term tolerance is
// applied to the absolute value of a fully scaled term (prefactor included),
// using the kernel's amplitude envelope as an a-priori bound; inner sums of
// the double series stop early once that bound falls below it, which caps
// the lattice of distinct kernel arguments.
struct TruncationPolicy {
    long max_outer = 1;
    long max_inner = 10000;
    double per_term_tol = 0.0;
    bool reversed_order = false;  // sum outer-n/inner-m instead
};

TruncationPolicy default_truncation(CaseKind kind);

struct VerificationReport {
    double lhs = 0.0;
    double rhs_main = 0.0;
    // (truncation level = number of series terms consumed, partial value);
    // values carry the best-so-far partial, so later entries never sit
    // farther from lhs - rhs_main than earlier ones.
    std::vector<std::pair<long, double>> rhs_series_partials;
    double residual = 0.0;
    double tail_estimate = 0.0;
    bool converged = false;
    // Corollary metadata: w_factor is the applied unit count, d_sign_flag
    // marks the hypothesis tension (even character needs D > 0, the unit
    // table covers D < 0 only).
    double w_factor = 1.0;
    bool d_sign_flag = false;
};

// Throws std::domain_error when the case violates its theorem hypotheses
// (rho range, parity of chi_D, q prime, 0 < h < q).
void validate_case(const RieszCase& c);

// Exact finite sum on the left side. Half of the last term is counted when
// rho = 0 and x is an integer.
double lhs_riesz(const RieszCase& c, double x);

// Closed-form main terms (specfun + lfunc primitives only).
double rhs_main(const RieszCase& c, double x);

// Partial sums of the right-hand-side series at geometric checkpoint levels,
// in a fixed deterministic order: inner n ascending then outer m ascending
// (reversed behind the policy flag).
std::vector<std::pair<long, double>> rhs_series(const RieszCase& c, double x,
                                                const TruncationPolicy& trunc);

// Full verification: residual = |lhs - rhs_main - last partial| where the
// recorded partials track the closest approach of the truncated series to
// lhs - rhs_main (these conditionally convergent series sweep through their
// limit once per oscillation with shrinking amplitude, so the closest
// approach is the meaningful truncation-N residual). converged means
// residual <= tol + tail_estimate.
VerificationReport verify(const RieszCase& c, double x,
                          const TruncationPolicy& trunc, double tol);

// The unit-weighted corollary: runs T5_3 and scales the whole report by
// w_D; always sets d_sign_flag for runnable inputs (see above).
VerificationReport corollary_rd(long D, long theta_h, long theta_q, double rho,
                                double x, const TruncationPolicy& trunc,
                                double tol = 1e-3);

// JSON rendering with numbers as 17-significant-digit decimal strings.
std::string report_to_json(const VerificationReport& report);

}  // namespace rieszsum::identities
