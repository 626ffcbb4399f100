#pragma once

// L-function values and Dedekind zeta Laurent data feeding the main terms:
// L(1, chi) by two independent routes, L'(1, chi_D), and the residue /
// constant-term pair (gamma_{-1}(K), gamma_0(K)) at s = 1.

#include <complex>

#include "rieszsum/arith.hpp"
#include "rieszsum/characters.hpp"

namespace rieszsum::lfunc {

enum class LaurentSource { series, class_number_fixture };

// Leading Laurent data of zeta_K at s = 1: residue gamma_{-1}(K) and
// constant term gamma_0(K). Fixture-sourced values also carry the class
// number data they were built from (h, regulator, w, r1, r2, disc);
// fixtures provide the residue only (const_term is NaN there).
struct LaurentData {
    double residue = 0.0;
    double const_term = 0.0;
    LaurentSource source = LaurentSource::series;
    long h = 0;
    double regulator = 0.0;
    int w = 0;
    int r1 = 0;
    int r2 = 0;
    long disc = 0;
};

// sum_{n=1}^{q-1} conj(chi(n)) log(2 sin(pi n / q)); building block for the
// finite-sum route to L(1, chi) and for the secondary main terms.
std::complex<double> logsin_character_sum(const chars::DirichletCharacter& chi);
double logsin_character_sum(const chars::KroneckerCharacter& chi);

// Finite-sum route: L(1, chi) = -(G(chi)/q) sum conj(chi(n)) log(2 sin(pi n/q)),
// valid for chi even, nonprincipal, primitive. Rejects odd or principal chi.
std::complex<double> L1_logsin(const chars::DirichletCharacter& chi);
double L1_logsin(const chars::KroneckerCharacter& chi);

// Series route: sum chi(n)/n with the tail over full character periods
// evaluated in closed form through the digamma function. Absolute error
// is limited only by digamma accuracy (far below 1e-9).
std::complex<double> L1_series(const chars::DirichletCharacter& chi);
double L1_series(const chars::KroneckerCharacter& chi);

// L'(1, chi_D) = -sum chi_D(n) log(n)/n, tail by Euler-Maclaurin over full
// periods (the divergent pieces cancel because the period sums vanish).
double Lprime1_series(const chars::KroneckerCharacter& chi);

// Laurent data for the field: (1, gamma) for Q; for real quadratic K,
// residue = L(1, chi_D) and const_term = gamma * L(1, chi_D) + L'(1, chi_D).
LaurentData laurent_data(const arith::FieldContext& ctx);

// Class-number route for the residue (cross-check only): for D in
// {5, 8, 12, 13}, residue = 2^{r1} (2 pi)^{r2} h Reg / (w sqrt(D)).
LaurentData class_number_fixture(long D);

// Fully populated real-quadratic field context (gammas from the series route).
arith::FieldContext quadratic_field_context(long D);

}  // namespace rieszsum::lfunc
