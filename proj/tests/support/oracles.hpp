#pragma once

// Reference implementations used only by the test suites. Each routine is
// built on a different algorithm than the library counterpart it checks:
// Spouge's gamma approximation, integral representations for the Bessel
// functions, Euler-Maclaurin tails for zeta values, and window-averaged
// partial sums for L-series.

#include <complex>
#include <vector>

#include "rieszsum/characters.hpp"

namespace oracles {

std::complex<double> log_gamma(std::complex<double> z);
double log_gamma(double x);

// Composite Gauss-Legendre quadrature of the standard integral
// representations; accurate to ~1e-12 for nu in [0, 5], x in [0.1, 60].
double bessel_J(double nu, double x);
double bessel_Y(double nu, double x);
double bessel_K(double nu, double x);

double euler_gamma();

// Euler-Maclaurin zeta and Hurwitz zeta for real s != 1.
double zeta(double s);
double hurwitz_zeta(double s, double a);

// L(s, chi) assembled from Hurwitz zeta values, s != 1.
std::complex<double> dirichlet_L(double s, const rieszsum::chars::DirichletCharacter& chi);
double kronecker_L(double s, const rieszsum::chars::KroneckerCharacter& chi);

// L(1, chi) and L'(1, chi) from plain partial sums averaged over two full
// period windows, which cancels the oscillating 1/N tail.
std::complex<double> L1_averaged(const rieszsum::chars::DirichletCharacter& chi);
double L1_averaged(const rieszsum::chars::KroneckerCharacter& chi);
double Lprime1_averaged(const rieszsum::chars::KroneckerCharacter& chi);

long divisor_count(long n);
long divisor_sum_brute(long n);

// Number of integer pairs (a, b) with a^2 + b^2 = n.
long lattice_r2(long n);

// Ideal-count coefficient by prime splitting: split primes contribute
// e + 1, inert primes 1 on even exponents and 0 on odd, ramified primes 1.
long f_K_split(long D, long n);

}  // namespace oracles
