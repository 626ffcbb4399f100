#pragma once

// Special functions for both sides of the identities: log-gamma, digamma,
// Euler's constant, Bessel J/Y/K, and the oscillatory kernel
// I_nu(z) = -Y_nu(z) - (2/pi) K_nu(z) with its cancellation-free small-z form.

#include <complex>

namespace rieszsum::specfun {

enum class SumMode { plain, compensated };

// Numeric policy of the evaluation engines. Working format is binary64;
// compensated summation is the default for every long accumulation.
struct Precision {
    int mantissa_bits = 53;
    SumMode sum_mode = SumMode::compensated;
    double target_abs_tol = 1e-12;
};

// Kahan compensated accumulator.
class KahanAccumulator {
  public:
    void add(double x) {
        double y = x - c_;
        double t = s_ + y;
        c_ = (t - s_) - y;
        s_ = t;
    }
    double value() const { return s_; }

  private:
    double s_ = 0.0;
    double c_ = 0.0;
};

double euler_gamma();

// Principal-branch log Gamma. Throws PoleError at nonpositive integers.
std::complex<double> log_gamma(std::complex<double> z);
double log_gamma(double x);  // x > 0
double gamma_fn(double x);   // real Gamma via reflection, poles -> PoleError

// psi(x) for x > 0; PoleError at nonpositive integers, domain error otherwise.
double digamma(double x);

// Bessel functions; absolute accuracy target 1e-10 on 0 < x <= 200 and
// nu in [-1/2, 5]. Steed's continued fractions with Temme's series below
// x = 2; negative orders by reflection.
double bessel_J(double nu, double x);
double bessel_Y(double nu, double x);
double bessel_K(double nu, double x);

// J, Y and derivatives together (shared Steed evaluation), nu >= 0.
struct BesselJY {
    double J, Y, Jp, Yp;
};
BesselJY bessel_JY(double nu, double x);

// I_nu(z) = -Y_nu(z) - (2/pi) K_nu(z). For z <= 2 the z^{-nu} singular parts
// of Y and K cancel analytically; a fused series evaluates the difference
// directly so no precision is lost to the cancellation.
double voronoi_kernel_I(double nu, double z);

// Riemann zeta(k) for integer k >= 2 (Euler-Maclaurin; used by the
// reciprocal-gamma Taylor machinery, exposed for tests).
double zeta_int(int k);

// Taylor coefficients of 1/Gamma(1+t) around t=0, a_0..a_n.
// 1/Gamma(1+t) = exp(gamma t + sum_{k>=2} (-1)^{k+1} zeta(k) t^k / k).
const double* recip_gamma_taylor(int& count);

}  // namespace rieszsum::specfun
