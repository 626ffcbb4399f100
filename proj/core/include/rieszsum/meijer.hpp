#pragma once

// Mellin-Barnes evaluation of the kernels
//   G(y) = G^{0,m}_{2m,0}(y | 1/2 x m, rho+1, 0 x (m-1); -)
// that appear in every right-hand-side series, plus the Bessel closed form
// at m = 2, rho = 0 and an iterated-integral probe used as a third check.

namespace rieszsum::meijer {

enum class KernelMethod { mellin_barnes, bessel_closed_form };

// Contour and quadrature parameters. The integrand on Re s = c is
//   Gamma(1/2+s)^m y^s / (Gamma(rho+1-s) Gamma(-s)^{m-1}),
// with large-|t| envelope |t|^e, e = 2mc - rho - 1 + m/2 (the exponential
// Stirling factors cancel m-for-m). Valid abscissae lie in (-1/2, c_max],
// c_max = (rho - m/2 - 1/2)/(2m), so the envelope decays at least like
// t^{-3/2}.
struct MeijerKernelSpec {
    int m = 2;                   // r1 + 1
    double rho = 0.0;            // rho > 1/2 - m/2 (window below is nonempty)
    double contour_abscissa = 0.0;
    double tail_cutoff = 0.0;    // T: quadrature window is |t| <= T
    double step = 0.0;           // h: trapezoid step in t
};

// Defaults: abscissa clamped into the pole-free window (the unclamped
// margin formula lands left of the s = -1/2 pole whenever rho <= 1),
// step tied to the pole distance so trapezoid aliasing stays ~1e-11.
MeijerKernelSpec default_kernel_spec(int m, double rho);

double envelope_exponent(const MeijerKernelSpec& spec);

struct KernelValue {
    double value = 0.0;
    double est_abs_error = 0.0;
    KernelMethod method = KernelMethod::mellin_barnes;
};

// Trapezoid quadrature of the Mellin-Barnes integral with a cos^2 taper on
// the last 40% of the window. Grid values are shared across calls with the
// same spec; per-y results are cached on a quantized log y key.
KernelValue g_kernel(const MeijerKernelSpec& spec, double y);

// Closed form at m = 2, rho = 0: y^{-1/4} I_1(4 y^{-1/4}) with
// I_nu = -Y_nu - (2/pi) K_nu. Rejects rho != 0 (only this case is matched
// against the classical divisor formula).
double g_kernel_bessel_m2(double rho, double y);

// Direct regularized evaluation of the iterated Bessel integral
//   sqrt(2/pi) int_0^inf u^{rho-1/2} cos(u) J_{rho+1/2}(x/u) du  (m = 2),
// equal to 2^{1-rho} x^{rho-1/2} G(16/x^2). Slow and low accuracy by
// design; a third independent probe at a handful of points.
double iterated_kernel_probe(int m, double rho, double x);

// Drop all shared grids and cached kernel values (test hygiene).
void clear_kernel_cache();

}  // namespace rieszsum::meijer
