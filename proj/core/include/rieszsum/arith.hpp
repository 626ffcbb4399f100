#pragma once

// Exact integer arithmetic for the divisor-type functions on the finite side
// of the identities: Kronecker symbols, f_K, d_chi, D_K, D_{K,chi}, the
// script-D convolutions, and the representation numbers r_D.

#include <complex>
#include <vector>

namespace rieszsum::arith {

enum class FieldKind { Rational, RealQuadratic };

// A number field K with r2 = 0: either Q itself (r1 = 1) or a real quadratic
// field Q(sqrt(d)) with fundamental discriminant disc > 0 (r1 = 2).
// gamma_minus1 and gamma_0 cache the residue and constant term of the Laurent
// expansion of zeta_K at s = 1; lfunc::quadratic_field_context fills them.
struct FieldContext {
    FieldKind kind = FieldKind::Rational;
    int r1 = 1;
    long disc = 1;  // |Delta_K|; 1 for Q
    double gamma_minus1 = 1.0;
    double gamma_0 = 0.0;
};

// Rational field with gamma_minus1 = 1 and gamma_0 = Euler's constant.
FieldContext rational_field();

// Real quadratic shell with caller-supplied Laurent data (see lfunc for the
// variant that computes the data). Validates that D is a fundamental
// discriminant with D > 1.
FieldContext real_quadratic_field(long D, double gamma_minus1, double gamma_0);

// All divisors of n, ascending. Rejects n < 1.
std::vector<long> divisors(long n);

// Kronecker symbol (D|n), total on integer pairs with the standard extension
// to n <= 0 and even n. Zero iff gcd(D, n) > 1.
int kronecker(long D, long n);

bool is_fundamental_discriminant(long D);

// Ideal-counting coefficient of zeta_K: 1 for Q, sum_{d|n} (D|d) for real
// quadratic K (from zeta_K = zeta * L(s, chi_D)).
long f_K(const FieldContext& ctx, long n);

// Independent route: counts ideals of norm n from the splitting type of each
// prime power (split p^k contributes k+1, inert needs even k, ramified 1).
// Exists to guard the convolution above; tested against it, never mixed.
long f_K_oracle(long D, long n);

// w_D from the class-number weight table: 2 for D < -4, 4 for D = -4,
// 6 for D = -3. Rejects D >= 0.
int w_D(long D);

// Representation count r_D(n) = w_D * sum_{k|n} (D|k) for D < 0.
// The strict form enforces the coprimality hypothesis gcd(n, D) = 1 of the
// theorem that equates the divisor sum with a representation count; the
// permissive form evaluates the divisor sum for any n.
long r_D(long D, long n);
long r_D_permissive(long D, long n);

// d_chi(n) = sum_{k|n} chi(k) for any pointwise-evaluable character.
template <class Chi>
std::complex<double> d_chi(const Chi& chi, long n) {
    std::complex<double> s = 0.0;
    for (long k : divisors(n)) s += chi.value(k);
    return s;
}

// D_K(n) = sum_{d|n} f_K(d).
long big_D_K(const FieldContext& ctx, long n);

// D_{K,chi}(n) = sum_{d|n} f_K(d) chi(n/d).
template <class Chi>
std::complex<double> big_D_K_chi(const FieldContext& ctx, const Chi& chi, long n) {
    std::complex<double> s = 0.0;
    for (long d : divisors(n)) s += double(f_K(ctx, d)) * chi.value(n / d);
    return s;
}

// script_D(n) = sum_{k|n} d_{chi_D}(k), the coefficient of zeta^2 L(s,chi_D).
long script_D(long D, long n);

// script_D_chi(n) = sum_{k|n} d_{chi_D}(k) chi(n/k). chi_D is real, so
// conjugating the whole convolution reduces to conjugating chi alone.
template <class Chi>
std::complex<double> script_D_chi(long D, const Chi& chi, long n);

// Sieved tables over 1..N (index 0 unused) for the series engines; a sieve
// keeps repeated identity evaluations linear instead of divisor-by-divisor.
std::vector<int> kronecker_table(long D, long N);
std::vector<long> f_K_table(const FieldContext& ctx, long N);
std::vector<long> big_D_K_table(const FieldContext& ctx, long N);
std::vector<long> d_chi_D_table(long D, long N);   // 1 * chi_D
std::vector<long> script_D_table(long D, long N);  // 1 * (1 * chi_D)

long gcd(long a, long b);
bool is_prime(long n);

// --- template definitions ---

template <class Chi>
std::complex<double> script_D_chi(long D, const Chi& chi, long n) {
    std::complex<double> s = 0.0;
    for (long k : divisors(n)) {
        long dk = 0;
        for (long d : divisors(k)) dk += kronecker(D, d);
        s += double(dk) * chi.value(n / k);
    }
    return s;
}

}  // namespace rieszsum::arith
