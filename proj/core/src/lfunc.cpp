#include "rieszsum/lfunc.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "rieszsum/errors.hpp"
#include "rieszsum/specfun.hpp"

namespace rieszsum::lfunc {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

// sum_{n <= K q} chi(n)/n plus the exact period-paired tail
//   sum_{n > K q} chi(n)/n = -(1/q) sum_{r=1}^{q} chi(r) psi(K + r/q),
// valid because sum_{r mod q} chi(r) = 0 makes the divergent parts cancel.
template <class Chi>
std::complex<double> l1_series_impl(const Chi& chi, long q) {
    const int K = 64;
    specfun::KahanAccumulator re, im;
    for (long n = 1; n <= K * q; ++n) {
        std::complex<double> t = chi.value(n) / double(n);
        re.add(t.real());
        im.add(t.imag());
    }
    std::complex<double> tail(0.0, 0.0);
    for (long r = 1; r <= q; ++r) {
        std::complex<double> c = chi.value(r);
        if (c == std::complex<double>(0.0, 0.0)) continue;
        tail += c * specfun::digamma(double(K) + double(r) / double(q));
    }
    return std::complex<double>(re.value(), im.value()) - tail / double(q);
}

template <class Chi>
std::complex<double> logsin_sum_impl(const Chi& chi, long q) {
    std::complex<double> s(0.0, 0.0);
    for (long n = 1; n < q; ++n) {
        std::complex<double> c = std::conj(chi.value(n));
        if (c == std::complex<double>(0.0, 0.0)) continue;
        s += c * std::log(2.0 * std::sin(kPi * double(n) / double(q)));
    }
    return s;
}

}  // namespace

std::complex<double> logsin_character_sum(const chars::DirichletCharacter& chi) {
    return logsin_sum_impl(chi, chi.modulus());
}

double logsin_character_sum(const chars::KroneckerCharacter& chi) {
    return logsin_sum_impl(chi, chi.modulus()).real();
}

std::complex<double> L1_logsin(const chars::DirichletCharacter& chi) {
    if (chi.is_principal())
        throw std::domain_error("L1_logsin: chi must be nonprincipal");
    if (!chi.is_even()) throw std::domain_error("L1_logsin: chi must be even");
    auto g = chars::gauss_sum(chi);
    return -g.value / double(chi.modulus()) * logsin_character_sum(chi);
}

double L1_logsin(const chars::KroneckerCharacter& chi) {
    if (!chi.is_even())
        throw std::domain_error("L1_logsin: chi_D must be even (D > 0)");
    auto g = chars::gauss_sum(chi);
    double s = logsin_character_sum(chi);
    return (-g.value * s / double(chi.modulus())).real();
}

std::complex<double> L1_series(const chars::DirichletCharacter& chi) {
    if (chi.is_principal())
        throw std::domain_error("L1_series: chi must be nonprincipal");
    return l1_series_impl(chi, chi.modulus());
}

double L1_series(const chars::KroneckerCharacter& chi) {
    return l1_series_impl(chi, chi.modulus()).real();
}

double Lprime1_series(const chars::KroneckerCharacter& chi) {
    // L'(1, chi) = -sum chi(n) log(n)/n. Split n = j q + r and pair the
    // tail over full periods. With u = K + r/q and g(t) = log(t)/t,
    //   sum_{j >= K} g(j + r/q) = C - log(u)^2/2 + g(u)/2 - g'(u)/12
    //                             + g'''(u)/720 + ...
    // where the constant C and the log q ladder both cancel under
    // sum_r chi(r) = 0 (the 1/n ladder is the digamma tail again).
    const long q = chi.modulus();
    const int K = 256;
    specfun::KahanAccumulator head;
    for (long n = 2; n <= K * q; ++n) {
        double c = chi.real_value(n);
        if (c != 0.0) head.add(c * std::log(double(n)) / double(n));
    }
    double lq = std::log(double(q));
    double tail = 0.0;
    for (long r = 1; r <= q; ++r) {
        double c = chi.real_value(r);
        if (c == 0.0) continue;
        double u = double(K) + double(r) / double(q);
        double L = std::log(u);
        double t1 = -specfun::digamma(u);            // sum_{j>=K} 1/(j + r/q)
        double g = L / u;
        double gp = (1.0 - L) / (u * u);
        double gppp = (11.0 - 6.0 * L) / (u * u * u * u);
        double t2 = -0.5 * L * L + 0.5 * g - gp / 12.0 + gppp / 720.0;
        tail += c * (lq / double(q) * t1 + t2 / double(q));
    }
    return -(head.value() + tail);
}

LaurentData laurent_data(const arith::FieldContext& ctx) {
    LaurentData out;
    out.source = LaurentSource::series;
    if (ctx.kind == arith::FieldKind::Rational) {
        out.residue = 1.0;
        out.const_term = specfun::euler_gamma();
        return out;
    }
    chars::KroneckerCharacter chi(ctx.disc);
    double l1 = L1_series(chi);
    out.residue = l1;
    out.const_term = specfun::euler_gamma() * l1 + Lprime1_series(chi);
    if (!(out.residue > 0.0))
        throw LowAccuracy("laurent_data: residue must be positive", out.residue);
    return out;
}

LaurentData class_number_fixture(long D) {
    LaurentData out;
    out.source = LaurentSource::class_number_fixture;
    out.h = 1;
    out.w = 2;
    out.r1 = 2;
    out.r2 = 0;
    out.disc = D;
    switch (D) {
        case 5:
            out.regulator = std::log((1.0 + std::sqrt(5.0)) / 2.0);
            break;
        case 8:
            out.regulator = std::log(1.0 + std::sqrt(2.0));
            break;
        case 12:
            out.regulator = std::log(2.0 + std::sqrt(3.0));
            break;
        case 13:
            out.regulator = std::log((3.0 + std::sqrt(13.0)) / 2.0);
            break;
        default:
            throw std::domain_error("class_number_fixture: D not in {5,8,12,13}");
    }
    out.residue = std::pow(2.0, out.r1) * std::pow(2.0 * kPi, out.r2) *
                  double(out.h) * out.regulator /
                  (double(out.w) * std::sqrt(double(D)));
    out.const_term = std::numeric_limits<double>::quiet_NaN();
    return out;
}

arith::FieldContext quadratic_field_context(long D) {
    arith::FieldContext ctx = arith::real_quadratic_field(D, 1.0, 0.0);
    LaurentData ld = laurent_data(ctx);
    ctx.gamma_minus1 = ld.residue;
    ctx.gamma_0 = ld.const_term;
    return ctx;
}

}  // namespace rieszsum::lfunc
