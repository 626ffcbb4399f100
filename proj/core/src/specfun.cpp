#include "rieszsum/specfun.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "rieszsum/errors.hpp"

namespace rieszsum::specfun {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;
constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kFpMin = 1e-300;
constexpr int kMaxIter = 20000;

// Bernoulli numbers B_2..B_16 for the Stirling and digamma tails.
constexpr std::array<double, 8> kBernoulli = {
    1.0 / 6.0,     -1.0 / 30.0,      1.0 / 42.0, -1.0 / 30.0,
    5.0 / 66.0, -691.0 / 2730.0, 7.0 / 6.0,   -3617.0 / 510.0};

bool near_nonpositive_integer(std::complex<double> z, double tol = 1e-13) {
    if (z.imag() != 0.0) return false;
    double r = z.real();
    if (r > 0.5) return false;
    return std::abs(r - std::round(r)) < tol;
}

// Stirling asymptotic for Re z >= 10 (error below 2e-15 there).
std::complex<double> log_gamma_stirling(std::complex<double> z) {
    std::complex<double> lz = std::log(z);
    std::complex<double> s = (z - 0.5) * lz - z + 0.5 * std::log(2.0 * kPi);
    std::complex<double> zinv = 1.0 / z;
    std::complex<double> zpow = zinv;
    std::complex<double> z2 = zinv * zinv;
    for (int k = 0; k < 8; ++k) {
        int two_k = 2 * (k + 1);
        s += kBernoulli[k] / double(two_k * (two_k - 1)) * zpow;
        zpow *= z2;
    }
    return s;
}

// log sin(pi z) without overflow for large |Im z|, principal-ish branch
// adequate for the reflection formula (Im z > 0 assumed).
std::complex<double> log_sin_pi_upper(std::complex<double> z) {
    const std::complex<double> i(0.0, 1.0);
    // sin(pi z) = e^{-i pi z} (e^{2 i pi z} - 1) / (2i)
    std::complex<double> w = std::exp(2.0 * i * kPi * z);
    return -i * kPi * z + std::log(w - 1.0) - std::log(2.0 * i);
}

}  // namespace

double euler_gamma() { return 0.57721566490153286060651209008240243; }

double zeta_int(int k) {
    if (k < 2) throw std::domain_error("zeta_int: k >= 2 required");
    if (k > 80) return 1.0;  // 2^-80 below double resolution
    const int n_terms = 40;
    KahanAccumulator acc;
    for (int n = 1; n <= n_terms; ++n) acc.add(std::pow(double(n), -k));
    double nk = std::pow(double(n_terms), -k);
    double tail = double(n_terms) * nk / (k - 1) - 0.5 * nk;
    // Euler-Maclaurin corrections with B_2, B_4, B_6
    double x = double(n_terms);
    double f1 = -k * nk / x;
    double f3 = -k * (k + 1) * (k + 2) * nk / (x * x * x);
    double f5 = -k * (k + 1) * (k + 2) * (k + 3) * (k + 4) * nk / std::pow(x, 5);
    tail -= kBernoulli[0] / 2.0 * f1;
    tail -= kBernoulli[1] / 24.0 * f3;
    tail -= kBernoulli[2] / 720.0 * f5;
    return acc.value() + tail;
}

const double* recip_gamma_taylor(int& count) {
    constexpr int n = 41;
    static const std::vector<double> coeffs = [] {
        // exp of L(t) = gamma t + sum_{k>=2} (-1)^{k+1} zeta(k) t^k / k
        std::vector<double> l(n, 0.0);
        l[1] = euler_gamma();
        for (int k = 2; k < n; ++k) {
            l[k] = ((k % 2 == 0) ? -1.0 : 1.0) * zeta_int(k) / k;
        }
        std::vector<double> a(n, 0.0);
        a[0] = 1.0;
        for (int m = 1; m < n; ++m) {
            double s = 0.0;
            for (int k = 1; k <= m; ++k) s += k * l[k] * a[m - k];
            a[m] = s / m;
        }
        return a;
    }();
    count = n;
    return coeffs.data();
}

namespace {

// Temme's auxiliary gammas for |mu| <= 1/2:
//   gam1 = (1/Gamma(1-mu) - 1/Gamma(1+mu)) / (2 mu)   (limit -gamma' at 0)
//   gam2 = (1/Gamma(1-mu) + 1/Gamma(1+mu)) / 2
//   gampl = 1/Gamma(1+mu), gammi = 1/Gamma(1-mu)
void temme_gammas(double mu, double& gam1, double& gam2, double& gampl,
                  double& gammi) {
    int n = 0;
    const double* a = recip_gamma_taylor(n);
    double odd = 0.0;   // sum over odd j of a_j mu^{j-1}
    double even = 0.0;  // sum over even j of a_j mu^j
    double mu2 = mu * mu;
    double podd = 1.0;  // mu^{j-1} for odd j, starting j=1
    double peven = 1.0;
    for (int j = 0; j < n; j += 2) {
        even += a[j] * peven;
        if (j + 1 < n) odd += a[j + 1] * podd;
        peven *= mu2;
        podd *= mu2;
    }
    gam1 = -odd;
    gam2 = even;
    gampl = even + mu * odd;  // 1/Gamma(1+mu) = even part + mu * odd part
    gammi = even - mu * odd;
}

struct BesselK2 {
    double Kmu, Kmu1;  // K_mu, K_{mu+1}
};

// K_mu, K_{mu+1} for |mu| <= 1/2 via Temme's series (x <= 2) or the
// Thompson-Barnett continued fraction (x > 2).
BesselK2 bessel_K_seed(double mu, double x) {
    BesselK2 out{};
    if (x <= 2.0) {
        double x2 = 0.5 * x;
        double pimu = kPi * mu;
        double fact = (std::abs(pimu) < 1e-10) ? 1.0 : pimu / std::sin(pimu);
        double d = -std::log(x2);
        double e = mu * d;
        double fact2 = (std::abs(e) < 1e-10) ? 1.0 : std::sinh(e) / e;
        double gam1, gam2, gampl, gammi;
        temme_gammas(mu, gam1, gam2, gampl, gammi);
        double ff = fact * (gam1 * std::cosh(e) + gam2 * fact2 * d);
        double sum = ff;
        e = std::exp(e);
        double p = 0.5 * e / gampl;
        double q = 0.5 / (e * gammi);
        double c = 1.0;
        double d2 = x2 * x2;
        double sum1 = p;
        int i = 1;
        for (; i <= kMaxIter; ++i) {
            ff = (i * ff + p + q) / (i * i - mu * mu);
            c *= d2 / i;
            p /= (i - mu);
            q /= (i + mu);
            double del = c * ff;
            sum += del;
            double del1 = c * (p - i * ff);
            sum1 += del1;
            if (std::abs(del) < std::abs(sum) * kEps) break;
        }
        if (i > kMaxIter)
            throw NonConvergence("bessel_K series failed to converge", sum, 0.0, i);
        out.Kmu = sum;
        out.Kmu1 = sum1 * (2.0 / x);
    } else {
        double b = 2.0 * (1.0 + x);
        double d = 1.0 / b;
        double h = d, delh = d;
        double q1 = 0.0, q2 = 1.0;
        double a1 = 0.25 - mu * mu;
        double q = a1, c = a1;
        double a = -a1;
        double s = 1.0 + q * delh;
        int i = 2;
        for (; i <= kMaxIter; ++i) {
            a -= 2 * (i - 1);
            c = -a * c / i;
            double qnew = (q1 - b * q2) / a;
            q1 = q2;
            q2 = qnew;
            q += c * qnew;
            b += 2.0;
            d = 1.0 / (b + a * d);
            delh = (b * d - 1.0) * delh;
            h += delh;
            double dels = q * delh;
            s += dels;
            if (std::abs(dels / s) < kEps) break;
        }
        if (i > kMaxIter)
            throw NonConvergence("bessel_K continued fraction failed", s, 0.0, i);
        h = a1 * h;
        out.Kmu = std::sqrt(kPi / (2.0 * x)) * std::exp(-x) / s;
        out.Kmu1 = out.Kmu * (mu + x + 0.5 - h) / x;
    }
    return out;
}

BesselJY steed_JY(double nu, double x) {
    if (x <= 0.0) throw std::domain_error("bessel: x > 0 required");
    if (nu < 0.0) throw std::domain_error("steed_JY: nu >= 0 required");

    int nl = (x < 2.0) ? int(nu + 0.5) : std::max(0, int(nu - x + 1.5));
    double mu = nu - nl;
    double mu2 = mu * mu;
    double xi = 1.0 / x;
    double xi2 = 2.0 * xi;
    double w = xi2 / kPi;  // Wronskian J Y' - J' Y = 2/(pi x)

    // CF1 for J'_nu / J_nu with sign tracking of J_nu.
    int isign = 1;
    double h = nu * xi;
    if (std::abs(h) < kFpMin) h = kFpMin;
    double b = xi2 * nu;
    double d = 0.0;
    double c = h;
    int i = 1;
    for (; i <= kMaxIter; ++i) {
        b += xi2;
        d = b - d;
        if (std::abs(d) < kFpMin) d = kFpMin;
        c = b - 1.0 / c;
        if (std::abs(c) < kFpMin) c = kFpMin;
        d = 1.0 / d;
        double del = c * d;
        h *= del;
        if (d < 0.0) isign = -isign;
        if (std::abs(del - 1.0) < kEps) break;
    }
    if (i > kMaxIter)
        throw NonConvergence("bessel J continued fraction failed", h, 0.0, i);

    // Downward recurrence from nu to mu with a scaled seed.
    double rjl = isign * kFpMin;
    double rjpl = h * rjl;
    double rjl1 = rjl, rjp1 = rjpl;  // scaled values at order nu
    double fact = nu * xi;
    for (int l = nl; l >= 1; --l) {
        double rjtemp = fact * rjl + rjpl;
        fact -= xi;
        rjpl = fact * rjtemp - rjl;
        rjl = rjtemp;
    }
    if (rjl == 0.0) rjl = kEps;
    double f = rjpl / rjl;  // J'_mu / J_mu

    double rjmu, rymu, rymup, ry1;
    if (x < 2.0) {
        // Temme's series for Y_mu and Y_{mu+1}.
        double x2 = 0.5 * x;
        double pimu = kPi * mu;
        double fct = (std::abs(pimu) < 1e-10) ? 1.0 : pimu / std::sin(pimu);
        double dd = -std::log(x2);
        double e = mu * dd;
        double fact2 = (std::abs(e) < 1e-10) ? 1.0 : std::sinh(e) / e;
        double gam1, gam2, gampl, gammi;
        temme_gammas(mu, gam1, gam2, gampl, gammi);
        double ff = 2.0 / kPi * fct * (gam1 * std::cosh(e) + gam2 * fact2 * dd);
        e = std::exp(e);
        double p = e / (gampl * kPi);
        double q = 1.0 / (e * kPi * gammi);
        double pimu2 = 0.5 * pimu;
        double fact3 =
            (std::abs(pimu2) < 1e-10) ? 1.0 : std::sin(pimu2) / pimu2;
        double r = kPi * pimu2 * fact3 * fact3;
        double cc = 1.0;
        double dsq = -x2 * x2;
        double sum = ff + r * q;
        double sum1 = p;
        int k = 1;
        for (; k <= kMaxIter; ++k) {
            ff = (k * ff + p + q) / (k * k - mu2);
            cc *= dsq / k;
            p /= (k - mu);
            q /= (k + mu);
            double del = cc * (ff + r * q);
            sum += del;
            double del1 = cc * p - k * del;
            sum1 += del1;
            if (std::abs(del) < (1.0 + std::abs(sum)) * kEps) break;
        }
        if (k > kMaxIter)
            throw NonConvergence("bessel Y series failed to converge", sum, 0.0, k);
        rymu = -sum;
        ry1 = -sum1 * xi2;
        rymup = mu * xi * rymu - ry1;
        rjmu = w / (rymup - f * rymu);
    } else {
        // CF2: p + i q = (J' - i Y') / (J - i Y) at order mu.
        double a = 0.25 - mu2;
        double p = -0.5 * xi;
        double q = 1.0;
        double br = 2.0 * x;
        double bi = 2.0;
        double fct = a * xi / (p * p + q * q);
        double cr = br + q * fct;
        double ci = bi + p * fct;
        double den = br * br + bi * bi;
        double dr = br / den;
        double di = -bi / den;
        double dlr = cr * dr - ci * di;
        double dli = cr * di + ci * dr;
        double temp = p * dlr - q * dli;
        q = p * dli + q * dlr;
        p = temp;
        int k = 2;
        for (; k <= kMaxIter; ++k) {
            a += 2 * (k - 1);
            bi += 2.0;
            dr = a * dr + br;
            di = a * di + bi;
            if (std::abs(dr) + std::abs(di) < kFpMin) dr = kFpMin;
            fct = a / (cr * cr + ci * ci);
            cr = br + cr * fct;
            ci = bi - ci * fct;
            if (std::abs(cr) + std::abs(ci) < kFpMin) cr = kFpMin;
            den = dr * dr + di * di;
            dr /= den;
            di = -di / den;
            dlr = cr * dr - ci * di;
            dli = cr * di + ci * dr;
            temp = p * dlr - q * dli;
            q = p * dli + q * dlr;
            p = temp;
            if (std::abs(dlr - 1.0) + std::abs(dli) < kEps) break;
        }
        if (k > kMaxIter)
            throw NonConvergence("bessel Y continued fraction failed", p, 0.0, k);
        double gam = (p - f) / q;
        rjmu = std::sqrt(w / ((p - f) * gam + q));
        rjmu = std::copysign(rjmu, rjl);
        rymu = rjmu * gam;
        rymup = rymu * (p + q / gam);
        ry1 = mu * xi * rymu - rymup;
    }

    // Rescale J by the true J_mu, recur Y upward from mu to nu.
    fact = rjmu / rjl;
    BesselJY out{};
    out.J = rjl1 * fact;
    out.Jp = rjp1 * fact;
    for (int l = 1; l <= nl; ++l) {
        double rytemp = (mu + l) * xi2 * ry1 - rymu;
        rymu = ry1;
        ry1 = rytemp;
    }
    out.Y = rymu;
    out.Yp = nu * xi * rymu - ry1;
    return out;
}

double bessel_K_impl(double nu, double x) {
    if (x <= 0.0) throw std::domain_error("bessel_K: x > 0 required");
    nu = std::abs(nu);  // K is even in the order
    int nl = int(nu + 0.5);
    double mu = nu - nl;
    BesselK2 seed = bessel_K_seed(mu, x);
    double kmu = seed.Kmu, knu1 = seed.Kmu1;
    // K_{s+1} = K_{s-1} + (2s/x) K_s upward from mu
    for (int l = 1; l <= nl; ++l) {
        double knew = kmu + 2.0 * (mu + l) / x * knu1;
        kmu = knu1;
        knu1 = knew;
    }
    return kmu;
}

// Modified Bessel I_nu by ascending series (z <= 2 only, where it converges
// in a few terms). Requires nu > -1 here.
double bessel_I_series(double nu, double z) {
    double z2 = 0.5 * z;
    double term = std::pow(z2, nu) / std::tgamma(nu + 1.0);
    double sum = term;
    double z4 = z2 * z2;
    for (int k = 1; k <= 200; ++k) {
        term *= z4 / (k * (nu + k));
        sum += term;
        if (std::abs(term) < std::abs(sum) * kEps) break;
    }
    return sum;
}

double bessel_J_series(double nu, double z) {
    double z2 = 0.5 * z;
    double term = std::pow(z2, nu) / std::tgamma(nu + 1.0);
    double sum = term;
    double z4 = z2 * z2;
    for (int k = 1; k <= 200; ++k) {
        term *= -z4 / (k * (nu + k));
        sum += term;
        if (std::abs(term) < std::abs(sum) * kEps) break;
    }
    return sum;
}

}  // namespace

std::complex<double> log_gamma(std::complex<double> z) {
    if (near_nonpositive_integer(z))
        throw PoleError("log_gamma: pole at nonpositive integer");
    if (z.imag() < 0.0) return std::conj(log_gamma(std::conj(z)));
    if (z.real() >= 0.5) {
        // Shift until |z| >= 15; with Re z >= 0.5 the argument stays below
        // pi/2 and the eight-term Stirling tail is < 1e-18 there.
        std::complex<double> shift(0.0, 0.0);
        while (std::abs(z) < 15.0) {
            shift += std::log(z);
            z += 1.0;
        }
        return log_gamma_stirling(z) - shift;
    }
    // Reflection: log Gamma(z) = log pi - log sin(pi z) - log Gamma(1 - z).
    // Im z >= 0 here, so the stable upper-half-plane log sin applies.
    return std::log(kPi) - log_sin_pi_upper(z) - log_gamma(1.0 - z);
}

double log_gamma(double x) {
    if (x <= 0.0) {
        if (x == std::round(x)) throw PoleError("log_gamma: pole at nonpositive integer");
        throw std::domain_error("log_gamma(real): x > 0 required");
    }
    double shift = 0.0;
    double z = x;
    while (z < 15.0) {
        shift += std::log(z);
        z += 1.0;
    }
    return log_gamma_stirling(std::complex<double>(z, 0.0)).real() - shift;
}

double gamma_fn(double x) {
    if (x > 0.0) return std::exp(log_gamma(x));
    if (x == std::round(x)) throw PoleError("gamma_fn: pole at nonpositive integer");
    // Gamma(x) Gamma(1-x) = pi / sin(pi x)
    return kPi / (std::sin(kPi * x) * std::exp(log_gamma(1.0 - x)));
}

double digamma(double x) {
    if (x <= 0.0) {
        if (x == std::round(x)) throw PoleError("digamma: pole at nonpositive integer");
        throw std::domain_error("digamma: x > 0 required");
    }
    double acc = 0.0;
    while (x < 10.0) {
        acc -= 1.0 / x;
        x += 1.0;
    }
    double inv2 = 1.0 / (x * x);
    double s = std::log(x) - 0.5 / x;
    double p = inv2;
    for (int k = 0; k < 7; ++k) {
        s -= kBernoulli[k] / (2.0 * (k + 1)) * p;
        p *= inv2;
    }
    return s + acc;  // acc holds the recurrence shift down to the input
}

BesselJY bessel_JY(double nu, double x) { return steed_JY(nu, x); }

double bessel_J(double nu, double x) {
    if (nu >= 0.0) return steed_JY(nu, x).J;
    double a = -nu;
    BesselJY r = steed_JY(a, x);
    return std::cos(a * kPi) * r.J - std::sin(a * kPi) * r.Y;
}

double bessel_Y(double nu, double x) {
    if (nu >= 0.0) return steed_JY(nu, x).Y;
    double a = -nu;
    BesselJY r = steed_JY(a, x);
    return std::sin(a * kPi) * r.J + std::cos(a * kPi) * r.Y;
}

double bessel_K(double nu, double x) { return bessel_K_impl(nu, x); }

double voronoi_kernel_I(double nu, double z) {
    if (z <= 0.0) throw std::domain_error("voronoi_kernel_I: z > 0 required");
    if (z > 2.0) {
        // Away from the origin both pieces are tame; evaluate directly.
        return -bessel_Y(nu, z) - 2.0 / kPi * bessel_K(nu, z);
    }

    double nearest = std::round(nu);
    bool integer_order = std::abs(nu - nearest) < 1e-6 && nearest >= 0.0;
    double z2 = 0.5 * z;

    if (integer_order) {
        int n = int(nearest);
        // -Y_n - (2/pi) K_n: the log terms combine into
        //   -(2/pi) ln(z/2) [J_n + (-1)^{n+1} I_n]
        // and the z^{-n} singular sums cancel except for odd-index k.
        double jn = bessel_J_series(double(n), z);
        double in = bessel_I_series(double(n), z);
        double sign_n = (n % 2 == 0) ? 1.0 : -1.0;
        double res = -2.0 / kPi * std::log(z2) * (jn - sign_n * in);

        // Finite part of the cancelled singular sums: odd k < n survive.
        double fin = 0.0;
        for (int k = 1; k < n; k += 2) {
            double t = std::lgamma(double(n - k)) - std::lgamma(double(k + 1));
            fin += std::exp(t) * std::pow(z2, 2 * k - n);
        }
        res += 2.0 / kPi * fin;

        // Regular series with psi weights:
        // (1/pi) sum_k [(-1)^k - (-1)^n] (psi(k+1)+psi(n+k+1)) / (k!(n+k)!) (z/2)^{2k+n}
        double hk = 0.0;        // H_k
        double hnk = 0.0;       // H_{n+k}
        for (int m = 1; m <= n; ++m) hnk += 1.0 / m;
        double gamma0 = euler_gamma();
        double base = std::pow(z2, n) / std::tgamma(double(n) + 1.0);  // (z/2)^n / (0! n!)
        double sum = 0.0;
        for (int k = 0; k <= 400; ++k) {
            double signk = (k % 2 == 0) ? 1.0 : -1.0;
            double coeff = signk - sign_n;
            if (coeff != 0.0) {
                double psis = (-gamma0 + hk) + (-gamma0 + hnk);
                sum += coeff * psis * base;
            }
            // advance base to k+1
            base *= z2 * z2 / ((k + 1.0) * (n + k + 1.0));
            hk += 1.0 / (k + 1.0);
            hnk += 1.0 / (n + k + 1.0);
            if (std::abs(base) * (std::abs(hk) + std::abs(hnk) + 1.0) <
                1e-18 * (1.0 + std::abs(sum)))
                break;
        }
        res += sum / kPi;
        return res;
    }

    // Non-integer order: with A_{\mp} := J_{\mp nu} - I_{\mp nu}
    // (whose z^{\mp nu} leading terms vanish: only odd-k terms survive),
    //   -Y_nu - (2/pi) K_nu = [A_- - cos(nu pi) A_+] / sin(nu pi)
    //                         + tan(nu pi / 2) I_nu.
    auto a_series = [&](double s) {
        // J_s - I_s = -2 sum_{k odd} (z/2)^{2k+s} / (k! Gamma(k+1+s))
        double g1 = std::tgamma(2.0 + s);  // Gamma(k+1+s) at k=1
        double term = std::pow(z2, 2.0 + s) / g1;  // k=1 term body
        double sum = 0.0;
        double z4 = z2 * z2;
        for (int k = 1; k <= 300; k += 2) {
            sum += term;
            // advance two steps: k -> k+2
            term *= z4 * z4 / ((k + 1.0) * (k + 2.0) * (k + 1.0 + s) * (k + 2.0 + s));
            if (std::abs(term) < 1e-18 * (1.0 + std::abs(sum))) break;
        }
        return -2.0 * sum;
    };
    double am = a_series(-nu);
    double ap = a_series(nu);
    double s_pi = std::sin(nu * kPi);
    double c_pi = std::cos(nu * kPi);
    double inu = bessel_I_series(nu, z);
    return (am - c_pi * ap) / s_pi + std::tan(0.5 * nu * kPi) * inu;
}

}  // namespace rieszsum::specfun
