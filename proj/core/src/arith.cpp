#include "rieszsum/arith.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace rieszsum::arith {

long gcd(long a, long b) { return std::gcd(a, b); }

bool is_prime(long n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (long p = 3; p * p <= n; p += 2)
        if (n % p == 0) return false;
    return true;
}

std::vector<long> divisors(long n) {
    if (n < 1) throw std::domain_error("divisors: n must be >= 1");
    std::vector<long> small, large;
    for (long d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            small.push_back(d);
            if (d != n / d) large.push_back(n / d);
        }
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

namespace {

// Jacobi symbol (a|m) for odd m > 0 via quadratic reciprocity.
int jacobi(long a, long m) {
    a %= m;
    if (a < 0) a += m;
    int sign = 1;
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            long r = m % 8;
            if (r == 3 || r == 5) sign = -sign;
        }
        std::swap(a, m);
        if (a % 4 == 3 && m % 4 == 3) sign = -sign;
        a %= m;
    }
    return m == 1 ? sign : 0;
}

}  // namespace

int kronecker(long D, long n) {
    // Standard total extension: (D|0) is 1 iff D = +-1; (D|-1) tracks sgn D;
    // (D|2) follows the mod-8 rule and vanishes for even D.
    if (n == 0) return (D == 1 || D == -1) ? 1 : 0;
    int sign = 1;
    if (n < 0) {
        n = -n;
        if (D < 0) sign = -sign;
    }
    long a = D;
    int pow2 = 0;
    while (n % 2 == 0) {
        n /= 2;
        ++pow2;
    }
    if (pow2 > 0) {
        if (a % 2 == 0) return 0;
        long r = ((a % 8) + 8) % 8;
        int two = (r == 1 || r == 7) ? 1 : -1;
        if (pow2 % 2 == 1 && two == -1) sign = -sign;
    }
    // n now odd and positive; (D|n) only depends on D mod n here
    if (n == 1) return sign;
    return sign * jacobi(a, n);
}

bool is_fundamental_discriminant(long D) {
    if (D == 0) return false;
    if (D == 1) return true;  // trivial discriminant of Q
    auto squarefree = [](long m) {
        m = std::labs(m);
        for (long d = 2; d * d <= m; ++d)
            if (m % (d * d) == 0) return false;
        return true;
    };
    long r4 = ((D % 4) + 4) % 4;
    if (r4 == 1) return squarefree(D);
    if (D % 4 == 0) {
        long m = D / 4;
        long rm = ((m % 4) + 4) % 4;
        return (rm == 2 || rm == 3) && squarefree(m);
    }
    return false;
}

FieldContext rational_field() {
    FieldContext ctx;
    ctx.kind = FieldKind::Rational;
    ctx.r1 = 1;
    ctx.disc = 1;
    ctx.gamma_minus1 = 1.0;
    ctx.gamma_0 = 0.57721566490153286061;
    return ctx;
}

FieldContext real_quadratic_field(long D, double gamma_minus1, double gamma_0) {
    if (D <= 1 || !is_fundamental_discriminant(D))
        throw std::domain_error("real_quadratic_field: D must be a fundamental discriminant > 1");
    FieldContext ctx;
    ctx.kind = FieldKind::RealQuadratic;
    ctx.r1 = 2;
    ctx.disc = D;
    ctx.gamma_minus1 = gamma_minus1;
    ctx.gamma_0 = gamma_0;
    return ctx;
}

long f_K(const FieldContext& ctx, long n) {
    if (n < 1) throw std::domain_error("f_K: n must be >= 1");
    if (ctx.kind == FieldKind::Rational) return 1;
    long s = 0;
    for (long d : divisors(n)) s += kronecker(ctx.disc, d);
    return s;
}

long f_K_oracle(long D, long n) {
    if (n < 1) throw std::domain_error("f_K_oracle: n must be >= 1");
    if (D <= 1) throw std::domain_error("f_K_oracle: needs a real quadratic discriminant");
    long count = 1;
    long m = n;
    for (long p = 2; p * p <= m; ++p) {
        if (m % p != 0) continue;
        int k = 0;
        while (m % p == 0) {
            m /= p;
            ++k;
        }
        int chi = kronecker(D, p);
        if (chi == 1) count *= (k + 1);          // split: (k+1) ideals of norm p^k
        else if (chi == -1) count *= (k % 2 == 0 ? 1 : 0);  // inert: norm p^2 only
        // ramified (chi == 0): exactly one ideal at every power
    }
    if (m > 1) {
        int chi = kronecker(D, m);
        if (chi == 1) count *= 2;
        else if (chi == -1) count = 0;
    }
    return count;
}

int w_D(long D) {
    if (D >= 0) throw std::domain_error("w_D: defined for negative discriminants only");
    if (D == -3) return 6;
    if (D == -4) return 4;
    return 2;
}

long r_D_permissive(long D, long n) {
    if (D >= 0) throw std::domain_error("r_D: defined for negative discriminants only");
    if (n < 1) throw std::domain_error("r_D: n must be >= 1");
    long s = 0;
    for (long k : divisors(n)) s += kronecker(D, k);
    return long(w_D(D)) * s;
}

long r_D(long D, long n) {
    if (D >= 0) throw std::domain_error("r_D: defined for negative discriminants only");
    if (n >= 1 && std::gcd(n, std::labs(D)) > 1)
        throw std::domain_error("r_D: n must be coprime to D (use r_D_permissive to drop the hypothesis)");
    return r_D_permissive(D, n);
}

long big_D_K(const FieldContext& ctx, long n) {
    long s = 0;
    for (long d : divisors(n)) s += f_K(ctx, d);
    return s;
}

long script_D(long D, long n) {
    long s = 0;
    for (long k : divisors(n)) {
        long dk = 0;
        for (long d : divisors(k)) dk += kronecker(D, d);
        s += dk;
    }
    return s;
}

std::vector<int> kronecker_table(long D, long N) {
    std::vector<int> t(size_t(N) + 1, 0);
    for (long n = 1; n <= N; ++n) t[size_t(n)] = kronecker(D, n);
    return t;
}

namespace {

// g = 1 * h by direct sieve: g[m] = sum_{d|m} h[d].
std::vector<long> convolve_one(const std::vector<long>& h) {
    std::vector<long> g(h.size(), 0);
    long N = long(h.size()) - 1;
    for (long d = 1; d <= N; ++d) {
        long v = h[size_t(d)];
        if (v == 0) continue;
        for (long m = d; m <= N; m += d) g[size_t(m)] += v;
    }
    return g;
}

}  // namespace

std::vector<long> d_chi_D_table(long D, long N) {
    std::vector<long> chi(size_t(N) + 1, 0);
    for (long n = 1; n <= N; ++n) chi[size_t(n)] = kronecker(D, n);
    return convolve_one(chi);
}

std::vector<long> f_K_table(const FieldContext& ctx, long N) {
    if (ctx.kind == FieldKind::Rational) return std::vector<long>(size_t(N) + 1, 1);
    return d_chi_D_table(ctx.disc, N);
}

std::vector<long> big_D_K_table(const FieldContext& ctx, long N) {
    return convolve_one(f_K_table(ctx, N));
}

std::vector<long> script_D_table(long D, long N) {
    return convolve_one(d_chi_D_table(D, N));
}

}  // namespace rieszsum::arith
