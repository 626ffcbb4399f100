#include "rieszsum/characters.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

namespace rieszsum::chars {

long primitive_root(long q) {
    if (!arith::is_prime(q) || q < 3)
        throw std::domain_error("primitive_root: q must be an odd prime");
    // factor q-1 once, then test candidates by checking g^((q-1)/p) != 1
    long phi = q - 1;
    std::vector<long> prime_factors;
    long m = phi;
    for (long p = 2; p * p <= m; ++p) {
        if (m % p == 0) {
            prime_factors.push_back(p);
            while (m % p == 0) m /= p;
        }
    }
    if (m > 1) prime_factors.push_back(m);

    auto pow_mod = [q](long base, long e) {
        long r = 1, b = base % q;
        while (e > 0) {
            if (e & 1) r = (r * b) % q;
            b = (b * b) % q;
            e >>= 1;
        }
        return r;
    };
    for (long g = 2; g < q; ++g) {
        bool ok = true;
        for (long p : prime_factors) {
            if (pow_mod(g, phi / p) == 1) {
                ok = false;
                break;
            }
        }
        if (ok) return g;
    }
    throw std::logic_error("primitive_root: search exhausted (q not prime?)");
}

DirichletCharacter::DirichletCharacter(long q, int index) : q_(q), index_(index) {
    if (!arith::is_prime(q) || q < 3)
        throw std::domain_error("DirichletCharacter: modulus must be a prime >= 3");
    if (index < 0 || index > q - 2)
        throw std::domain_error("DirichletCharacter: index must lie in [0, q-2]");
    long g = primitive_root(q);
    exp_of_.assign(size_t(q), -1);
    long a = 1;
    for (int e = 0; e < q - 1; ++e) {
        exp_of_[size_t(a)] = e;
        a = (a * g) % q;
    }
    roots_.resize(size_t(q - 1));
    for (int k = 0; k < q - 1; ++k) {
        double t = 2.0 * std::numbers::pi * double(k) / double(q - 1);
        roots_[size_t(k)] = {std::cos(t), std::sin(t)};
    }
}

std::complex<double> DirichletCharacter::value(long n) const {
    long r = n % q_;
    if (r < 0) r += q_;
    if (r == 0) return 0.0;
    long e = (long(index_) * exp_of_[size_t(r)]) % (q_ - 1);
    return roots_[size_t(e)];
}

bool DirichletCharacter::is_even() const {
    // -1 = g^((q-1)/2), so chi(-1) = 1 iff index*(q-1)/2 = 0 mod (q-1).
    return (long(index_) * ((q_ - 1) / 2)) % (q_ - 1) == 0;
}

int DirichletCharacter::order() const {
    return int((q_ - 1) / std::gcd(long(index_), q_ - 1));
}

DirichletCharacter DirichletCharacter::conjugate() const {
    int conj_index = index_ == 0 ? 0 : int(q_ - 1 - index_);
    return DirichletCharacter(q_, conj_index);
}

std::vector<DirichletCharacter> character_group(long q) {
    std::vector<DirichletCharacter> group;
    if (!arith::is_prime(q) || q < 3)
        throw std::domain_error("character_group: modulus must be a prime >= 3");
    group.reserve(size_t(q - 1));
    for (int j = 0; j < q - 1; ++j) group.emplace_back(q, j);
    return group;
}

std::vector<DirichletCharacter> even_characters(long q) {
    std::vector<DirichletCharacter> evens;
    for (auto& chi : character_group(q))
        if (chi.is_even()) evens.push_back(chi);
    return evens;
}

GaussSumResult gauss_sum(const DirichletCharacter& chi) {
    long q = chi.modulus();
    std::complex<double> s = 0.0;
    for (long h = 1; h < q; ++h) {
        double t = 2.0 * std::numbers::pi * double(h) / double(q);
        s += chi.value(h) * std::complex<double>(std::cos(t), std::sin(t));
    }
    return {s, chi.is_principal()};
}

double even_orthogonality(long q, long h, long a) {
    if (h % q == 0 || a % q == 0)
        throw std::domain_error("even_orthogonality: arguments must be coprime to q");
    std::complex<double> s = 0.0;
    for (auto& chi : even_characters(q)) s += chi.value(a) * std::conj(chi.value(h));
    return s.real();
}

KroneckerCharacter::KroneckerCharacter(long D) : D_(D) {
    if (D == 1 || !arith::is_fundamental_discriminant(D))
        throw std::domain_error("KroneckerCharacter: D must be a fundamental discriminant != 1");
}

KroneckerCharacter kronecker_character(long D) { return KroneckerCharacter(D); }

GaussSumResult gauss_sum(const KroneckerCharacter& chi) {
    long q = chi.modulus();
    std::complex<double> s = 0.0;
    for (long h = 1; h < q; ++h) {
        double t = 2.0 * std::numbers::pi * double(h) / double(q);
        s += chi.real_value(h) * std::complex<double>(std::cos(t), std::sin(t));
    }
    return {s, false};
}

}  // namespace rieszsum::chars
