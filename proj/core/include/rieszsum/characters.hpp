#pragma once

// Dirichlet characters modulo a prime q, built on a primitive root so that
// every character value is a root of unity taken from one shared table.
// Products of characters then reduce to exact exponent additions, which keeps
// long character convolutions free of phase drift.

#include <complex>
#include <vector>

#include "rieszsum/arith.hpp"

namespace rieszsum::chars {

long primitive_root(long q);

class DirichletCharacter {
  public:
    // Character chi_j modulo prime q >= 3 with chi(g) = e^{2 pi i j/(q-1)}
    // for the smallest primitive root g.
    DirichletCharacter(long q, int index);

    long modulus() const { return q_; }
    int index() const { return index_; }
    bool is_principal() const { return index_ == 0; }
    bool is_even() const;  // chi(-1) = 1
    int order() const;

    std::complex<double> value(long n) const;
    DirichletCharacter conjugate() const;

  private:
    long q_;
    int index_;
    std::vector<int> exp_of_;                   // discrete log base g, for 1..q-1
    std::vector<std::complex<double>> roots_;   // e^{2 pi i k/(q-1)}
};

// All q-1 characters mod prime q, ordered by index (principal first).
std::vector<DirichletCharacter> character_group(long q);

std::vector<DirichletCharacter> even_characters(long q);

struct GaussSumResult {
    std::complex<double> value;
    bool principal;  // set when the input was the principal character (sum is -1)
};

// G(chi) = sum_{h=1}^{q-1} chi(h) e^{2 pi i h/q}.
GaussSumResult gauss_sum(const DirichletCharacter& chi);

// sum_{chi even} chi(a) conj(chi(h)): phi(q)/2 when a = +-h (mod q), else 0.
double even_orthogonality(long q, long h, long a);

// The real primitive character n -> (D|n) attached to a fundamental
// discriminant. |D| may be composite, so this is structurally separate from
// the primitive-root construction; the identity engines only need pointwise
// values from it.
class KroneckerCharacter {
  public:
    explicit KroneckerCharacter(long D);

    long discriminant() const { return D_; }
    long modulus() const { return D_ < 0 ? -D_ : D_; }
    bool is_principal() const { return false; }
    bool is_even() const { return D_ > 0; }

    std::complex<double> value(long n) const {
        return std::complex<double>(double(arith::kronecker(D_, n)), 0.0);
    }
    double real_value(long n) const { return double(arith::kronecker(D_, n)); }

  private:
    long D_;
};

KroneckerCharacter kronecker_character(long D);

GaussSumResult gauss_sum(const KroneckerCharacter& chi);

}  // namespace rieszsum::chars
