#pragma once

// Seeded generators of exact random instances for property tests.

#include <random>
#include <vector>

#include "qdio/channels.hpp"
#include "qdio/diophantine.hpp"

namespace qdio::testing {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  long uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(gen_); }
  std::size_t index(std::size_t n) { return static_cast<std::size_t>(uniform(0, static_cast<long>(n) - 1)); }

  Rational rational(long num_range, long max_den) {
    Rational q(uniform(-num_range, num_range), uniform(1, max_den));
    q.canonicalize();
    return q;
  }
  Complex complex(long num_range, long max_den) { return {rational(num_range, max_den), rational(num_range, max_den)}; }

  std::mt19937_64& engine() { return gen_; }

 private:
  std::mt19937_64 gen_;
};

inline Matrix random_hermitian(Rng& rng, std::size_t n, long num_range = 2, long max_den = 3) {
  Matrix h(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    h(r, r) = Complex(rng.rational(num_range, max_den));
    for (std::size_t c = r + 1; c < n; ++c) {
      h(r, c) = rng.complex(num_range, max_den);
      h(c, r) = h(r, c).conj();
    }
  }
  return h;
}

// Cayley transform (I - iH)(I + iH)^{-1}: exactly unitary for Hermitian H.
inline Matrix random_unitary(Rng& rng, std::size_t n) {
  const Matrix h = random_hermitian(rng, n);
  const Matrix ih = h * Complex::i();
  const Matrix id = Matrix::identity(n);
  return (id - ih) * inverse(id + ih);
}

// Kraus operators are the d x d row blocks of the first d columns of a
// (d*m)-dimensional unitary, so sum K^dagger K = I.
inline Channel random_channel(Rng& rng, std::size_t d, std::size_t kraus_count) {
  const Matrix u = random_unitary(rng, d * kraus_count);
  std::vector<Matrix> kraus;
  for (std::size_t j = 0; j < kraus_count; ++j) {
    Matrix k(d, d);
    for (std::size_t r = 0; r < d; ++r) {
      for (std::size_t c = 0; c < d; ++c) k(r, c) = u(j * d + r, c);
    }
    kraus.push_back(std::move(k));
  }
  return Channel(std::move(kraus));
}

// Convex combination of the projectors onto the columns of a random unitary.
inline DensityMatrix random_density(Rng& rng, std::size_t d) {
  const Matrix u = random_unitary(rng, d);
  std::vector<long> w(d);
  long total = 0;
  for (auto& x : w) total += (x = rng.uniform(0, 4));
  if (total == 0) w[0] = total = 1;
  Matrix rho(d, d);
  for (std::size_t k = 0; k < d; ++k) {
    std::vector<Complex> col(d);
    for (std::size_t r = 0; r < d; ++r) col[r] = u(r, k);
    Rational weight(w[k], total);
    weight.canonicalize();
    rho += Matrix::outer(col, col) * Complex(weight);
  }
  return DensityMatrix(std::move(rho));
}

inline DioPolynomial random_dio(Rng& rng, std::size_t nvars, unsigned max_degree, long coeff_range = 5) {
  DioPolynomial p(nvars);
  const std::size_t terms = 1 + rng.index(4);
  for (std::size_t t = 0; t < terms; ++t) {
    Monomial m(nvars, 0);
    const unsigned deg = static_cast<unsigned>(rng.uniform(0, max_degree));
    for (unsigned k = 0; k < deg; ++k) ++m[rng.index(nvars)];
    p.add_term(m, Integer(rng.uniform(-coeff_range, coeff_range)));
  }
  return p;
}

}  // namespace qdio::testing
