#pragma once

// Exact rational and Gaussian-rational scalars and dense matrices.

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qdio {

using Integer = mpz_class;
// mpq_class keeps numerator/denominator canonical after every operation.
using Rational = mpq_class;

Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

// Complex number with rational real and imaginary parts.
class Complex {
 public:
  Complex() = default;
  Complex(long re) : re_(re) {}  // NOLINT: implicit from integers is convenient
  Complex(Rational re) : re_(std::move(re)) {}  // NOLINT
  Complex(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }

  Complex conj() const { return {re_, -im_}; }
  Rational norm_sq() const { return Rational(re_ * re_ + im_ * im_); }

  Complex& operator+=(const Complex& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  Complex& operator-=(const Complex& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  Complex& operator*=(const Complex& o);
  Complex& operator/=(const Complex& o);

  // Accumulates a*b without temporaries for the real-only fast path.
  void add_product(const Complex& a, const Complex& b);

  friend Complex operator+(Complex a, const Complex& b) { return a += b; }
  friend Complex operator-(Complex a, const Complex& b) { return a -= b; }
  friend Complex operator*(Complex a, const Complex& b) { return a *= b; }
  friend Complex operator/(Complex a, const Complex& b) { return a /= b; }
  friend Complex operator-(const Complex& a) { return {-a.re_, -a.im_}; }
  friend bool operator==(const Complex& a, const Complex& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

  static Complex i() { return {Rational(0), Rational(1)}; }

 private:
  Rational re_;
  Rational im_;
};

// Text form: "p/q" for reals, "p/q+r/s i" for complex values.
Complex parse_complex(std::string_view text);
std::string to_string(const Complex& z);
std::ostream& operator<<(std::ostream& os, const Complex& z);

// Dense row-major matrix of Complex entries.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static Matrix identity(std::size_t n);
  static Matrix zero(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }
  static Matrix diagonal(std::span<const Complex> entries);
  static Matrix column(std::span<const Complex> entries);
  // |u><v| for column vectors given as entry lists.
  static Matrix outer(std::span<const Complex> u, std::span<const Complex> v);
  // |e_k><e_k| with 0-based k.
  static Matrix basis_projector(std::size_t dim, std::size_t k);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  std::span<const Complex> entries() const { return data_; }

  Matrix& operator+=(const Matrix& o);
  Matrix& operator-=(const Matrix& o);
  Matrix& operator*=(const Complex& s);

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, const Complex& s) { return a *= s; }
  friend Matrix operator*(const Complex& s, Matrix a) { return a *= s; }
  friend Matrix operator-(Matrix a) { return a *= Complex(-1); }
  friend bool operator==(const Matrix& a, const Matrix& b) = default;

  bool is_zero() const;
  bool is_hermitian() const;
  bool is_unitary() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

// Throws std::invalid_argument on shape mismatch. Zero entries are skipped,
// which keeps the permutation-heavy encodings cheap.
Matrix mat_mul(const Matrix& a, const Matrix& b);
inline Matrix operator*(const Matrix& a, const Matrix& b) { return mat_mul(a, b); }

Matrix dagger(const Matrix& a);
// Block order is a-index major: entry (i*b.rows+k, j*b.cols+l) = a(i,j)*b(k,l).
Matrix kron(const Matrix& a, const Matrix& b);
Complex trace(const Matrix& a);
// Tr(a*b) without forming the product.
Complex trace_product(const Matrix& a, const Matrix& b);
// Squared Hilbert-Schmidt norm, sum of |a_ij|^2.
Rational hs_norm_sq(const Matrix& a);
Matrix inverse(const Matrix& a);
Matrix power(const Matrix& a, unsigned k);

// Coefficients c_0..c_n of det(x I - a) = sum_k c_k x^k (c_n = 1).
std::vector<Complex> characteristic_polynomial(const Matrix& a);

// Exact positive-semidefiniteness test for Hermitian matrices via the signs
// of the elementary symmetric functions of the eigenvalues. Throws
// std::invalid_argument for non-Hermitian input.
bool psd_check(const Matrix& a);

std::ostream& operator<<(std::ostream& os, const Matrix& m);

}  // namespace qdio
