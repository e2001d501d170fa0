#include "qdio/exact.hpp"

#include <algorithm>
#include <cctype>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "qdio/errors.hpp"

namespace qdio {

namespace {

std::string strip_spaces(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
  }
  return out;
}

bool valid_integer_text(std::string_view s) {
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) s.remove_prefix(1);
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string s = strip_spaces(text);
  if (!s.empty() && s.front() == '+') s.erase(0, 1);
  auto slash = s.find('/');
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid_integer_text(num) || !valid_integer_text(den) || den.front() == '-' || den.front() == '+') {
    throw ParseError("malformed rational '" + std::string(text) + "'");
  }
  Integer d(den);
  if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  Rational q(Integer(num), d);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }
std::string to_string(const Integer& z) { return z.get_str(); }

Complex& Complex::operator*=(const Complex& o) {
  if (sgn(im_) == 0 && sgn(o.im_) == 0) {
    re_ *= o.re_;
    return *this;
  }
  Rational re = re_ * o.re_ - im_ * o.im_;
  Rational im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

Complex& Complex::operator/=(const Complex& o) {
  if (o.is_zero()) throw std::domain_error("division by zero");
  if (sgn(o.im_) == 0) {
    re_ /= o.re_;
    im_ /= o.re_;
    return *this;
  }
  Rational den = o.norm_sq();
  *this *= o.conj();
  re_ /= den;
  im_ /= den;
  return *this;
}

void Complex::add_product(const Complex& a, const Complex& b) {
  if (sgn(a.im_) == 0 && sgn(b.im_) == 0) {
    re_ += a.re_ * b.re_;
    return;
  }
  re_ += a.re_ * b.re_;
  re_ -= a.im_ * b.im_;
  im_ += a.re_ * b.im_;
  im_ += a.im_ * b.re_;
}

Complex parse_complex(std::string_view text) {
  std::string s = strip_spaces(text);
  if (s.empty()) throw ParseError("empty scalar");
  if (s.back() != 'i') return Complex(parse_rational(s));

  std::string body = s.substr(0, s.size() - 1);
  // Split at the last sign that starts the imaginary component.
  std::size_t split = std::string::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != '/') {
      split = k;
      break;
    }
  }
  std::string re_text = split == std::string::npos ? "0" : body.substr(0, split);
  std::string im_text = split == std::string::npos ? body : body.substr(split);
  if (im_text.empty() || im_text == "+") im_text = "1";
  if (im_text == "-") im_text = "-1";
  return {parse_rational(re_text), parse_rational(im_text)};
}

std::string to_string(const Complex& z) {
  if (z.is_real()) return to_string(z.re());
  std::string out = to_string(z.re());
  out += sgn(z.im()) < 0 ? "-" : "+";
  out += to_string(Rational(abs(z.im())));
  out += " i";
  return out;
}

std::ostream& operator<<(std::ostream& os, const Complex& z) { return os << to_string(z); }

Matrix::Matrix(std::initializer_list<std::initializer_list<Complex>> rows)
    : rows_(rows.size()), cols_(rows.size() == 0 ? 0 : rows.begin()->size()) {
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw std::invalid_argument("ragged matrix literal");
    data_.insert(data_.end(), row.begin(), row.end());
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t k = 0; k < n; ++k) m(k, k) = Complex(1);
  return m;
}

Matrix Matrix::diagonal(std::span<const Complex> entries) {
  Matrix m(entries.size(), entries.size());
  for (std::size_t k = 0; k < entries.size(); ++k) m(k, k) = entries[k];
  return m;
}

Matrix Matrix::column(std::span<const Complex> entries) {
  Matrix m(entries.size(), 1);
  for (std::size_t k = 0; k < entries.size(); ++k) m(k, 0) = entries[k];
  return m;
}

Matrix Matrix::outer(std::span<const Complex> u, std::span<const Complex> v) {
  Matrix m(u.size(), v.size());
  for (std::size_t r = 0; r < u.size(); ++r) {
    if (u[r].is_zero()) continue;
    for (std::size_t c = 0; c < v.size(); ++c) m(r, c) = u[r] * v[c].conj();
  }
  return m;
}

Matrix Matrix::basis_projector(std::size_t dim, std::size_t k) {
  if (k >= dim) throw std::out_of_range("basis index out of range");
  Matrix m(dim, dim);
  m(k, k) = Complex(1);
  return m;
}

Matrix& Matrix::operator+=(const Matrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix sum: shape mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) {
    if (!o.data_[k].is_zero()) data_[k] += o.data_[k];
  }
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix difference: shape mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) {
    if (!o.data_[k].is_zero()) data_[k] -= o.data_[k];
  }
  return *this;
}

Matrix& Matrix::operator*=(const Complex& s) {
  for (auto& z : data_) {
    if (!z.is_zero()) z *= s;
  }
  return *this;
}

bool Matrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Complex& z) { return z.is_zero(); });
}

bool Matrix::is_hermitian() const {
  if (!is_square()) return false;
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = r; c < cols_; ++c) {
      if (!((*this)(r, c) == (*this)(c, r).conj())) return false;
    }
  }
  return true;
}

bool Matrix::is_unitary() const {
  return is_square() && mat_mul(dagger(*this), *this) == identity(rows_);
}

Matrix mat_mul(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) {
    throw std::invalid_argument("mat_mul: " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                                " times " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  }
  Matrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex& aik = a(i, k);
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        const Complex& bkj = b(k, j);
        if (!bkj.is_zero()) out(i, j).add_product(aik, bkj);
      }
    }
  }
  return out;
}

Matrix dagger(const Matrix& a) {
  Matrix out(a.cols(), a.rows());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) {
      if (!a(r, c).is_zero()) out(c, r) = a(r, c).conj();
    }
  }
  return out;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Complex& aij = a(i, j);
      if (aij.is_zero()) continue;
      for (std::size_t k = 0; k < b.rows(); ++k) {
        for (std::size_t l = 0; l < b.cols(); ++l) {
          if (!b(k, l).is_zero()) out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
        }
      }
    }
  }
  return out;
}

Complex trace(const Matrix& a) {
  if (!a.is_square()) throw std::invalid_argument("trace of a non-square matrix");
  Complex t;
  for (std::size_t k = 0; k < a.rows(); ++k) t += a(k, k);
  return t;
}

Complex trace_product(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows() || a.rows() != b.cols()) throw std::invalid_argument("trace_product: shape mismatch");
  Complex t;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (!a(i, k).is_zero() && !b(k, i).is_zero()) t.add_product(a(i, k), b(k, i));
    }
  }
  return t;
}

Rational hs_norm_sq(const Matrix& a) {
  Rational s;
  for (const auto& z : a.entries()) {
    s += z.re() * z.re();
    s += z.im() * z.im();
  }
  return s;
}

Matrix inverse(const Matrix& a) {
  if (!a.is_square()) throw std::invalid_argument("inverse of a non-square matrix");
  const std::size_t n = a.rows();
  Matrix work = a;
  Matrix inv = Matrix::identity(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && work(pivot, col).is_zero()) ++pivot;
    if (pivot == n) throw std::domain_error("inverse of a singular matrix");
    if (pivot != col) {
      for (std::size_t c = 0; c < n; ++c) {
        std::swap(work(pivot, c), work(col, c));
        std::swap(inv(pivot, c), inv(col, c));
      }
    }
    const Complex scale = Complex(1) / work(col, col);
    for (std::size_t c = 0; c < n; ++c) {
      work(col, c) *= scale;
      inv(col, c) *= scale;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || work(r, col).is_zero()) continue;
      const Complex f = work(r, col);
      for (std::size_t c = 0; c < n; ++c) {
        work(r, c) -= f * work(col, c);
        inv(r, c) -= f * inv(col, c);
      }
    }
  }
  return inv;
}

Matrix power(const Matrix& a, unsigned k) {
  if (!a.is_square()) throw std::invalid_argument("power of a non-square matrix");
  Matrix result = Matrix::identity(a.rows());
  Matrix base = a;
  while (k > 0) {
    if (k & 1u) result = result * base;
    k >>= 1u;
    if (k > 0) base = base * base;
  }
  return result;
}

std::vector<Complex> characteristic_polynomial(const Matrix& a) {
  if (!a.is_square()) throw std::invalid_argument("characteristic polynomial of a non-square matrix");
  const std::size_t n = a.rows();
  // Faddeev-LeVerrier recursion.
  std::vector<Complex> c(n + 1);
  c[n] = Complex(1);
  Matrix m = Matrix::zero(n, n);
  const Matrix id = Matrix::identity(n);
  for (std::size_t k = 1; k <= n; ++k) {
    m = a * m + c[n - k + 1] * id;
    c[n - k] = -trace_product(a, m) / Complex(static_cast<long>(k));
  }
  return c;
}

bool psd_check(const Matrix& a) {
  if (!a.is_hermitian()) throw std::invalid_argument("psd_check requires a Hermitian matrix");
  const auto c = characteristic_polynomial(a);
  const std::size_t n = a.rows();
  // det(xI - A) = x^n - e1 x^{n-1} + e2 x^{n-2} - ...; PSD iff every e_k >= 0.
  for (std::size_t k = 1; k <= n; ++k) {
    const Complex& ck = c[n - k];
    if (!ck.is_real()) throw std::logic_error("non-real characteristic coefficient of a Hermitian matrix");
    const int sign = (k % 2 == 0) ? sgn(ck.re()) : -sgn(ck.re());
    if (sign < 0) return false;
  }
  return true;
}

std::ostream& operator<<(std::ostream& os, const Matrix& m) {
  os << '[';
  for (std::size_t r = 0; r < m.rows(); ++r) {
    if (r > 0) os << "; ";
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (c > 0) os << ", ";
      os << m(r, c);
    }
  }
  return os << ']';
}

}  // namespace qdio
