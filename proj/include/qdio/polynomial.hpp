#pragma once

// Sparse multivariate polynomials over Integer or Rational coefficients.
//
// Terms are kept in a map keyed by exponent vector under graded-lex order,
// so zero coefficients never survive and iteration (reversed) yields the
// canonical highest-degree-first rendering.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "qdio/exact.hpp"

namespace qdio {

using Monomial = std::vector<std::uint32_t>;

inline std::uint64_t total_degree(const Monomial& m) {
  return std::accumulate(m.begin(), m.end(), std::uint64_t{0});
}

// Ascending graded-lex: lower total degree first, ties broken by
// lexicographic comparison of the exponent vectors.
struct GradedLex {
  bool operator()(const Monomial& a, const Monomial& b) const {
    const auto da = total_degree(a);
    const auto db = total_degree(b);
    if (da != db) return da < db;
    return a < b;
  }
};

template <class Coeff>
class Polynomial {
 public:
  using TermMap = std::map<Monomial, Coeff, GradedLex>;

  Polynomial() = default;
  explicit Polynomial(std::size_t nvars) : nvars_(nvars) {}

  static Polynomial constant(std::size_t nvars, const Coeff& c) {
    Polynomial p(nvars);
    p.add_term(Monomial(nvars, 0), c);
    return p;
  }

  // The single variable with 0-based index `var`.
  static Polynomial variable(std::size_t nvars, std::size_t var) {
    if (var >= nvars) throw std::out_of_range("variable index out of range");
    Monomial m(nvars, 0);
    m[var] = 1;
    Polynomial p(nvars);
    p.add_term(std::move(m), Coeff(1));
    return p;
  }

  std::size_t nvars() const { return nvars_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  Coeff coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Coeff(0) : it->second;
  }

  Coeff constant_term() const { return coefficient(Monomial(nvars_, 0)); }

  std::uint64_t degree() const { return terms_.empty() ? 0 : total_degree(terms_.rbegin()->first); }

  void add_term(Monomial m, const Coeff& c) {
    if (m.size() != nvars_) throw std::invalid_argument("monomial arity mismatch");
    if (sgn(c) == 0) return;
    auto [it, inserted] = terms_.try_emplace(std::move(m), c);
    if (!inserted) {
      it->second += c;
      if (sgn(it->second) == 0) terms_.erase(it);
    }
  }

  // Same polynomial viewed in a space with more trailing variables.
  Polynomial widened(std::size_t nvars) const {
    if (nvars < nvars_) throw std::invalid_argument("cannot narrow a polynomial");
    Polynomial out(nvars);
    for (const auto& [m, c] : terms_) {
      Monomial wide = m;
      wide.resize(nvars, 0);
      out.terms_.emplace_hint(out.terms_.end(), std::move(wide), c);
    }
    return out;
  }

  Polynomial& operator+=(const Polynomial& o) {
    check_arity(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    check_arity(o);
    for (const auto& [m, c] : o.terms_) add_term(m, Coeff(-c));
    return *this;
  }
  Polynomial& operator*=(const Coeff& s) {
    if (sgn(s) == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [m, c] : terms_) c *= s;
    return *this;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator-(Polynomial a) { return a *= Coeff(-1); }
  friend Polynomial operator*(Polynomial a, const Coeff& s) { return a *= s; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    a.check_arity(b);
    Polynomial out(a.nvars_);
    Monomial m(a.nvars_);
    for (const auto& [ma, ca] : a.terms_) {
      for (const auto& [mb, cb] : b.terms_) {
        for (std::size_t k = 0; k < m.size(); ++k) m[k] = ma[k] + mb[k];
        out.add_term(m, Coeff(ca * cb));
      }
    }
    return out;
  }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

  Polynomial pow(unsigned k) const {
    Polynomial result = constant(nvars_, Coeff(1));
    Polynomial base = *this;
    while (k > 0) {
      if (k & 1u) result *= base;
      k >>= 1u;
      if (k > 0) base *= base;
    }
    return result;
  }

  // Exact evaluation at an integer point.
  template <class Value = Coeff>
  Value evaluate(std::span<const Integer> point) const {
    if (point.size() != nvars_) {
      throw std::invalid_argument("evaluation point has " + std::to_string(point.size()) + " components, expected " +
                                  std::to_string(nvars_));
    }
    Value sum(0);
    Integer power;
    for (const auto& [m, c] : terms_) {
      Value term(c);
      for (std::size_t k = 0; k < nvars_; ++k) {
        if (m[k] == 0) continue;
        mpz_pow_ui(power.get_mpz_t(), point[k].get_mpz_t(), m[k]);
        term *= power;
      }
      sum += term;
    }
    return sum;
  }

  // Canonical text, highest graded-lex term first: "3*x1^2*x2 - 7*x3 + 5".
  std::string render(std::span<const std::string> names = {}) const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const auto& [m, c] = *it;
      const bool negative = sgn(c) < 0;
      if (first) {
        if (negative) out += "-";
      } else {
        out += negative ? " - " : " + ";
      }
      first = false;
      Coeff mag = c;
      if (negative) mag = -mag;
      std::string factors;
      for (std::size_t k = 0; k < nvars_; ++k) {
        if (m[k] == 0) continue;
        if (!factors.empty()) factors += "*";
        factors += k < names.size() ? names[k] : "x" + std::to_string(k + 1);
        if (m[k] > 1) factors += "^" + std::to_string(m[k]);
      }
      if (factors.empty()) {
        out += mag.get_str();
      } else if (mag == 1) {
        out += factors;
      } else {
        out += mag.get_str() + "*" + factors;
      }
    }
    return out;
  }

 private:
  void check_arity(const Polynomial& o) const {
    if (o.nvars_ != nvars_) throw std::invalid_argument("polynomial arity mismatch");
  }

  std::size_t nvars_ = 0;
  TermMap terms_;
};

using DioPolynomial = Polynomial<Integer>;
using RatPolynomial = Polynomial<Rational>;

}  // namespace qdio
