#include "qdio/diophantine.hpp"

#include <cctype>
#include <map>
#include <stdexcept>
#include <thread>

#include "qdio/errors.hpp"

namespace qdio {

std::string to_string(Positivity p) { return p == Positivity::positive ? "positive" : "nonnegative"; }

Positivity parse_positivity(std::string_view text) {
  if (text == "positive") return Positivity::positive;
  if (text == "nonnegative") return Positivity::nonnegative;
  throw ParseError("unknown positivity '" + std::string(text) + "'");
}

namespace {

class DioParser {
 public:
  explicit DioParser(std::string_view text) : text_(text) {}

  DioPolynomial parse() {
    skip_ws();
    if (pos_ == text_.size()) throw ParseError("empty polynomial", pos_);
    bool negative = false;
    if (peek() == '+' || peek() == '-') {
      negative = peek() == '-';
      ++pos_;
    }
    parse_term(negative);
    while (true) {
      skip_ws();
      if (pos_ == text_.size()) break;
      const char c = peek();
      if (c != '+' && c != '-') throw ParseError(std::string("expected '+' or '-', found '") + c + "'", pos_);
      ++pos_;
      parse_term(c == '-');
    }

    DioPolynomial out(max_index_);
    for (auto& [coeff, powers] : terms_) {
      Monomial m(max_index_, 0);
      for (const auto& [idx, e] : powers) m[idx - 1] += e;
      out.add_term(std::move(m), coeff);
    }
    return out;
  }

 private:
  char peek() const { return text_[pos_]; }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  Integer parse_integer() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) throw ParseError("expected integer", start);
    return Integer(std::string(text_.substr(start, pos_ - start)));
  }

  std::uint32_t parse_small(const char* what) {
    const std::size_t start = pos_;
    Integer v = parse_integer();
    if (!v.fits_uint_p()) throw ParseError(std::string(what) + " too large", start);
    return static_cast<std::uint32_t>(v.get_ui());
  }

  void parse_term(bool negative) {
    Integer coeff(negative ? -1 : 1);
    std::map<std::uint32_t, std::uint32_t> powers;
    parse_factor(coeff, powers);
    while (true) {
      skip_ws();
      if (pos_ < text_.size() && peek() == '*') {
        ++pos_;
        parse_factor(coeff, powers);
      } else {
        break;
      }
    }
    terms_.emplace_back(std::move(coeff), std::move(powers));
  }

  void parse_factor(Integer& coeff, std::map<std::uint32_t, std::uint32_t>& powers) {
    skip_ws();
    if (pos_ == text_.size()) throw ParseError("unexpected end of input", pos_);
    if (peek() == 'x') {
      ++pos_;
      const std::size_t idx_pos = pos_;
      if (pos_ == text_.size() || !std::isdigit(static_cast<unsigned char>(peek()))) {
        throw ParseError("expected variable index after 'x'", pos_);
      }
      const std::uint32_t idx = parse_small("variable index");
      if (idx == 0) throw ParseError("variables are numbered from x1", idx_pos);
      std::uint32_t exponent = 1;
      skip_ws();
      if (pos_ < text_.size() && peek() == '^') {
        ++pos_;
        exponent = parse_small("exponent");
      }
      powers[idx] += exponent;
      max_index_ = std::max<std::size_t>(max_index_, idx);
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      coeff *= parse_integer();
      return;
    }
    throw ParseError(std::string("unexpected character '") + peek() + "'", pos_);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t max_index_ = 0;
  std::vector<std::pair<Integer, std::map<std::uint32_t, std::uint32_t>>> terms_;
};

void enumerate_range(const DioPolynomial& p, unsigned long lo, unsigned long hi, unsigned long first_lo,
                     unsigned long first_hi, std::vector<Tuple>& out) {
  const std::size_t n = p.nvars();
  Tuple point(n);
  std::vector<unsigned long> idx(n, lo);
  idx[0] = first_lo;
  if (first_lo > first_hi) return;
  while (true) {
    for (std::size_t k = 0; k < n; ++k) point[k] = idx[k];
    if (poly_eval(p, point) == 0) out.push_back(point);
    std::size_t k = n;
    while (k > 0) {
      --k;
      const unsigned long top = k == 0 ? first_hi : hi;
      if (idx[k] < top) {
        ++idx[k];
        break;
      }
      idx[k] = k == 0 ? first_lo : lo;
      if (k == 0) return;
    }
  }
}

}  // namespace

DioPolynomial parse_dio(std::string_view text) { return DioParser(text).parse(); }

Integer poly_eval(const DioPolynomial& p, std::span<const Integer> point) { return p.evaluate(point); }

std::vector<Tuple> enumerate_solutions(const DioPolynomial& p, const Integer& bound, Positivity positivity,
                                       unsigned jobs) {
  if (bound < 1) throw std::invalid_argument("enumerate_solutions: bound must be >= 1");
  if (!bound.fits_ulong_p()) throw LimitError("enumerate_solutions: bound too large");
  if (p.nvars() == 0) {
    if (p.is_zero()) return {Tuple{}};
    return {};
  }
  const unsigned long lo = positivity == Positivity::positive ? 1 : 0;
  const unsigned long hi = bound.get_ui();
  const unsigned long width = hi - lo + 1;
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::min<unsigned long>(width, 64))));

  std::vector<std::vector<Tuple>> parts(jobs);
  auto run = [&](unsigned w) {
    const unsigned long a = lo + width * w / jobs;
    const unsigned long b = lo + width * (w + 1) / jobs;
    if (a < b) enumerate_range(p, lo, hi, a, b - 1, parts[w]);
  };
  if (jobs == 1) {
    run(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < jobs; ++w) pool.emplace_back(run, w);
    for (auto& t : pool) t.join();
  }
  std::vector<Tuple> out;
  for (auto& part : parts) {
    out.insert(out.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
  }
  return out;
}

std::array<Integer, 4> four_square(const Integer& m) {
  if (m < 0) throw std::invalid_argument("four_square of a negative integer");
  auto isqrt = [](const Integer& v) {
    Integer r;
    mpz_sqrt(r.get_mpz_t(), v.get_mpz_t());
    return r;
  };
  // Largest component first; each component squared is at least the mean of
  // what remains, which bounds every loop.
  for (Integer a1 = isqrt(m); 4 * a1 * a1 >= m; --a1) {
    const Integer r1 = m - a1 * a1;
    for (Integer a2 = std::min(a1, isqrt(r1)); 3 * a2 * a2 >= r1; --a2) {
      const Integer r2 = r1 - a2 * a2;
      for (Integer a3 = std::min(a2, isqrt(r2)); 2 * a3 * a3 >= r2; --a3) {
        const Integer r3 = r2 - a3 * a3;
        const Integer a4 = isqrt(r3);
        if (a4 * a4 == r3 && a4 <= a3) return {a1, a2, a3, a4};
        if (a3 == 0) break;
      }
      if (a2 == 0) break;
    }
    if (a1 == 0) break;
  }
  throw std::logic_error("four_square: no decomposition found");
}

ClearedPolynomial clear_denominators(const RatPolynomial& p) {
  Integer lcm(1);
  for (const auto& [m, c] : p.terms()) {
    mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.get_den_mpz_t());
  }
  DioPolynomial out(p.nvars());
  for (const auto& [m, c] : p.terms()) {
    Rational scaled = c * lcm;
    out.add_term(m, scaled.get_num());
  }
  return {std::move(out), Rational(lcm)};
}

}  // namespace qdio
