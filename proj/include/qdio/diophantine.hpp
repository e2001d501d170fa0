#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "qdio/exact.hpp"
#include "qdio/polynomial.hpp"

namespace qdio {

enum class Positivity { positive, nonnegative };

std::string to_string(Positivity p);
Positivity parse_positivity(std::string_view text);

using Tuple = std::vector<Integer>;

// Grammar (whitespace ignored):
//   polynomial := term (('+'|'-') term)*
//   term       := [integer '*']? factor ('*' factor)*
//   factor     := 'x' index ['^' exponent] | integer
// A leading sign is accepted on the first term. Variables are x1..xn with n
// the highest index mentioned. Throws ParseError with a byte offset.
DioPolynomial parse_dio(std::string_view text);
inline std::string render_dio(const DioPolynomial& p) { return p.render(); }

Integer poly_eval(const DioPolynomial& p, std::span<const Integer> point);

// All tuples in [1,bound]^n (positive) or [0,bound]^n (nonnegative) where
// p vanishes, in lexicographic order. `jobs` splits the first coordinate.
std::vector<Tuple> enumerate_solutions(const DioPolynomial& p, const Integer& bound, Positivity positivity,
                                       unsigned jobs = 1);

// a1^2+a2^2+a3^2+a4^2 = m with a1 >= a2 >= a3 >= a4 >= 0, the
// lexicographically largest such quadruple.
std::array<Integer, 4> four_square(const Integer& m);

struct ClearedPolynomial {
  DioPolynomial poly;
  // Positive factor with poly = scale * input.
  Rational scale;
};

// Multiplies by the lcm of the coefficient denominators.
ClearedPolynomial clear_denominators(const RatPolynomial& p);

}  // namespace qdio
