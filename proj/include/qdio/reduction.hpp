#pragma once

// Compiles a digitized control problem into a Diophantine equation whose
// integer solutions are exactly the accessible optimal policies.

#include <string>
#include <utility>
#include <vector>

#include "qdio/channels.hpp"
#include "qdio/diophantine.hpp"
#include "qdio/polynomial.hpp"

namespace qdio {

// Matrix-valued polynomial sum_k coeffs[k] * i^k in one integer variable.
struct MatrixPolynomial {
  std::vector<Matrix> coeffs;

  Matrix evaluate(const Rational& i) const;
};

// For each Kraus slot j (lists padded with zero matrices to the longest
// channel) the Lagrange polynomial through (node_l, K_{l,j}), where channel l
// (0-based position in `channels`) sits at node first_node + l.
std::vector<MatrixPolynomial> lagrange_interpolate(std::span<const Channel> channels, long first_node = 1);

// Expansion guard: symbolic objectives refuse policy lengths above this.
inline constexpr std::size_t kMaxSymbolicLength = 6;

// Symbolic objectives over unknowns p_1..p_P. Each unknown takes the value of
// the problem's channel index at that step, so the polynomial agrees with
// objective_F / objective_J at every point of {0..N-1}^P. The state entries
// have degree below N in every unknown, which makes them the unique such
// interpolants; F is a sum of squares of those entries.
RatPolynomial symbolic_F(const ControlProblem& prob, std::size_t length);
RatPolynomial symbolic_J(const ControlProblem& prob, std::size_t length);

// Nonnegative polynomial in the first P of `nvars` unknowns that vanishes
// exactly on the accessible set. Explicit sets give the product over members
// of sum_k (p_k - p'_k)^2; grids give sum_k prod_v (p_k - v)^2.
RatPolynomial accessibility_term(const PolicySet& ap, std::size_t length, std::size_t nvars);
inline RatPolynomial accessibility_term(const PolicySet& ap, std::size_t length) {
  return accessibility_term(ap, length, length);
}

struct ReductionResult {
  DioPolynomial equation;
  // Diophantine variable name (x1, x2, ...) to role (p1, ..., a1, ..., b4).
  std::vector<std::pair<std::string, std::string>> variable_legend;
  std::size_t policy_length = 0;
  std::vector<std::string> ancillas;
  // equation = scale * (rational polynomial before clearing denominators).
  Rational scale;
  RatPolynomial rational_form;
};

// F + access = 0 for state targets, J^2 + access = 0 for observables.
ReductionResult exact_equation(const ControlProblem& prob, std::size_t length);

// [(1 + sum b_i^2)(G - eps) + (1 + sum a_i^2)]^2 + access = 0 with G = J^2 or
// F. Solvable iff some accessible policy has G < eps. The unknowns are
// p_1..p_P, a_1..a_4, b_1..b_4 in that order.
ReductionResult epsilon_equation(const ControlProblem& prob, std::size_t length, const Rational& eps);

// The objective polynomial G used by both equations (J^2 or F).
RatPolynomial objective_polynomial(const ControlProblem& prob, std::size_t length);

}  // namespace qdio
