#pragma once

// Brute-force oracles over finite policy sets and bounded coherent counts.

#include <optional>
#include <vector>

#include "qdio/channels.hpp"
#include "qdio/coherent.hpp"
#include "qdio/diophantine.hpp"
#include "qdio/encoding.hpp"

namespace qdio {

inline constexpr std::size_t kMaxPolicies = 10'000'000;

enum class Goal { maximize, minimize };

struct SearchReport {
  Goal goal = Goal::maximize;
  Rational optimal_value;
  // Policies (or coherent count tuples) attaining optimal_value, sorted
  // lexicographically.
  std::vector<std::vector<std::size_t>> optimizers;
  std::size_t evaluations = 0;
  // True iff the whole declared set was enumerated. Bounded coherent sweeps
  // over an infinite set always report false.
  bool exhausted = false;
  // Coherent sweeps: first J = 0 tuple in graded-lex order, if any.
  std::optional<std::vector<std::size_t>> first_zero;
  std::vector<std::vector<std::size_t>> zeros;

  friend bool operator==(const SearchReport&, const SearchReport&) = default;
};

// Exact max J (observable) or min F (state) over the accessible set with all
// optimizers. Work is split by first policy step over `jobs` threads; the
// report does not depend on `jobs`.
SearchReport grid_search(const ControlProblem& prob, unsigned jobs = 1);

// Sweeps count tuples with components in [lo, bound] (lo = 1 for positive,
// 0 for nonnegative) in graded-lex order.
SearchReport coherent_search(const CoherentProblem& prob, std::size_t bound,
                             Positivity positivity = Positivity::nonnegative);

struct EquivalenceReport {
  Scheme scheme = Scheme::shift;
  Positivity positivity = Positivity::positive;
  std::size_t bound = 0;
  bool equal = false;
  std::vector<Tuple> control_tuples;
  std::vector<Tuple> oracle_tuples;
  std::size_t evaluations = 0;
};

Positivity default_positivity(Scheme s);

// Compares the tuples decoded from J = 0 controls of the chosen encoding with
// enumerate_solutions(d, bound, positivity). Shift and damping encodings are
// searched over per-channel counts capped at the level count minus one, each
// count tuple simulated through its canonical policy; coherent problems are
// swept over [lo, bound]^n.
EquivalenceReport verify_equivalence(const DioPolynomial& d, std::size_t bound, Scheme scheme,
                                     std::optional<Positivity> positivity = {}, unsigned jobs = 1);

}  // namespace qdio
