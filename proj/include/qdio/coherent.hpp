#pragma once

// Multimode coherent-state encoding. Each control displaces one mode by one,
// so the reachable states are coherent states |c_1, ..., c_n> with
// nonnegative integer amplitudes and the observable -D(a)^dagger D(a) has
// expectation -D(c)^2 on them.

#include <cstddef>
#include <span>
#include <vector>

#include "qdio/diophantine.hpp"

namespace qdio {

struct CoherentProblem {
  DioPolynomial dio;

  std::size_t modes() const { return dio.nvars(); }
};

CoherentProblem coherent_encoding(const DioPolynomial& d);

// Amplitudes reached by a policy over channels 1..n (0 is the identity).
std::vector<std::size_t> coherent_counts(const CoherentProblem& prob, std::span<const std::size_t> policy);

// -D(counts)^2.
Rational coherent_objective(const CoherentProblem& prob, std::span<const Integer> counts);

// Smallest truncation fock_validate accepts for the given counts.
std::size_t min_fock_truncation(std::span<const Integer> counts);

// |<O>_numeric - coherent_objective| where the numeric value comes from
// truncated Fock-space operators: a, exp(a^dagger - a) by matrix
// exponential, the displacements applied to the vacuum, and
// <psi| D(a)^dagger D(a) |psi> in double precision.
double fock_validate(const CoherentProblem& prob, std::span<const Integer> counts, std::size_t truncation);

// D = alpha x1^2 + beta x2 - gamma.
CoherentProblem kerr_example(long alpha, long beta, long gamma);
// D = x1^2 - n^2 x2^2 - 1.
CoherentProblem pell_example(long n);

}  // namespace qdio
