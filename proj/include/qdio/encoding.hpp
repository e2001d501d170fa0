#pragma once

// Diophantine equation -> digitized control problem.

#include <optional>
#include <string>
#include <vector>

#include "qdio/channels.hpp"
#include "qdio/diophantine.hpp"

namespace qdio {

// Largest Hilbert-space dimension an encoding will build.
inline constexpr std::size_t kMaxEncodingDim = 10'000;

// Cyclic X x X shift, S|e_k> = |e_{k+1}>, S|e_X> = |e_1>.
Matrix shift_matrix(std::size_t levels);
// diag(first, first+1, ..., first+levels-1).
Matrix index_matrix(std::size_t levels, long first = 1);
// 1 x ... x op x ... x 1 with `op` on mode `mode` (0-based) of `modes`.
Matrix embed(const Matrix& op, std::size_t mode, std::size_t modes);
// D evaluated on commuting dim x dim matrices, one per variable.
Matrix evaluate_on_matrices(const DioPolynomial& d, std::span<const Matrix> vars, std::size_t dim);

enum class Scheme { shift, damping, coherent };
std::string to_string(Scheme s);
Scheme parse_scheme(std::string_view text);

// A bounded encoding. Mode l holds one level per value in [lowest, bound];
// channel 0 is the identity and channel l (1..n) acts on mode l.
struct ShiftEncoding {
  ControlProblem problem;
  Scheme scheme = Scheme::shift;
  std::size_t n = 0;
  std::size_t bound = 0;
  std::size_t policy_length = 0;
  Positivity positivity = Positivity::positive;
  std::vector<std::string> warnings;

  std::size_t levels() const { return bound - lowest() + 1; }
  long lowest() const { return positivity == Positivity::positive ? 1 : 0; }

  // Per-channel application counts of a policy (index l-1 for channel l).
  std::vector<std::size_t> counts(const Policy& p) const;
  // Tuple encoded by the state a policy reaches. Shift counts wrap modulo the
  // level count; damping counts saturate at the lowest level.
  Tuple decode(const Policy& p) const;
  // Canonical policy realizing the given per-channel counts: channel 1
  // repeated counts[0] times, then channel 2, ..., padded with channel 0.
  Policy canonical_policy(std::span<const std::size_t> counts) const;
};

// Unitary shift construction: rho0 at the lowest tuple, each channel
// increments one variable, observable -D(Xi_1..Xi_n)^2.
ShiftEncoding shift_encoding(const DioPolynomial& d, std::size_t bound, std::optional<std::size_t> policy_length = {},
                             Positivity positivity = Positivity::positive);

// Amplitude-damping construction: rho0 at the highest tuple, each channel
// moves one variable down a level with the lowest level stationary.
ShiftEncoding damping_encoding(const DioPolynomial& d, std::size_t bound, std::optional<std::size_t> policy_length = {},
                               Positivity positivity = Positivity::positive);

// Kraus operators of the single-mode damping map: |e1><e1| and |e_{k-1}><e_k|.
std::vector<Matrix> damping_kraus(std::size_t levels);

}  // namespace qdio
