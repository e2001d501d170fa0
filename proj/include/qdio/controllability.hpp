#pragma once

#include <string>
#include <vector>

#include "qdio/channels.hpp"
#include "qdio/search.hpp"

namespace qdio {

inline constexpr std::size_t kMaxLieDim = 6;

struct HamiltonianPair {
  Matrix h0;
  Matrix v;
};

struct LieClosure {
  std::size_t dimension = 0;
  // Rank after each closure pass; the first entry is the generator rank.
  std::vector<std::size_t> rank_per_pass;
};

// Real Lie algebra generated by i*H0 and i*V (traceless parts) under
// commutators. Each skew-Hermitian matrix is flattened into 2d^2 rational
// coordinates and rank is tracked by exact Gaussian elimination.
LieClosure lie_closure(const HamiltonianPair& pair);
inline std::size_t lie_closure_dim(const HamiltonianPair& pair) { return lie_closure(pair).dimension; }

struct ControllabilityVerdict {
  std::size_t dim = 0;  // Hilbert-space dimension d
  std::size_t closure_dim = 0;
  std::size_t su_dim = 0;  // d^2 - 1
  std::optional<std::size_t> sp_dim;  // d(d+1)/2, even d only
  bool matches_su = false;
  bool matches_sp = false;
  bool controllable = false;
  std::string note;
};

// Dimension comparison against su(d) and sp(d/2). Matching dimension stands
// in for isomorphism.
ControllabilityVerdict is_controllable(const HamiltonianPair& pair);

// Kraus operators |psi><e_i|; maps every state to |psi><psi|.
Channel universal_reset(std::span<const Complex> psi);

using GateSet = std::vector<Matrix>;

// R = [[3/5, 4/5], [-4/5, 3/5]] and S = [[3/5, 4i/5], [4i/5, 3/5]] with their
// adjoints, in the order R, S, R^dagger, S^dagger.
GateSet default_gate_set();

// Searches (reset, g_1, ..., g_k), k = 0..max_len, by length then
// lexicographically, for |Tr(O rho) - j0| < eps. Exact throughout. Channel
// 0 is the reset and channel g+1 applies gate g. On success `optimizers`
// holds the first qualifying policy and `optimal_value` its J; otherwise
// `optimizers` is empty, `exhausted` is true and `optimal_value` is the J
// closest to j0 that was seen.
SearchReport epsilon_reach(const GateSet& gates, const DensityMatrix& rho0, const Matrix& observable,
                          const Rational& j0, const Rational& eps, std::size_t max_len,
                          std::span<const Complex> reset_target);

}  // namespace qdio
