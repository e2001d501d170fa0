#pragma once

// Digitized quantum control: Kraus channels, integer control policies and
// the two objectives (observable expectation J, state distance F).

#include <cstddef>
#include <optional>
#include <variant>
#include <vector>

#include "qdio/exact.hpp"

namespace qdio {

// Completely positive trace-preserving map in operator-sum form. The
// constructor certifies sum_j K_j^dagger K_j = I exactly.
class Channel {
 public:
  explicit Channel(std::vector<Matrix> kraus);

  static Channel identity(std::size_t dim);
  static Channel unitary(const Matrix& u);

  std::size_t dim() const { return kraus_.front().rows(); }
  const std::vector<Matrix>& kraus() const { return kraus_; }

  friend bool operator==(const Channel&, const Channel&) = default;

 private:
  std::vector<Matrix> kraus_;
};

bool is_trace_preserving(std::span<const Matrix> kraus);

// Hermitian, unit-trace, positive-semidefinite matrix.
class DensityMatrix {
 public:
  explicit DensityMatrix(Matrix m);

  static DensityMatrix pure(std::span<const Complex> psi);
  static DensityMatrix basis_state(std::size_t dim, std::size_t k);

  const Matrix& matrix() const { return mat_; }
  std::size_t dim() const { return mat_.rows(); }

  friend bool operator==(const DensityMatrix&, const DensityMatrix&) = default;

 private:
  struct Trusted {};
  DensityMatrix(Matrix m, Trusted) : mat_(std::move(m)) {}
  friend DensityMatrix apply_channel(const Channel& c, const DensityMatrix& rho);

  Matrix mat_;
};

// Runs the full validity check (Hermitian, trace one, PSD).
bool is_density_matrix(const Matrix& m);

using Policy = std::vector<std::size_t>;

// Set of accessible policies: an explicit list or a full Cartesian power
// values^length.
struct GridPolicies {
  std::vector<std::size_t> values;  // sorted, duplicate-free
  std::size_t length = 0;
};

class PolicySet {
 public:
  static PolicySet explicit_list(std::vector<Policy> policies);
  static PolicySet grid(std::vector<std::size_t> values, std::size_t length);

  bool is_grid() const { return std::holds_alternative<GridPolicies>(rep_); }
  const GridPolicies& grid() const { return std::get<GridPolicies>(rep_); }
  const std::vector<Policy>& policies() const { return std::get<std::vector<Policy>>(rep_); }

  // Cardinality, saturating at SIZE_MAX.
  std::size_t size() const;
  std::size_t max_index() const;
  bool contains(const Policy& p) const;
  // Every member, lexicographically sorted. Guarded by `limit`.
  std::vector<Policy> enumerate(std::size_t limit = 10'000'000) const;

  friend bool operator==(const PolicySet& a, const PolicySet& b);

 private:
  std::variant<std::vector<Policy>, GridPolicies> rep_;
};

struct ObservableTarget {
  Matrix observable;
};
struct StateTarget {
  DensityMatrix state;
};
using Target = std::variant<ObservableTarget, StateTarget>;

class ControlProblem {
 public:
  ControlProblem(std::vector<Channel> channels, DensityMatrix rho0, Target target, PolicySet ap);

  std::size_t dim() const { return rho0_.dim(); }
  const std::vector<Channel>& channels() const { return channels_; }
  const DensityMatrix& rho0() const { return rho0_; }
  const Target& target() const { return target_; }
  const PolicySet& ap() const { return ap_; }

  bool has_observable() const { return std::holds_alternative<ObservableTarget>(target_); }
  const Matrix& observable() const;
  const DensityMatrix& target_state() const;

 private:
  std::vector<Channel> channels_;
  DensityMatrix rho0_;
  Target target_;
  PolicySet ap_;
};

DensityMatrix apply_channel(const Channel& c, const DensityMatrix& rho);

// rho(p) = Phi_{p_P} ... Phi_{p_1}[rho0]; step 0 of the policy acts first.
DensityMatrix propagate(const ControlProblem& prob, const Policy& p);

// Tr(O rho(p)). Throws std::invalid_argument for a state target.
Rational objective_J(const ControlProblem& prob, const Policy& p);
// ||rho(p) - rho_f||^2 in the Hilbert-Schmidt norm. Throws for an
// observable target.
Rational objective_F(const ControlProblem& prob, const Policy& p);

// Objective value for an already propagated state: J for observable
// targets, F for state targets.
Rational objective_value(const ControlProblem& prob, const DensityMatrix& rho);

// |psi_f><psi_f| - I for a unit vector psi_f.
Matrix state_transfer_observable(std::span<const Complex> psi_f);

}  // namespace qdio
