#include "qdio/channels.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <stdexcept>
#include <string>

#include "qdio/errors.hpp"

namespace qdio {

bool is_trace_preserving(std::span<const Matrix> kraus) {
  if (kraus.empty()) return false;
  const std::size_t d = kraus.front().rows();
  Matrix sum = Matrix::zero(d, d);
  for (const auto& k : kraus) {
    if (k.rows() != d || k.cols() != d) return false;
    sum += dagger(k) * k;
  }
  return sum == Matrix::identity(d);
}

Channel::Channel(std::vector<Matrix> kraus) : kraus_(std::move(kraus)) {
  if (kraus_.empty()) throw std::invalid_argument("channel needs at least one Kraus operator");
  const std::size_t d = kraus_.front().rows();
  for (const auto& k : kraus_) {
    if (k.rows() != d || k.cols() != d) throw std::invalid_argument("Kraus operators must all be d x d");
  }
  if (!is_trace_preserving(kraus_)) throw std::invalid_argument("Kraus operators are not trace preserving");
}

Channel Channel::identity(std::size_t dim) { return Channel({Matrix::identity(dim)}); }

Channel Channel::unitary(const Matrix& u) { return Channel({u}); }

bool is_density_matrix(const Matrix& m) {
  return m.is_hermitian() && trace(m) == Complex(1) && psd_check(m);
}

DensityMatrix::DensityMatrix(Matrix m) : mat_(std::move(m)) {
  if (!mat_.is_hermitian()) throw std::invalid_argument("density matrix must be Hermitian");
  if (!(trace(mat_) == Complex(1))) throw std::invalid_argument("density matrix must have unit trace");
  if (!psd_check(mat_)) throw std::invalid_argument("density matrix must be positive semidefinite");
}

DensityMatrix DensityMatrix::pure(std::span<const Complex> psi) { return DensityMatrix(Matrix::outer(psi, psi)); }

DensityMatrix DensityMatrix::basis_state(std::size_t dim, std::size_t k) {
  return DensityMatrix(Matrix::basis_projector(dim, k));
}

PolicySet PolicySet::explicit_list(std::vector<Policy> policies) {
  if (policies.empty()) throw std::invalid_argument("explicit policy set must be nonempty");
  std::set<Policy> seen;
  for (const auto& p : policies) {
    if (!seen.insert(p).second) throw std::invalid_argument("explicit policy set contains duplicates");
  }
  PolicySet s;
  s.rep_ = std::move(policies);
  return s;
}

PolicySet PolicySet::grid(std::vector<std::size_t> values, std::size_t length) {
  if (values.empty()) throw std::invalid_argument("grid policy set needs at least one value");
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  PolicySet s;
  s.rep_ = GridPolicies{std::move(values), length};
  return s;
}

std::size_t PolicySet::size() const {
  if (!is_grid()) return policies().size();
  const auto& g = grid();
  std::size_t n = 1;
  for (std::size_t k = 0; k < g.length; ++k) {
    if (n > std::numeric_limits<std::size_t>::max() / g.values.size()) return std::numeric_limits<std::size_t>::max();
    n *= g.values.size();
  }
  return n;
}

std::size_t PolicySet::max_index() const {
  if (is_grid()) return grid().values.back();
  std::size_t m = 0;
  for (const auto& p : policies()) {
    for (auto v : p) m = std::max(m, v);
  }
  return m;
}

bool PolicySet::contains(const Policy& p) const {
  if (!is_grid()) return std::find(policies().begin(), policies().end(), p) != policies().end();
  const auto& g = grid();
  return p.size() == g.length &&
         std::all_of(p.begin(), p.end(), [&](std::size_t v) { return std::binary_search(g.values.begin(), g.values.end(), v); });
}

std::vector<Policy> PolicySet::enumerate(std::size_t limit) const {
  if (size() > limit) throw LimitError("policy set has more than " + std::to_string(limit) + " members");
  if (!is_grid()) {
    auto out = policies();
    std::sort(out.begin(), out.end());
    return out;
  }
  const auto& g = grid();
  std::vector<Policy> out;
  out.reserve(size());
  std::vector<std::size_t> digit(g.length, 0);
  while (true) {
    Policy p(g.length);
    for (std::size_t k = 0; k < g.length; ++k) p[k] = g.values[digit[k]];
    out.push_back(std::move(p));
    std::size_t k = g.length;
    while (k > 0 && digit[k - 1] + 1 == g.values.size()) digit[--k] = 0;
    if (k == 0) break;
    ++digit[k - 1];
  }
  return out;
}

bool operator==(const PolicySet& a, const PolicySet& b) {
  if (a.is_grid() != b.is_grid()) return false;
  if (a.is_grid()) return a.grid().values == b.grid().values && a.grid().length == b.grid().length;
  return a.policies() == b.policies();
}

ControlProblem::ControlProblem(std::vector<Channel> channels, DensityMatrix rho0, Target target, PolicySet ap)
    : channels_(std::move(channels)), rho0_(std::move(rho0)), target_(std::move(target)), ap_(std::move(ap)) {
  if (channels_.empty()) throw std::invalid_argument("control problem needs at least one channel");
  const std::size_t d = rho0_.dim();
  for (const auto& c : channels_) {
    if (c.dim() != d) throw std::invalid_argument("channel dimension differs from rho0");
  }
  if (auto* obs = std::get_if<ObservableTarget>(&target_)) {
    if (obs->observable.rows() != d || obs->observable.cols() != d) {
      throw std::invalid_argument("observable dimension differs from rho0");
    }
    if (!obs->observable.is_hermitian()) throw std::invalid_argument("observable must be Hermitian");
  } else if (std::get<StateTarget>(target_).state.dim() != d) {
    throw std::invalid_argument("target state dimension differs from rho0");
  }
  if (ap_.max_index() >= channels_.size()) {
    throw std::invalid_argument("accessible policies reference channel " + std::to_string(ap_.max_index()) + " but only " +
                                std::to_string(channels_.size()) + " channels exist");
  }
}

const Matrix& ControlProblem::observable() const {
  if (!has_observable()) throw std::invalid_argument("control problem has a state target, not an observable");
  return std::get<ObservableTarget>(target_).observable;
}

const DensityMatrix& ControlProblem::target_state() const {
  if (has_observable()) throw std::invalid_argument("control problem has an observable target, not a state");
  return std::get<StateTarget>(target_).state;
}

DensityMatrix apply_channel(const Channel& c, const DensityMatrix& rho) {
  if (c.dim() != rho.dim()) throw std::invalid_argument("apply_channel: dimension mismatch");
  const std::size_t d = rho.dim();
  Matrix out = Matrix::zero(d, d);
  for (const auto& k : c.kraus()) {
    out += k * rho.matrix() * dagger(k);
  }
  return DensityMatrix(std::move(out), DensityMatrix::Trusted{});
}

DensityMatrix propagate(const ControlProblem& prob, const Policy& p) {
  DensityMatrix rho = prob.rho0();
  for (std::size_t step : p) {
    if (step >= prob.channels().size()) {
      throw std::out_of_range("policy step " + std::to_string(step) + " is not a channel index");
    }
    rho = apply_channel(prob.channels()[step], rho);
  }
  return rho;
}

Rational objective_value(const ControlProblem& prob, const DensityMatrix& rho) {
  if (prob.has_observable()) {
    Complex t = trace_product(prob.observable(), rho.matrix());
    if (!t.is_real()) throw std::logic_error("non-real expectation of a Hermitian observable");
    return t.re();
  }
  return hs_norm_sq(rho.matrix() - prob.target_state().matrix());
}

Rational objective_J(const ControlProblem& prob, const Policy& p) {
  if (!prob.has_observable()) throw std::invalid_argument("objective_J needs an observable target");
  return objective_value(prob, propagate(prob, p));
}

Rational objective_F(const ControlProblem& prob, const Policy& p) {
  if (prob.has_observable()) throw std::invalid_argument("objective_F needs a target state");
  return objective_value(prob, propagate(prob, p));
}

Matrix state_transfer_observable(std::span<const Complex> psi_f) {
  Rational norm;
  for (const auto& z : psi_f) norm += z.norm_sq();
  if (norm != 1) throw std::invalid_argument("state_transfer_observable needs a unit vector");
  return Matrix::outer(psi_f, psi_f) - Matrix::identity(psi_f.size());
}

}  // namespace qdio
