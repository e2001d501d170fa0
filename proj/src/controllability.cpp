#include "qdio/controllability.hpp"

#include <stdexcept>

#include "qdio/errors.hpp"

namespace qdio {

namespace {

// Incremental row-echelon basis over the rationals.
class EchelonBasis {
 public:
  // Reduces v against the basis; keeps it and returns true if independent.
  bool insert(std::vector<Rational> v) {
    for (const auto& [pivot, row] : rows_) {
      if (sgn(v[pivot]) == 0) continue;
      const Rational f = v[pivot];
      for (std::size_t k = 0; k < v.size(); ++k) {
        if (sgn(row[k]) != 0) v[k] -= f * row[k];
      }
    }
    std::size_t pivot = 0;
    while (pivot < v.size() && sgn(v[pivot]) == 0) ++pivot;
    if (pivot == v.size()) return false;
    const Rational inv = 1 / v[pivot];
    for (auto& x : v) x *= inv;
    // Keep earlier rows reduced at the new pivot.
    for (auto& [p, row] : rows_) {
      if (sgn(row[pivot]) == 0) continue;
      const Rational f = row[pivot];
      for (std::size_t k = 0; k < v.size(); ++k) {
        if (sgn(v[k]) != 0) row[k] -= f * v[k];
      }
    }
    rows_.emplace_back(pivot, std::move(v));
    return true;
  }

  std::size_t rank() const { return rows_.size(); }

 private:
  std::vector<std::pair<std::size_t, std::vector<Rational>>> rows_;
};

std::vector<Rational> flatten(const Matrix& m) {
  std::vector<Rational> v;
  v.reserve(2 * m.rows() * m.cols());
  for (const auto& z : m.entries()) {
    v.push_back(z.re());
    v.push_back(z.im());
  }
  return v;
}

Matrix traceless(const Matrix& a) {
  const Complex shift = trace(a) / Complex(static_cast<long>(a.rows()));
  return a - shift * Matrix::identity(a.rows());
}

void check_pair(const HamiltonianPair& pair) {
  if (!pair.h0.is_hermitian() || !pair.v.is_hermitian()) throw std::invalid_argument("Hamiltonians must be Hermitian");
  if (pair.h0.rows() != pair.v.rows()) throw std::invalid_argument("Hamiltonians must share a dimension");
  if (pair.h0.rows() == 0) throw std::invalid_argument("empty Hamiltonian");
  if (pair.h0.rows() > kMaxLieDim) {
    throw LimitError("Lie closure limited to dimension " + std::to_string(kMaxLieDim));
  }
}

}  // namespace

LieClosure lie_closure(const HamiltonianPair& pair) {
  check_pair(pair);
  EchelonBasis echelon;
  std::vector<Matrix> basis;
  for (const Matrix* h : {&pair.h0, &pair.v}) {
    Matrix g = Complex::i() * traceless(*h);
    if (echelon.insert(flatten(g))) basis.push_back(std::move(g));
  }
  LieClosure out;
  out.rank_per_pass.push_back(echelon.rank());
  while (true) {
    const std::size_t before = basis.size();
    for (std::size_t i = 0; i < before; ++i) {
      for (std::size_t j = i + 1; j < before; ++j) {
        Matrix c = basis[i] * basis[j] - basis[j] * basis[i];
        if (echelon.insert(flatten(c))) basis.push_back(std::move(c));
      }
    }
    out.rank_per_pass.push_back(echelon.rank());
    if (basis.size() == before) break;
  }
  out.dimension = echelon.rank();
  return out;
}

ControllabilityVerdict is_controllable(const HamiltonianPair& pair) {
  ControllabilityVerdict v;
  v.dim = pair.h0.rows();
  v.closure_dim = lie_closure_dim(pair);
  v.su_dim = v.dim * v.dim - 1;
  if (v.dim % 2 == 0) v.sp_dim = v.dim * (v.dim + 1) / 2;
  v.matches_su = v.closure_dim == v.su_dim;
  v.matches_sp = v.sp_dim && v.closure_dim == *v.sp_dim;
  v.controllable = v.matches_su || v.matches_sp;
  v.note = "closure dimension compared with dim su(d) and dim sp(d/2); equal dimension is used in place of an isomorphism test";
  return v;
}

Channel universal_reset(std::span<const Complex> psi) {
  Rational norm;
  for (const auto& z : psi) norm += z.norm_sq();
  if (norm != 1) throw std::invalid_argument("universal_reset needs a unit vector");
  std::vector<Matrix> kraus;
  for (std::size_t i = 0; i < psi.size(); ++i) {
    std::vector<Complex> e(psi.size());
    e[i] = Complex(1);
    kraus.push_back(Matrix::outer(psi, e));
  }
  return Channel(std::move(kraus));
}

GateSet default_gate_set() {
  const Rational c(3, 5), s(4, 5);
  const Matrix r{{Complex(c), Complex(s)}, {Complex(Rational(-s)), Complex(c)}};
  const Matrix sg{{Complex(c), Complex(0, s)}, {Complex(0, s), Complex(c)}};
  return {r, sg, dagger(r), dagger(sg)};
}

SearchReport epsilon_reach(const GateSet& gates, const DensityMatrix& rho0, const Matrix& observable,
                           const Rational& j0, const Rational& eps, std::size_t max_len,
                           std::span<const Complex> reset_target) {
  if (sgn(eps) <= 0) throw std::invalid_argument("epsilon must be positive");
  if (!observable.is_hermitian()) throw std::invalid_argument("observable must be Hermitian");
  std::vector<Channel> channels{universal_reset(reset_target)};
  for (const auto& g : gates) {
    if (!g.is_unitary()) throw std::invalid_argument("gate set members must be exactly unitary");
    channels.push_back(Channel::unitary(g));
  }

  SearchReport report;
  report.goal = Goal::minimize;
  std::optional<Rational> closest_gap;
  auto check = [&](const Policy& p, const DensityMatrix& rho) {
    ++report.evaluations;
    const Complex t = trace_product(observable, rho.matrix());
    const Rational gap = abs(t.re() - j0);
    if (!closest_gap || gap < *closest_gap) {
      closest_gap = gap;
      report.optimal_value = t.re();
    }
    if (gap < eps) {
      report.optimal_value = t.re();
      report.optimizers.push_back(p);
      return true;
    }
    return false;
  };

  // Breadth-first by word length; children are generated in gate order so
  // each level is lexicographically sorted.
  std::vector<std::pair<Policy, DensityMatrix>> level;
  level.emplace_back(Policy{0}, apply_channel(channels[0], rho0));
  if (check(level.front().first, level.front().second)) return report;
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::vector<std::pair<Policy, DensityMatrix>> next;
    next.reserve(level.size() * gates.size());
    for (const auto& [policy, rho] : level) {
      for (std::size_t g = 1; g < channels.size(); ++g) {
        Policy p = policy;
        p.push_back(g);
        DensityMatrix out = apply_channel(channels[g], rho);
        if (check(p, out)) return report;
        next.emplace_back(std::move(p), std::move(out));
      }
    }
    level = std::move(next);
  }
  report.exhausted = true;
  return report;
}

}  // namespace qdio
