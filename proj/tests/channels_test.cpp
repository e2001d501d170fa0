#include <gtest/gtest.h>

#include "qdio/channels.hpp"
#include "qdio/encoding.hpp"
#include "qdio/errors.hpp"
#include "support/random_instances.hpp"

namespace qdio {
namespace {

using testing::Rng;

const Complex kHalf = Complex(Rational(1, 2));

Matrix sigma_x() { return {{0, 1}, {1, 0}}; }

// Qubit amplitude damping with decay probability gamma = g^2 for rational g
// and sqrt(1 - g^2) = h rational: uses the Pythagorean pair (3/5, 4/5).
Channel amplitude_damping() {
  const Complex g(Rational(4, 5)), h(Rational(3, 5));
  return Channel({Matrix{{1, 0}, {0, h}}, Matrix{{0, g}, {0, 0}}});
}

ControlProblem observable_problem(std::vector<Channel> channels, DensityMatrix rho0, Matrix obs, PolicySet ap) {
  return ControlProblem(std::move(channels), std::move(rho0), ObservableTarget{std::move(obs)}, std::move(ap));
}

TEST(Channel, ValidatesTracePreservation) {
  EXPECT_NO_THROW(Channel::identity(3));
  EXPECT_NO_THROW(amplitude_damping());
  EXPECT_THROW(Channel({Matrix{{1, 0}, {0, 0}}}), std::invalid_argument);
  EXPECT_THROW(Channel(std::vector<Matrix>{}), std::invalid_argument);
  EXPECT_THROW(Channel({Matrix::identity(2), Matrix::identity(3)}), std::invalid_argument);
  EXPECT_THROW(Channel::unitary(Matrix{{1, 1}, {0, 1}}), std::invalid_argument);
}

TEST(Channel, RandomChannelsAreTracePreserving) {
  Rng rng(31);
  for (int t = 0; t < 30; ++t) {
    const std::size_t d = 1 + rng.index(3);
    const Channel c = testing::random_channel(rng, d, 1 + rng.index(3));
    EXPECT_TRUE(is_trace_preserving(c.kraus()));
  }
}

TEST(DensityMatrix, Validation) {
  EXPECT_NO_THROW(DensityMatrix(Matrix{{kHalf, 0}, {0, kHalf}}));
  EXPECT_THROW(DensityMatrix(Matrix{{1, 0}, {0, 1}}), std::invalid_argument);
  EXPECT_THROW(DensityMatrix(Matrix{{Complex(Rational(3, 2)), 0}, {0, Complex(Rational(-1, 2))}}), std::invalid_argument);
  EXPECT_THROW(DensityMatrix(Matrix{{kHalf, 1}, {0, kHalf}}), std::invalid_argument);
  EXPECT_TRUE(is_density_matrix(DensityMatrix::basis_state(3, 2).matrix()));
  const std::vector<Complex> psi{Complex(Rational(3, 5)), Complex(Rational(0), Rational(4, 5))};
  EXPECT_TRUE(is_density_matrix(DensityMatrix::pure(psi).matrix()));
}

TEST(ApplyChannel, Examples) {
  Rng rng(32);
  const DensityMatrix rho = testing::random_density(rng, 2);
  EXPECT_EQ(apply_channel(Channel::identity(2), rho), rho);
  const Channel shift = Channel::unitary(shift_matrix(2));
  EXPECT_EQ(apply_channel(shift, DensityMatrix::basis_state(2, 0)), DensityMatrix::basis_state(2, 1));
  const Channel damp(damping_kraus(2));
  EXPECT_EQ(apply_channel(damp, DensityMatrix::basis_state(2, 1)), DensityMatrix::basis_state(2, 0));
  EXPECT_THROW(apply_channel(Channel::identity(3), rho), std::invalid_argument);
}

TEST(PolicySet, GridAndExplicit) {
  const PolicySet g = PolicySet::grid({2, 0, 2}, 2);
  EXPECT_EQ(g.grid().values, (std::vector<std::size_t>{0, 2}));
  EXPECT_EQ(g.size(), 4u);
  EXPECT_EQ(g.max_index(), 2u);
  EXPECT_TRUE(g.contains({2, 0}));
  EXPECT_FALSE(g.contains({1, 0}));
  EXPECT_FALSE(g.contains({0}));
  EXPECT_EQ(g.enumerate(), (std::vector<Policy>{{0, 0}, {0, 2}, {2, 0}, {2, 2}}));
  EXPECT_THROW(g.enumerate(3), LimitError);

  const PolicySet e = PolicySet::explicit_list({{1, 0}, {0, 1}});
  EXPECT_EQ(e.enumerate(), (std::vector<Policy>{{0, 1}, {1, 0}}));
  EXPECT_THROW(PolicySet::explicit_list({}), std::invalid_argument);
  EXPECT_THROW(PolicySet::explicit_list({{1}, {1}}), std::invalid_argument);
  EXPECT_THROW(PolicySet::grid({}, 2), std::invalid_argument);
  EXPECT_EQ(PolicySet::grid({0}, 70).size(), 1u);
  EXPECT_EQ(PolicySet::grid({0, 1}, 70).size(), SIZE_MAX);
}

TEST(ControlProblem, Validation) {
  const auto rho = DensityMatrix::basis_state(2, 0);
  EXPECT_THROW(observable_problem({Channel::identity(3)}, rho, Matrix::identity(2), PolicySet::grid({0}, 1)),
               std::invalid_argument);
  EXPECT_THROW(observable_problem({Channel::identity(2)}, rho, Matrix{{0, 1}, {0, 0}}, PolicySet::grid({0}, 1)),
               std::invalid_argument);
  EXPECT_THROW(observable_problem({Channel::identity(2)}, rho, Matrix::identity(2), PolicySet::grid({0, 1}, 1)),
               std::invalid_argument);
  EXPECT_THROW(ControlProblem({Channel::identity(2)}, rho, StateTarget{DensityMatrix::basis_state(3, 0)},
                              PolicySet::grid({0}, 1)),
               std::invalid_argument);
}

TEST(Propagate, Examples) {
  const auto rho = DensityMatrix::basis_state(3, 0);
  const ControlProblem id = observable_problem({Channel::identity(3)}, rho, Matrix::identity(3), PolicySet::grid({0}, 1));
  EXPECT_EQ(propagate(id, {}), rho);
  EXPECT_EQ(propagate(id, {0}), rho);
  EXPECT_THROW(propagate(id, {1}), std::out_of_range);

  const ShiftEncoding enc = shift_encoding(parse_dio("x1"), 3);
  EXPECT_EQ(propagate(enc.problem, {1, 1}), DensityMatrix::basis_state(3, 2));
}

TEST(Propagate, StepOrderIsLeftToRight) {
  // Damping then flip leaves |1>; flip then damping leaves |0>.
  const ControlProblem prob = observable_problem({Channel::identity(2), amplitude_damping(), Channel::unitary(sigma_x())},
                                                 DensityMatrix::basis_state(2, 0), Matrix::identity(2),
                                                 PolicySet::grid({0, 1, 2}, 2));
  const Matrix after_12 = propagate(prob, {1, 2}).matrix();
  const Matrix after_21 = propagate(prob, {2, 1}).matrix();
  EXPECT_EQ(after_12, DensityMatrix::basis_state(2, 1).matrix());
  EXPECT_EQ(after_21(0, 0), Complex(Rational(16, 25)));
}

TEST(Propagate, PreservesDensityInvariants) {
  Rng rng(33);
  for (int t = 0; t < 30; ++t) {
    const std::size_t d = 1 + rng.index(3);
    std::vector<Channel> channels;
    for (int k = 0; k < 3; ++k) channels.push_back(testing::random_channel(rng, d, 1 + rng.index(2)));
    const ControlProblem prob =
        observable_problem(channels, testing::random_density(rng, d), Matrix::identity(d), PolicySet::grid({0, 1, 2}, 3));
    const Policy p{rng.index(3), rng.index(3), rng.index(3)};
    EXPECT_TRUE(is_density_matrix(propagate(prob, p).matrix()));
  }
}

TEST(ObjectiveJ, Examples) {
  const ControlProblem half = observable_problem({Channel::unitary(sigma_x()), Channel::identity(2)},
                                                 DensityMatrix::basis_state(2, 0), Matrix::identity(2) * kHalf,
                                                 PolicySet::grid({0, 1}, 2));
  for (const auto& p : half.ap().enumerate()) EXPECT_EQ(objective_J(half, p), Rational(1, 2));

  const ShiftEncoding enc = shift_encoding(parse_dio("x1 - 2"), 3);
  const std::vector<Complex> diag{-1, 0, -1};
  EXPECT_EQ(enc.problem.observable(), Matrix::diagonal(diag));
  EXPECT_EQ(objective_J(enc.problem, {}), -1);
  EXPECT_EQ(objective_J(enc.problem, {1}), 0);
  EXPECT_THROW(objective_F(enc.problem, {}), std::invalid_argument);
}

TEST(ObjectiveF, Examples) {
  const auto e0 = DensityMatrix::basis_state(2, 0);
  const auto e1 = DensityMatrix::basis_state(2, 1);
  const ControlProblem same({Channel::identity(2)}, e0, StateTarget{e0}, PolicySet::grid({0}, 1));
  EXPECT_EQ(objective_F(same, {}), 0);
  EXPECT_THROW(objective_J(same, {}), std::invalid_argument);
  const ControlProblem other({Channel::identity(2)}, e0, StateTarget{e1}, PolicySet::grid({0}, 1));
  EXPECT_EQ(objective_F(other, {}), 2);

  Rng rng(34);
  const DensityMatrix mixed(Matrix::identity(2) * kHalf);
  const ControlProblem to_mixed({Channel::unitary(testing::random_unitary(rng, 2)), Channel::unitary(sigma_x())}, e0,
                                StateTarget{mixed}, PolicySet::grid({0, 1}, 3));
  for (const auto& p : to_mixed.ap().enumerate()) EXPECT_EQ(objective_F(to_mixed, p), Rational(1, 2));
}

TEST(ObjectiveF, MatchesInnerProductIdentity) {
  Rng rng(35);
  for (int t = 0; t < 40; ++t) {
    const std::size_t d = 1 + rng.index(3);
    const DensityMatrix target = testing::random_density(rng, d);
    const ControlProblem prob({testing::random_channel(rng, d, 2), testing::random_channel(rng, d, 1)},
                              testing::random_density(rng, d), StateTarget{target}, PolicySet::grid({0, 1}, 2));
    const Policy p{rng.index(2), rng.index(2)};
    const Matrix rho = propagate(prob, p).matrix();
    const Rational expected =
        hs_norm_sq(target.matrix()) + hs_norm_sq(rho) - 2 * trace_product(target.matrix(), rho).re();
    EXPECT_EQ(objective_F(prob, p), expected);
  }
}

TEST(StateTransfer, Examples) {
  const std::vector<Complex> e0{1, 0};
  const std::vector<Complex> diag{0, -1};
  EXPECT_EQ(state_transfer_observable(e0), Matrix::diagonal(diag));
  const std::vector<Complex> unnormalized{1, 1};
  EXPECT_THROW(state_transfer_observable(unnormalized), std::invalid_argument);

  const std::vector<Complex> psi{Complex(Rational(3, 5)), Complex(Rational(0), Rational(4, 5))};
  const std::vector<Complex> orth{Complex(Rational(4, 5)), Complex(Rational(0), Rational(-3, 5))};
  const Matrix obs = state_transfer_observable(psi);
  EXPECT_EQ(trace_product(obs, DensityMatrix::pure(psi).matrix()), Complex(0));
  EXPECT_EQ(trace_product(obs, DensityMatrix::pure(orth).matrix()), Complex(-1));
}

TEST(StateTransfer, NonPositiveAndZeroOnlyAtTarget) {
  Rng rng(36);
  for (int t = 0; t < 20; ++t) {
    const Matrix u = testing::random_unitary(rng, 2);
    const std::vector<Complex> psi{u(0, 0), u(1, 0)};
    const ControlProblem prob = observable_problem(
        {Channel::identity(2), Channel::unitary(u)}, DensityMatrix::basis_state(2, 0),
        state_transfer_observable(psi), PolicySet::grid({0, 1}, 2));
    for (const auto& p : prob.ap().enumerate()) {
      const Rational j = objective_J(prob, p);
      EXPECT_LE(j, 0);
      EXPECT_EQ(sgn(j) == 0, propagate(prob, p) == DensityMatrix::pure(psi));
    }
    EXPECT_EQ(objective_J(prob, {0, 1}), 0);
  }
}

}  // namespace
}  // namespace qdio
