#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "qdio/encoding.hpp"
#include "qdio/errors.hpp"
#include "support/random_instances.hpp"

namespace qdio {
namespace {

using testing::Rng;

Tuple tup(std::initializer_list<long> v) {
  Tuple t;
  for (long x : v) t.emplace_back(x);
  return t;
}

// Basis index of the tuple x (components in [lowest, lowest + levels)), x1
// most significant.
std::size_t basis_index(const Tuple& x, std::size_t levels, long lowest) {
  std::size_t idx = 0;
  for (const auto& v : x) idx = idx * levels + static_cast<std::size_t>(v.get_si() - lowest);
  return idx;
}

// Decoded J = 0 tuples over all count tuples in [0, levels-1]^n.
std::set<Tuple> zero_tuples(const ShiftEncoding& enc) {
  std::set<Tuple> out;
  std::vector<std::size_t> c(enc.n, 0);
  while (true) {
    const Policy p = enc.canonical_policy(c);
    if (sgn(objective_J(enc.problem, p)) == 0) out.insert(enc.decode(p));
    std::size_t k = enc.n;
    while (k > 0 && c[k - 1] + 1 == enc.levels()) c[--k] = 0;
    if (k == 0) break;
    ++c[k - 1];
  }
  return out;
}

TEST(ShiftMatrix, Examples) {
  EXPECT_EQ(shift_matrix(1), (Matrix{{1}}));
  EXPECT_EQ(shift_matrix(2), (Matrix{{0, 1}, {1, 0}}));
  EXPECT_EQ(power(shift_matrix(4), 4), Matrix::identity(4));
  EXPECT_NE(power(shift_matrix(4), 3), Matrix::identity(4));
  EXPECT_TRUE(shift_matrix(5).is_unitary());
  // S e_k = e_{k+1}, wrapping at the top.
  EXPECT_EQ(shift_matrix(3)(1, 0), Complex(1));
  EXPECT_EQ(shift_matrix(3)(0, 2), Complex(1));
  EXPECT_THROW(shift_matrix(0), std::invalid_argument);
}

TEST(Embed, TensorOrderPutsFirstModeMostSignificant) {
  const std::vector<Complex> d12{1, 2};
  const Matrix xi = Matrix::diagonal(d12);
  EXPECT_EQ(embed(xi, 0, 2), kron(xi, Matrix::identity(2)));
  EXPECT_EQ(embed(xi, 1, 2), kron(Matrix::identity(2), xi));
  EXPECT_EQ(index_matrix(3, 0), Matrix::diagonal(std::vector<Complex>{0, 1, 2}));
  EXPECT_THROW(embed(xi, 2, 2), std::out_of_range);
}

TEST(EigenRelation, DiagonalActionOnBasisTuples) {
  Rng rng(51);
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = 1 + rng.index(2);
    const DioPolynomial d = testing::random_dio(rng, n, 2).widened(n);
    const std::size_t levels = 4;
    const std::size_t dim = n == 1 ? 4 : 16;
    std::vector<Matrix> xi;
    for (std::size_t k = 0; k < n; ++k) xi.push_back(embed(index_matrix(levels, 1), k, n));
    const Matrix dop = evaluate_on_matrices(d, xi, dim);
    for (std::size_t idx = 0; idx < dim; ++idx) {
      Tuple x(n);
      std::size_t rest = idx;
      for (std::size_t k = n; k-- > 0;) {
        x[k] = static_cast<long>(rest % levels) + 1;
        rest /= levels;
      }
      ASSERT_EQ(basis_index(x, levels, 1), idx);
      std::vector<Complex> unit(dim);
      unit[idx] = 1;
      const Matrix e = Matrix::column(unit);
      EXPECT_EQ(dop * e, e * Complex(Rational(poly_eval(d, x))));
    }
  }
}

TEST(ShiftEncoding, LinearExample) {
  const ShiftEncoding enc = shift_encoding(parse_dio("x1 - 2"), 3);
  EXPECT_EQ(enc.problem.dim(), 3u);
  EXPECT_EQ(enc.problem.observable(), Matrix::diagonal(std::vector<Complex>{-1, 0, -1}));
  EXPECT_EQ(enc.problem.rho0(), DensityMatrix::basis_state(3, 0));
  EXPECT_EQ(enc.policy_length, 3u);
  EXPECT_TRUE(enc.warnings.empty());
  EXPECT_EQ(objective_J(enc.problem, {1, 0, 0}), 0);
  EXPECT_EQ(enc.decode({1, 0, 0}), tup({2}));
  EXPECT_EQ(enc.decode({1, 1, 1}), tup({1}));  // cyclic wraparound
  EXPECT_TRUE(enc.problem.channels()[0] == Channel::identity(3));
}

TEST(ShiftEncoding, QuadraticExample) {
  const ShiftEncoding enc = shift_encoding(parse_dio("x1^2 + x2 - 5"), 4, 8);
  EXPECT_EQ(enc.problem.dim(), 16u);
  EXPECT_EQ(enc.problem.ap(), PolicySet::grid({0, 1, 2}, 8));
  const Policy p{1, 0, 0, 0, 0, 0, 0, 0};
  EXPECT_EQ(objective_J(enc.problem, p), 0);
  EXPECT_EQ(enc.decode(p), tup({2, 1}));
  EXPECT_EQ(zero_tuples(enc), (std::set<Tuple>{tup({1, 4}), tup({2, 1})}));
}

TEST(ShiftEncoding, UnsolvableConstant) {
  const ShiftEncoding enc = shift_encoding(parse_dio("1 + 0*x1"), 3);
  Rational best = -1000;
  for (const auto& p : enc.problem.ap().enumerate()) best = std::max(best, objective_J(enc.problem, p));
  EXPECT_EQ(best, -1);
}

TEST(ShiftEncoding, PellWithNonnegativeOffset) {
  const ShiftEncoding enc = shift_encoding(parse_dio("x1^2 - 4*x2^2 - 1"), 3, {}, Positivity::nonnegative);
  EXPECT_EQ(enc.levels(), 4u);
  EXPECT_EQ(enc.problem.dim(), 16u);
  EXPECT_EQ(zero_tuples(enc), (std::set<Tuple>{tup({1, 0})}));
}

TEST(ShiftEncoding, ShortPolicyWarnsAndDimensionGuard) {
  EXPECT_EQ(shift_encoding(parse_dio("x1 + x2"), 3, 4).warnings.size(), 1u);
  EXPECT_THROW(shift_encoding(parse_dio("x1 + x2 + x3"), 30), LimitError);
  EXPECT_THROW(shift_encoding(parse_dio("x1"), 0), std::invalid_argument);
  const ShiftEncoding enc = shift_encoding(parse_dio("x1 + x2"), 3);
  EXPECT_THROW(enc.canonical_policy(std::vector<std::size_t>{4, 3}), std::invalid_argument);
}

TEST(DampingEncoding, KrausExamples) {
  const Channel c(damping_kraus(2));
  EXPECT_EQ(apply_channel(c, DensityMatrix::basis_state(2, 1)), DensityMatrix::basis_state(2, 0));
  EXPECT_EQ(apply_channel(c, DensityMatrix::basis_state(2, 0)), DensityMatrix::basis_state(2, 0));
  for (std::size_t x = 1; x <= 5; ++x) EXPECT_TRUE(is_trace_preserving(damping_kraus(x)));
}

TEST(DampingEncoding, LinearExample) {
  const ShiftEncoding enc = damping_encoding(parse_dio("x1 - 2"), 3);
  EXPECT_EQ(enc.problem.rho0(), DensityMatrix::basis_state(3, 2));
  EXPECT_EQ(objective_J(enc.problem, {1, 0, 0}), 0);
  EXPECT_EQ(enc.decode({1, 0, 0}), tup({2}));
  EXPECT_EQ(enc.decode({1, 1, 1}), tup({1}));  // saturates at the lowest level
}

TEST(DampingEncoding, DegenerateSingleLevel) {
  const ShiftEncoding enc = damping_encoding(parse_dio("x1 + x2 - 2"), 1);
  EXPECT_EQ(enc.problem.dim(), 1u);
  for (const auto& c : enc.problem.channels()) EXPECT_EQ(c.kraus().front(), Matrix::identity(1));
  EXPECT_EQ(zero_tuples(enc), (std::set<Tuple>{tup({1, 1})}));
}

TEST(Encodings, MatchBruteForceOracle) {
  const char* polys[] = {"x1^2 + x2 - 5", "x1 - 2*x2", "x1*x2 - 4", "x1^2 - 4*x2^2 - 1", "3"};
  for (const char* text : polys) {
    const DioPolynomial d = parse_dio(text);
    for (std::size_t bound = 2; bound <= 4; ++bound) {
      for (auto pos : {Positivity::positive, Positivity::nonnegative}) {
        const auto oracle = enumerate_solutions(d, Integer(static_cast<unsigned long>(bound)), pos);
        const std::set<Tuple> expected(oracle.begin(), oracle.end());
        EXPECT_EQ(zero_tuples(shift_encoding(d, bound, {}, pos)), expected) << text << " X=" << bound;
        EXPECT_EQ(zero_tuples(damping_encoding(d, bound, {}, pos)), expected) << text << " X=" << bound;
      }
    }
  }
}

TEST(Encodings, ObjectiveDependsOnlyOnCounts) {
  Rng rng(52);
  const DioPolynomial d = parse_dio("x1^2 + x2 - 5");
  for (const auto& enc : {shift_encoding(d, 3, 5), damping_encoding(d, 3, 5)}) {
    for (int t = 0; t < 20; ++t) {
      Policy p(5);
      for (auto& s : p) s = rng.index(3);
      Policy q = p;
      std::shuffle(q.begin(), q.end(), rng.engine());
      EXPECT_EQ(propagate(enc.problem, p), propagate(enc.problem, q));
      EXPECT_EQ(objective_J(enc.problem, p), -Rational(poly_eval(d, enc.decode(p))) * poly_eval(d, enc.decode(p)));
    }
  }
}

TEST(Scheme, Names) {
  for (auto s : {Scheme::shift, Scheme::damping, Scheme::coherent}) EXPECT_EQ(parse_scheme(to_string(s)), s);
  EXPECT_THROW(parse_scheme("teleport"), ParseError);
}

}  // namespace
}  // namespace qdio
