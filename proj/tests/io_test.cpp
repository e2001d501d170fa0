#include <gtest/gtest.h>

#include <filesystem>

#include "qdio/encoding.hpp"
#include "qdio/errors.hpp"
#include "qdio/io.hpp"
#include "support/random_instances.hpp"

namespace qdio {
namespace {

using testing::Rng;

ControlProblem random_problem(Rng& rng, bool observable, bool grid) {
  const std::size_t d = 1 + rng.index(3);
  std::vector<Channel> cs;
  for (int k = 0; k < 3; ++k) cs.push_back(testing::random_channel(rng, d, 1 + rng.index(2)));
  const Target target = observable ? Target{ObservableTarget{testing::random_hermitian(rng, d)}}
                                   : Target{StateTarget{testing::random_density(rng, d)}};
  PolicySet ap = grid ? PolicySet::grid({0, 2}, 3) : PolicySet::explicit_list({{1, 0}, {2}, {}});
  return ControlProblem(std::move(cs), testing::random_density(rng, d), target, std::move(ap));
}

TEST(Io, ProblemRoundTrip) {
  Rng rng(71);
  for (int t = 0; t < 12; ++t) {
    const ControlProblem prob = random_problem(rng, t % 2 == 0, t % 3 != 0);
    const Json j = problem_to_json(prob);
    const ControlProblem back = problem_from_json(Json::parse(j.dump()));
    EXPECT_EQ(problem_to_json(back), j);
    EXPECT_EQ(back.rho0(), prob.rho0());
    ASSERT_EQ(back.channels().size(), prob.channels().size());
    for (std::size_t k = 0; k < prob.channels().size(); ++k) {
      EXPECT_EQ(back.channels()[k].kraus(), prob.channels()[k].kraus());
    }
    EXPECT_EQ(back.ap().enumerate(), prob.ap().enumerate());
    for (const auto& p : prob.ap().enumerate()) EXPECT_EQ(objective_value(back, propagate(back, p)),
                                                          objective_value(prob, propagate(prob, p)));
  }
}

TEST(Io, EncodedProblemRoundTrip) {
  const ShiftEncoding enc = damping_encoding(parse_dio("x1^2 + x2 - 5"), 3);
  const Json j = problem_to_json(enc.problem);
  EXPECT_EQ(problem_to_json(problem_from_json(j)), j);
  EXPECT_EQ(j.at("dim"), 9);
}

TEST(Io, CoherentDescriptorRoundTrip) {
  const CoherentProblem prob = coherent_encoding(parse_dio("x1^2 - 4*x2^2 - 1"));
  const Json j = coherent_to_json(prob);
  EXPECT_EQ(j.at("scheme"), "coherent");
  EXPECT_EQ(coherent_to_json(coherent_from_json(j)), j);
  EXPECT_TRUE(std::holds_alternative<CoherentProblem>(problem_file_from_json(j)));
  EXPECT_THROW(coherent_from_json(Json{{"scheme", "shift"}, {"dio", "x1"}}), ParseError);
}

TEST(Io, MatrixScalars) {
  const Matrix m{{Complex(Rational(1, 2)), Complex(Rational(0), Rational(-3, 4))}, {Complex(Rational(0), Rational(3, 4)), 2}};
  const Json j = matrix_to_json(m);
  EXPECT_EQ(j[0][1], "0-3/4 i");
  EXPECT_EQ(matrix_from_json(j), m);
  EXPECT_EQ(matrix_from_json(Json::parse(R"([[1, "0"], [0, "1"]])")), Matrix::identity(2));
}

TEST(Io, MalformedInputs) {
  EXPECT_THROW(matrix_from_json(Json::parse(R"([[1, 2], [3]])")), ParseError);
  EXPECT_THROW(matrix_from_json(Json::parse(R"([[1.5]])")), ParseError);
  EXPECT_THROW(matrix_from_json(Json::parse("[]")), ParseError);

  Rng rng(72);
  const Json good = problem_to_json(random_problem(rng, true, true));
  for (const char* key : {"dim", "channels", "rho0", "target", "ap"}) {
    Json bad = good;
    bad.erase(key);
    EXPECT_THROW(problem_from_json(bad), ParseError) << key;
  }
  Json wrong_dim = good;
  wrong_dim["dim"] = good.at("dim").get<int>() + 1;
  EXPECT_THROW(problem_from_json(wrong_dim), ParseError);
  Json no_target = good;
  no_target["target"] = Json::object();
  EXPECT_THROW(problem_from_json(no_target), ParseError);
  Json neg_policy = good;
  neg_policy["ap"] = Json::parse(R"({"explicit": [[0, -1]]})");
  EXPECT_THROW(problem_from_json(neg_policy), ParseError);
  // Well-formed JSON describing an invalid channel is a domain error.
  Json not_tp = good;
  not_tp["channels"][0]["kraus"] = Json::array({matrix_to_json(Matrix::identity(not_tp.at("dim").get<std::size_t>()) * Complex(2))});
  EXPECT_THROW(problem_from_json(not_tp), std::invalid_argument);
}

TEST(Io, ReadJsonFileReportsOffset) {
  const auto path = std::filesystem::temp_directory_path() / "qdio_io_test_bad.json";
  write_text_file(path.string(), "{\"dim\": 2,, }");
  try {
    read_json_file(path.string());
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.offset(), 11u);
  }
  std::filesystem::remove(path);
  EXPECT_THROW(read_text_file("/nonexistent/qdio.json"), std::runtime_error);
}

TEST(Io, ReportJson) {
  SearchReport r;
  r.goal = Goal::maximize;
  r.optimal_value = Rational(-9, 25);
  r.optimizers = {{0, 1}, {2, 2}};
  r.evaluations = 9;
  r.exhausted = true;
  const Json j = report_to_json(r);
  EXPECT_EQ(j.dump(),
            R"({"evaluations":9,"exhausted":true,"first_zero":null,"goal":"maximize","optimal_value":"-9/25",)"
            R"("optimizers":[[0,1],[2,2]],"zeros":[]})");

  const Tuple big{Integer("123456789012345678901234567890"), Integer(3)};
  EXPECT_EQ(tuple_to_json(big).dump(), R"(["123456789012345678901234567890",3])");
}

TEST(Io, LegendJson) {
  const ControlProblem prob({Channel::identity(2), Channel::identity(2)}, DensityMatrix::basis_state(2, 0),
                            ObservableTarget{Matrix::identity(2)}, PolicySet::grid({0, 1}, 2));
  const Json j = legend_to_json(exact_equation(prob, 2));
  EXPECT_EQ(j.at("p"), 2);
  EXPECT_EQ(j.at("variables").at("x1"), "p1");
  EXPECT_EQ(j.at("variables").at("x2"), "p2");
}

}  // namespace
}  // namespace qdio
