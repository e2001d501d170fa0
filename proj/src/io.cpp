#include "qdio/io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "qdio/diophantine.hpp"
#include "qdio/errors.hpp"

namespace qdio {

namespace {

Complex scalar_from_json(const Json& j) {
  if (j.is_string()) return parse_complex(j.get<std::string>());
  if (j.is_number_integer()) return Complex(Rational(j.get<long>()));
  throw ParseError("scalar must be a string such as \"1/2\" or \"0+1 i\"");
}

const Json& member(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing key '") + key + "'");
  return j.at(key);
}

std::size_t index_from_json(const Json& j) {
  if (!j.is_number_integer() || j.get<long long>() < 0) throw ParseError("policy entries must be nonnegative integers");
  return j.get<std::size_t>();
}

Json policy_to_json(const std::vector<std::size_t>& p) { return Json(p); }

}  // namespace

Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_string(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw ParseError("matrix must be a nonempty array of rows");
  const std::size_t rows = j.size();
  if (!j.front().is_array()) throw ParseError("matrix rows must be arrays");
  const std::size_t cols = j.front().size();
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols) throw ParseError("ragged matrix");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = scalar_from_json(j[r][c]);
  }
  return m;
}

Json problem_to_json(const ControlProblem& prob) {
  Json j;
  j["dim"] = prob.dim();
  Json channels = Json::array();
  for (const auto& c : prob.channels()) {
    Json kraus = Json::array();
    for (const auto& k : c.kraus()) kraus.push_back(matrix_to_json(k));
    channels.push_back({{"kraus", std::move(kraus)}});
  }
  j["channels"] = std::move(channels);
  j["rho0"] = matrix_to_json(prob.rho0().matrix());
  if (prob.has_observable()) {
    j["target"] = {{"observable", matrix_to_json(prob.observable())}};
  } else {
    j["target"] = {{"state", matrix_to_json(prob.target_state().matrix())}};
  }
  if (prob.ap().is_grid()) {
    j["ap"] = {{"grid", {{"values", prob.ap().grid().values}, {"length", prob.ap().grid().length}}}};
  } else {
    Json list = Json::array();
    for (const auto& p : prob.ap().policies()) list.push_back(policy_to_json(p));
    j["ap"] = {{"explicit", std::move(list)}};
  }
  return j;
}

ControlProblem problem_from_json(const Json& j) {
  const Json& dim_j = member(j, "dim");
  if (!dim_j.is_number_integer() || dim_j.get<long long>() < 1) throw ParseError("'dim' must be a positive integer");
  const auto dim = dim_j.get<std::size_t>();

  std::vector<Channel> channels;
  const Json& cs = member(j, "channels");
  if (!cs.is_array()) throw ParseError("'channels' must be an array");
  for (const auto& c : cs) {
    std::vector<Matrix> kraus;
    const Json& ks = member(c, "kraus");
    if (!ks.is_array()) throw ParseError("'kraus' must be an array of matrices");
    for (const auto& k : ks) {
      Matrix m = matrix_from_json(k);
      if (m.rows() != dim || m.cols() != dim) throw ParseError("Kraus operator shape differs from 'dim'");
      kraus.push_back(std::move(m));
    }
    channels.emplace_back(std::move(kraus));
  }

  Matrix rho0 = matrix_from_json(member(j, "rho0"));
  if (rho0.rows() != dim) throw ParseError("'rho0' shape differs from 'dim'");

  const Json& t = member(j, "target");
  Target target = [&]() -> Target {
    if (t.contains("observable")) return ObservableTarget{matrix_from_json(t.at("observable"))};
    if (t.contains("state")) return StateTarget{DensityMatrix(matrix_from_json(t.at("state")))};
    throw ParseError("'target' needs an 'observable' or a 'state'");
  }();

  const Json& ap_j = member(j, "ap");
  PolicySet ap = [&] {
    if (ap_j.contains("grid")) {
      const Json& g = ap_j.at("grid");
      std::vector<std::size_t> values;
      for (const auto& v : member(g, "values")) values.push_back(index_from_json(v));
      return PolicySet::grid(std::move(values), index_from_json(member(g, "length")));
    }
    if (ap_j.contains("explicit")) {
      std::vector<Policy> list;
      for (const auto& p : ap_j.at("explicit")) {
        if (!p.is_array()) throw ParseError("explicit policies must be arrays");
        Policy policy;
        for (const auto& v : p) policy.push_back(index_from_json(v));
        list.push_back(std::move(policy));
      }
      return PolicySet::explicit_list(std::move(list));
    }
    throw ParseError("'ap' needs a 'grid' or an 'explicit' list");
  }();

  return ControlProblem(std::move(channels), DensityMatrix(std::move(rho0)), std::move(target), std::move(ap));
}

Json coherent_to_json(const CoherentProblem& prob) {
  return {{"scheme", "coherent"}, {"dio", render_dio(prob.dio)}};
}

CoherentProblem coherent_from_json(const Json& j) {
  const Json& scheme = member(j, "scheme");
  if (scheme != "coherent") throw ParseError("coherent problem file must have scheme 'coherent'");
  const Json& dio = member(j, "dio");
  if (!dio.is_string()) throw ParseError("'dio' must be a string");
  return coherent_encoding(parse_dio(dio.get<std::string>()));
}

ProblemFile problem_file_from_json(const Json& j) {
  if (j.is_object() && j.contains("scheme")) return coherent_from_json(j);
  return problem_from_json(j);
}

Json tuple_to_json(const Tuple& t) {
  Json a = Json::array();
  for (const auto& v : t) {
    if (v.fits_slong_p()) {
      a.push_back(v.get_si());
    } else {
      a.push_back(v.get_str());
    }
  }
  return a;
}

Json report_to_json(const SearchReport& r) {
  Json j;
  j["goal"] = r.goal == Goal::maximize ? "maximize" : "minimize";
  j["optimal_value"] = to_string(r.optimal_value);
  Json opts = Json::array();
  for (const auto& p : r.optimizers) opts.push_back(policy_to_json(p));
  j["optimizers"] = std::move(opts);
  j["evaluations"] = r.evaluations;
  j["exhausted"] = r.exhausted;
  j["first_zero"] = r.first_zero ? policy_to_json(*r.first_zero) : Json(nullptr);
  Json zeros = Json::array();
  for (const auto& z : r.zeros) zeros.push_back(policy_to_json(z));
  j["zeros"] = std::move(zeros);
  return j;
}

Json equivalence_to_json(const EquivalenceReport& r) {
  Json j;
  j["scheme"] = to_string(r.scheme);
  j["positivity"] = to_string(r.positivity);
  j["bound"] = r.bound;
  j["equal"] = r.equal;
  Json control = Json::array();
  for (const auto& t : r.control_tuples) control.push_back(tuple_to_json(t));
  Json oracle = Json::array();
  for (const auto& t : r.oracle_tuples) oracle.push_back(tuple_to_json(t));
  j["control_tuples"] = std::move(control);
  j["oracle_tuples"] = std::move(oracle);
  j["evaluations"] = r.evaluations;
  return j;
}

Json verdict_to_json(const ControllabilityVerdict& v) {
  Json j;
  j["dim"] = v.dim;
  j["closure_dim"] = v.closure_dim;
  j["su_dim"] = v.su_dim;
  j["sp_dim"] = v.sp_dim ? Json(*v.sp_dim) : Json(nullptr);
  j["matches_su"] = v.matches_su;
  j["matches_sp"] = v.matches_sp;
  j["controllable"] = v.controllable;
  j["note"] = v.note;
  return j;
}

Json legend_to_json(const ReductionResult& r) {
  Json j;
  j["p"] = r.policy_length;
  j["ancillas"] = r.ancillas;
  j["scale"] = to_string(r.scale);
  Json vars = Json::object();
  for (const auto& [name, role] : r.variable_legend) vars[name] = role;
  j["variables"] = std::move(vars);
  return j;
}

HamiltonianPair hamiltonians_from_json(const Json& j) {
  return {matrix_from_json(member(j, "h0")), matrix_from_json(member(j, "v"))};
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json read_json_file(const std::string& path) {
  const std::string text = read_text_file(path);
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError("invalid JSON in '" + path + "': " + e.what(), e.byte);
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
}

}  // namespace qdio
