// qdio: command-line front end. Reports are JSON on stdout, summaries on
// stderr. Exit codes: 0 success, 1 sought object absent, 2 bad input,
// 3 desk-scale guard.

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>

#include "qdio/coherent.hpp"
#include "qdio/controllability.hpp"
#include "qdio/diophantine.hpp"
#include "qdio/encoding.hpp"
#include "qdio/errors.hpp"
#include "qdio/io.hpp"
#include "qdio/reduction.hpp"
#include "qdio/search.hpp"

namespace {

using namespace qdio;

constexpr int kOk = 0;
constexpr int kAbsent = 1;
constexpr int kBadInput = 2;
constexpr int kGuard = 3;

struct Options {
  std::string input;
  std::string scheme = "shift";
  std::optional<std::size_t> bound;
  std::optional<std::size_t> policy_length;
  std::optional<std::string> epsilon;
  std::optional<std::string> positivity;
  std::size_t max_len = 8;
  unsigned jobs = 1;
  std::optional<std::string> out;
};

void emit(const Options& o, const Json& j) {
  const std::string text = j.dump(2) + "\n";
  if (o.out) {
    write_text_file(*o.out, text);
  } else {
    std::cout << text;
  }
}

std::optional<Positivity> positivity_of(const Options& o) {
  if (!o.positivity) return std::nullopt;
  return parse_positivity(*o.positivity);
}

std::size_t require_bound(const Options& o) {
  if (!o.bound) throw std::invalid_argument("--bound is required for this scheme");
  if (*o.bound == 0) throw std::invalid_argument("--bound must be positive");
  return *o.bound;
}

int cmd_encode(const Options& o) {
  const DioPolynomial d = parse_dio(read_text_file(o.input));
  const Scheme scheme = parse_scheme(o.scheme);
  if (scheme == Scheme::coherent) {
    const CoherentProblem prob = coherent_encoding(d);
    emit(o, coherent_to_json(prob));
    std::cerr << "coherent encoding: " << prob.modes() << " modes, channels 0.." << prob.modes() << "\n";
    return kOk;
  }
  const std::size_t bound = require_bound(o);
  const Positivity pos = positivity_of(o).value_or(default_positivity(scheme));
  const ShiftEncoding enc = scheme == Scheme::shift ? shift_encoding(d, bound, o.policy_length, pos)
                                                    : damping_encoding(d, bound, o.policy_length, pos);
  for (const auto& w : enc.warnings) std::cerr << "warning: " << w << "\n";
  emit(o, problem_to_json(enc.problem));
  std::cerr << to_string(scheme) << " encoding: dimension " << enc.problem.dim() << ", channels 0.." << enc.n
            << ", policy length " << enc.policy_length << "\n";
  return kOk;
}

std::size_t default_length(const PolicySet& ap) {
  if (ap.is_grid()) return ap.grid().length;
  const std::size_t len = ap.policies().front().size();
  for (const auto& p : ap.policies()) {
    if (p.size() != len) throw std::invalid_argument("explicit policies differ in length; pass --policy-length");
  }
  return len;
}

int cmd_reduce(const Options& o) {
  const ControlProblem prob = problem_from_json(read_json_file(o.input));
  const std::size_t length = o.policy_length.value_or(default_length(prob.ap()));
  const ReductionResult r = o.epsilon ? epsilon_equation(prob, length, parse_rational(*o.epsilon))
                                      : exact_equation(prob, length);
  const std::string text = render_dio(r.equation);
  const Json legend = legend_to_json(r);
  if (o.out) {
    write_text_file(*o.out, text + "\n");
    write_text_file(*o.out + ".legend.json", legend.dump(2) + "\n");
  } else {
    std::cout << Json{{"equation", text}, {"legend", legend}}.dump(2) << "\n";
  }
  std::cerr << "equation in " << r.equation.nvars() << " unknowns, " << r.equation.size() << " terms, degree "
            << r.equation.degree() << "\n";
  return kOk;
}

int cmd_search(const Options& o) {
  const ProblemFile file = problem_file_from_json(read_json_file(o.input));
  if (const auto* coh = std::get_if<CoherentProblem>(&file)) {
    const SearchReport r = coherent_search(*coh, require_bound(o), positivity_of(o).value_or(Positivity::nonnegative));
    emit(o, report_to_json(r));
    std::cerr << r.evaluations << " count tuples, " << r.zeros.size() << " with J = 0\n";
    return r.zeros.empty() ? kAbsent : kOk;
  }
  const auto& prob = std::get<ControlProblem>(file);
  const SearchReport r = grid_search(prob, o.jobs);
  emit(o, report_to_json(r));
  std::cerr << r.evaluations << " policies, optimum " << to_string(r.optimal_value) << " attained by "
            << r.optimizers.size() << "\n";
  return sgn(r.optimal_value) == 0 ? kOk : kAbsent;
}

int cmd_verify(const Options& o) {
  const DioPolynomial d = parse_dio(read_text_file(o.input));
  const Scheme scheme = parse_scheme(o.scheme);
  const EquivalenceReport r = verify_equivalence(d, require_bound(o), scheme, positivity_of(o), o.jobs);
  emit(o, equivalence_to_json(r));
  std::cerr << "equal: " << (r.equal ? "true" : "false") << ", " << r.oracle_tuples.size() << " solutions\n";
  return r.equal ? kOk : kAbsent;
}

int cmd_lie_rank(const Options& o) {
  const ControllabilityVerdict v = is_controllable(hamiltonians_from_json(read_json_file(o.input)));
  emit(o, verdict_to_json(v));
  std::cerr << "closure dimension " << v.closure_dim << " (su: " << v.su_dim << "); " << v.note << "\n";
  return kOk;
}

int cmd_foursquare(const Options& o) {
  Integer m;
  if (m.set_str(o.input, 10) != 0) throw ParseError("not an integer: '" + o.input + "'");
  if (m < 0) throw std::invalid_argument("foursquare needs a nonnegative integer");
  const auto sq = four_square(m);
  std::string text = to_string(m) + " =";
  Json squares = Json::array();
  for (std::size_t k = 0; k < sq.size(); ++k) {
    text += (k == 0 ? " " : "+") + to_string(sq[k]) + "^2";
    squares.push_back(to_string(sq[k]));
  }
  emit(o, Json{{"m", to_string(m)}, {"squares", squares}, {"text", text}});
  std::cerr << text << "\n";
  return kOk;
}

// Input: {"rho0", "observable", "j0", "reset": [amplitudes], "gates"?: [...]}.
int cmd_reach(const Options& o) {
  const Json j = read_json_file(o.input);
  for (const char* key : {"rho0", "observable", "j0", "reset"}) {
    if (!j.contains(key)) throw ParseError(std::string("missing key '") + key + "'");
  }
  if (!o.epsilon) throw std::invalid_argument("--epsilon is required");
  GateSet gates;
  if (j.contains("gates")) {
    for (const auto& g : j.at("gates")) gates.push_back(matrix_from_json(g));
  } else {
    gates = default_gate_set();
  }
  std::vector<Complex> psi;
  for (const auto& a : j.at("reset")) psi.push_back(parse_complex(a.get<std::string>()));
  const SearchReport r =
      epsilon_reach(gates, DensityMatrix(matrix_from_json(j.at("rho0"))), matrix_from_json(j.at("observable")),
                    parse_rational(j.at("j0").get<std::string>()), parse_rational(*o.epsilon), o.max_len, psi);
  emit(o, report_to_json(r));
  std::cerr << r.evaluations << " words, closest J " << to_string(r.optimal_value) << "\n";
  return r.optimizers.empty() ? kAbsent : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Digitized quantum control and Diophantine equations, in exact arithmetic"};
  app.require_subcommand(1);
  Options o;

  auto add_input = [&](CLI::App* sub, const char* what) { sub->add_option("input", o.input, what)->required(); };
  auto add_out = [&](CLI::App* sub) { sub->add_option("--out", o.out, "Write the result to PATH"); };
  auto add_scheme = [&](CLI::App* sub) {
    sub->add_option("--scheme", o.scheme, "Encoding scheme")
        ->check(CLI::IsMember({"shift", "damping", "coherent"}));
  };
  auto add_positivity = [&](CLI::App* sub) {
    sub->add_option("--positivity", o.positivity, "Solution domain")
        ->check(CLI::IsMember({"positive", "nonnegative"}));
  };

  auto* encode = app.add_subcommand("encode", "Diophantine equation to control problem");
  add_input(encode, "Diophantine text file");
  add_scheme(encode);
  encode->add_option("--bound", o.bound, "Per-variable bound X");
  encode->add_option("--policy-length", o.policy_length, "Policy length Q");
  add_positivity(encode);
  add_out(encode);

  auto* reduce = app.add_subcommand("reduce", "Control problem to Diophantine equation");
  add_input(reduce, "Problem JSON file");
  reduce->add_option("--policy-length", o.policy_length, "Policy length P");
  reduce->add_option("--epsilon", o.epsilon, "Approximate variant with tolerance p/q");
  add_out(reduce);

  auto* search = app.add_subcommand("search", "Exhaustive optimum over the accessible policies");
  add_input(search, "Problem JSON or coherent descriptor");
  search->add_option("--bound", o.bound, "Count bound for coherent descriptors");
  add_positivity(search);
  search->add_option("--jobs", o.jobs, "Worker threads")->check(CLI::PositiveNumber);
  add_out(search);

  auto* verify = app.add_subcommand("verify", "Check an encoding against direct enumeration");
  add_input(verify, "Diophantine text file");
  add_scheme(verify);
  verify->add_option("--bound", o.bound, "Per-variable bound X")->required();
  add_positivity(verify);
  verify->add_option("--jobs", o.jobs, "Worker threads")->check(CLI::PositiveNumber);
  add_out(verify);

  auto* lie = app.add_subcommand("lie-rank", "Lie closure dimension of i*H0, i*V");
  add_input(lie, "JSON file {\"h0\", \"v\"}");
  add_out(lie);

  auto* four = app.add_subcommand("foursquare", "Write m as a sum of four squares");
  add_input(four, "Nonnegative integer m");
  add_out(four);

  auto* reach = app.add_subcommand("reach", "Bounded gate-word search for |J - j0| < epsilon");
  add_input(reach, "JSON file {\"rho0\", \"observable\", \"j0\", \"reset\", \"gates\"?}");
  reach->add_option("--epsilon", o.epsilon, "Tolerance p/q")->required();
  reach->add_option("--max-len", o.max_len, "Longest gate word L");
  add_out(reach);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kBadInput;
  }

  try {
    if (*encode) return cmd_encode(o);
    if (*reduce) return cmd_reduce(o);
    if (*search) return cmd_search(o);
    if (*verify) return cmd_verify(o);
    if (*lie) return cmd_lie_rank(o);
    if (*four) return cmd_foursquare(o);
    if (*reach) return cmd_reach(o);
  } catch (const LimitError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kGuard;
  } catch (const Json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  }
  return kBadInput;
}
