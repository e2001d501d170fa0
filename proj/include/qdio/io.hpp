#pragma once

// JSON file formats. Every scalar is an exact string ("p/q" or "p/q+r/s i").

#include <json.hpp>

#include <string>
#include <variant>

#include "qdio/channels.hpp"
#include "qdio/coherent.hpp"
#include "qdio/controllability.hpp"
#include "qdio/reduction.hpp"
#include "qdio/search.hpp"

namespace qdio {

using Json = nlohmann::json;

Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);

// {"dim", "channels": [{"kraus": [...]}], "rho0", "target", "ap"}.
Json problem_to_json(const ControlProblem& prob);
ControlProblem problem_from_json(const Json& j);

// {"scheme": "coherent", "dio": "<text>"}.
Json coherent_to_json(const CoherentProblem& prob);
CoherentProblem coherent_from_json(const Json& j);

// Either kind of problem file.
using ProblemFile = std::variant<ControlProblem, CoherentProblem>;
ProblemFile problem_file_from_json(const Json& j);

Json report_to_json(const SearchReport& r);
Json equivalence_to_json(const EquivalenceReport& r);
Json verdict_to_json(const ControllabilityVerdict& v);
// {"p": P, "ancillas": [...], "scale": "q", "variables": {"x1": "p1", ...}}.
Json legend_to_json(const ReductionResult& r);
Json tuple_to_json(const Tuple& t);

HamiltonianPair hamiltonians_from_json(const Json& j);

Json read_json_file(const std::string& path);
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace qdio
