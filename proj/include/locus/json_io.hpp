// JSON encoding of scenarios and solution sets. Field names are fixed;
// unknown fields are rejected so fixture drift is caught early.
#pragma once

#include "locus/model.hpp"

#include <json.hpp>

#include <string>

namespace locus {

struct OracleSolution;
struct GridSpec;

using Json = nlohmann::json;

/// Raised for malformed or schema-violating input. `what()` names the
/// offending field or the parse position.
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Scenario scenario_from_json(const Json& j);
Json scenario_to_json(const Scenario& s);

/// Parses text (with line/column diagnostics on syntax errors), then the
/// scenario schema, then validates the scenario.
Scenario parse_scenario(const std::string& text);
Scenario load_scenario(const std::string& path);

Json solution_to_json(const SolutionSet& set);
SolutionSet solution_from_json(const Json& j);

Json oracle_to_json(const OracleSolution& o, const GridSpec& g);

}  // namespace locus
