// Closed-form case dispatch from a scenario to its exact minimizer set.
//
// For three sensors the case tables are applied in the sensor plane and
// their answer is checked against the full candidate enumeration from
// strata.hpp before it is returned. When the table answer is missing or
// contradicted, the squared model (and the distance model when K is
// nonempty) returns the enumeration result under the label "enumerated";
// otherwise the result is unresolved and carries oracle minima.
#pragma once

#include "locus/model.hpp"

#include <string>

namespace locus {

SolutionSet solve_one(const Scenario& s);

/// Sorts the sensors so that d_1 >= d_2; the label records the order used.
SolutionSet solve_two(const Scenario& s);

SolutionSet solve_three_squared(const Scenario& s);
SolutionSet solve_three_distance(const Scenario& s);

/// Dispatch on I and the error model. Validates the scenario first.
SolutionSet solve(const Scenario& s);

/// True if the label marks a table answer that was replaced by enumeration.
bool overridden(const SolutionSet& set);

}  // namespace locus
