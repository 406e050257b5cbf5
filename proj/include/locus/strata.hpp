// Exhaustive candidate enumeration for the three-sensor objective in the
// sensor plane. The objective is smooth away from the circles S_i and the
// centers, so every minimizer is a critical point of one smooth piece:
// an open cell, a single circle, or a corner (S_ij point or center).
// Each piece contributes its critical points below.
#pragma once

#include "locus/model.hpp"

#include <vector>

namespace locus {

struct StratumCandidates {
  std::vector<Vec> points;
  /// Arcs on which the objective is constant (equilateral distance case).
  std::vector<ArcD> arcs;
};

/// Squared model, planar I=3: all closed-form critical points.
StratumCandidates squared_candidates(const Scenario& planar);

/// Distance model, planar I=3: closed-form cell critical points, numerically
/// refined circle minima, corners, and the constant arcs of an equilateral
/// triangle.
StratumCandidates distance_candidates(const Scenario& planar);

StratumCandidates stratum_candidates(const Scenario& planar);

}  // namespace locus
