// Objective and gradient tables on a regular grid, and the level-set radii
// of the one-sensor objective.
#pragma once

#include "locus/model.hpp"
#include "locus/oracle.hpp"

#include <iosfwd>
#include <optional>
#include <vector>

namespace locus {

struct FieldRow {
  Vec coords;
  double value = 0;
};

struct GradientRow {
  Vec coords;
  Vec gradient;  // empty when singular
  bool singular = false;
};

/// Rows in grid order (last axis fastest).
std::vector<FieldRow> objective_field(const Scenario& s, const GridSpec& g);

/// Nodes where the gradient is undefined keep their row with `singular` set.
std::vector<GradientRow> gradient_field(const Scenario& s, const GridSpec& g);

struct LevelRadii {
  double level = 0;
  std::optional<double> inner;
  double outer = 0;
};

/// Radii of {W : |psi(|W - Z_1|) - psi(d1)| = c}.
std::vector<LevelRadii> level_radii(double d1, ErrorModel model, const std::vector<double>& levels);

void write_csv(std::ostream& out, const std::vector<FieldRow>& rows, int dim);
void write_csv(std::ostream& out, const std::vector<GradientRow>& rows, int dim);

}  // namespace locus
