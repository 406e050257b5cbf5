#include "locus/fieldgen.hpp"

#include "locus/parallel.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace locus {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

const char* const kAxis[] = {"x", "y", "z"};

void write_coords(std::ostream& out, const Vec& w) {
  for (Eigen::Index k = 0; k < w.size(); ++k) out << fmt(w(k)) << ',';
}

}  // namespace

std::vector<FieldRow> objective_field(const Scenario& s, const GridSpec& g) {
  g.validate();
  std::vector<FieldRow> rows(g.node_count());
  parallel_for(rows.size(), [&](std::size_t k) {
    rows[k].coords = g.node(k);
    rows[k].value = eval_objective(rows[k].coords, s);
  });
  return rows;
}

std::vector<GradientRow> gradient_field(const Scenario& s, const GridSpec& g) {
  g.validate();
  std::vector<GradientRow> rows(g.node_count());
  parallel_for(rows.size(), [&](std::size_t k) {
    rows[k].coords = g.node(k);
    try {
      rows[k].gradient = eval_gradient(rows[k].coords, s);
    } catch (const SingularPoint&) {
      rows[k].singular = true;
    }
  });
  return rows;
}

std::vector<LevelRadii> level_radii(double d1, ErrorModel model, const std::vector<double>& levels) {
  if (!(d1 > 0)) throw std::invalid_argument("level_radii: d1 must be positive");
  std::vector<LevelRadii> out;
  for (double c : levels) {
    if (!(c >= 0)) throw std::invalid_argument("level_radii: levels must be nonnegative");
    LevelRadii r;
    r.level = c;
    if (model == ErrorModel::Distance) {
      r.outer = d1 + c;
      if (c <= d1) r.inner = d1 - c;
    } else {
      r.outer = std::sqrt(d1 * d1 + c);
      if (c <= d1 * d1) r.inner = std::sqrt(d1 * d1 - c);
    }
    out.push_back(r);
  }
  return out;
}

void write_csv(std::ostream& out, const std::vector<FieldRow>& rows, int dim) {
  for (int k = 0; k < dim; ++k) out << kAxis[k] << ',';
  out << "value\n";
  for (const FieldRow& r : rows) {
    write_coords(out, r.coords);
    out << fmt(r.value) << '\n';
  }
}

void write_csv(std::ostream& out, const std::vector<GradientRow>& rows, int dim) {
  for (int k = 0; k < dim; ++k) out << kAxis[k] << ',';
  for (int k = 0; k < dim; ++k) out << 'g' << kAxis[k] << ',';
  out << "singular\n";
  for (const GradientRow& r : rows) {
    write_coords(out, r.coords);
    for (int k = 0; k < dim; ++k) out << (r.singular ? "nan" : fmt(r.gradient(k))) << ',';
    out << (r.singular ? 1 : 0) << '\n';
  }
}

}  // namespace locus
