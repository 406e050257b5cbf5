// Shared helpers for the unit and acceptance tests.
#pragma once

#include "locus/json_io.hpp"
#include "locus/model.hpp"

#include <cmath>
#include <random>
#include <string>
#include <vector>

namespace locus::testing_support {

inline std::string fixture(const std::string& name) { return std::string(LOCUS_FIXTURE_DIR) + "/" + name + ".json"; }

inline Scenario load(const std::string& name) { return load_scenario(fixture(name)); }

inline Vec v2(double x, double y) {
  Vec v(2);
  v << x, y;
  return v;
}

inline Vec v3(double x, double y, double z) {
  Vec v(3);
  v << x, y, z;
  return v;
}

inline Scenario make(int dim, ErrorModel model, const std::vector<std::pair<Vec, double>>& sensors) {
  Scenario s;
  s.dim = dim;
  s.model = model;
  for (const auto& [z, d] : sensors) s.sensors.push_back(Sensor{z, d});
  return s;
}

inline Vec random_point(std::mt19937_64& rng, int dim, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  Vec v(dim);
  for (int k = 0; k < dim; ++k) v(k) = u(rng);
  return v;
}

/// Centers uniform in [-3,3]^dim, ranges uniform in [0,4]; three centers are
/// redrawn until the triangle is clearly non-degenerate.
inline Scenario random_scenario(std::mt19937_64& rng, int count, int dim, ErrorModel model) {
  std::uniform_real_distribution<double> range(0.0, 4.0);
  for (;;) {
    Scenario s;
    s.dim = dim;
    s.model = model;
    for (int i = 0; i < count; ++i) s.sensors.push_back(Sensor{random_point(rng, dim, -3, 3), range(rng)});
    if (count == 2 && (s.z(0) - s.z(1)).norm() < 0.2) continue;
    if (count == 3) {
      const Vec a = s.z(1) - s.z(0);
      const Vec b = s.z(2) - s.z(0);
      const double area2 = std::sqrt(std::max(0.0, a.squaredNorm() * b.squaredNorm() - a.dot(b) * a.dot(b)));
      const double longest = std::max({a.norm(), b.norm(), (s.z(2) - s.z(1)).norm()});
      if (area2 < 0.1 * longest * longest) continue;
    }
    return s;
  }
}

inline double stddev(const std::vector<double>& xs) {
  double mean = 0;
  for (double x : xs) mean += x;
  mean /= static_cast<double>(xs.size());
  double var = 0;
  for (double x : xs) var += (x - mean) * (x - mean);
  return std::sqrt(var / static_cast<double>(xs.size()));
}

inline std::vector<double> values_along(const Piece& piece, const Scenario& s, int n) {
  std::vector<double> out;
  for (const Vec& w : sample_piece(piece, n)) out.push_back(eval_objective(w, s));
  return out;
}

}  // namespace locus::testing_support
