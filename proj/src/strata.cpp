#include "locus/strata.hpp"

#include "locus/numeric.hpp"
#include "locus/regions.hpp"

#include <cmath>
#include <numbers>

namespace locus {

namespace {

void add_pair_points(StratumCandidates& out, const Scenario& p) {
  for (int i = 0; i < 3; ++i) {
    const auto set = intersect(p.ball(i), p.ball((i + 1) % 3));
    for (const Vec& w : set.points) out.points.push_back(w);
  }
}

Vec on_circle(const Vec& center, double radius, double t) {
  Vec w(2);
  w << center(0) + radius * std::cos(t), center(1) + radius * std::sin(t);
  return w;
}

}  // namespace

StratumCandidates squared_candidates(const Scenario& p) {
  StratumCandidates out;
  const Vec sum = p.z(0) + p.z(1) + p.z(2);
  out.points.push_back(sum / 3);
  for (int i = 0; i < 3; ++i) out.points.push_back(sum - 2 * p.z(i));
  add_pair_points(out, p);
  for (int i = 0; i < 3; ++i) {
    const int j = (i + 1) % 3;
    const int k = (i + 2) % 3;
    out.points.push_back(p.z(i));
    if (p.d(i) <= 0) continue;
    // On S_i the Lagrange condition leaves W - Z_i parallel to
    // s_j (Z_i - Z_j) + s_k (Z_i - Z_k).
    for (double sk : {1.0, -1.0}) {
      const Vec v = (p.z(i) - p.z(j)) + sk * (p.z(i) - p.z(k));
      const double len = v.norm();
      if (len == 0) continue;
      out.points.push_back(p.z(i) + p.d(i) * v / len);
      out.points.push_back(p.z(i) - p.d(i) * v / len);
    }
  }
  return out;
}

StratumCandidates distance_candidates(const Scenario& p) {
  StratumCandidates out;
  out.points.push_back(fermat_point(p.z(0), p.z(1), p.z(2)));
  add_pair_points(out, p);
  for (int i = 0; i < 3; ++i) {
    const int j = (i + 1) % 3;
    const int k = (i + 2) % 3;
    out.points.push_back(p.z(i));
    for (const Vec& w : segment_sphere_intersect(p.z(j), p.z(k), p.ball(i))) out.points.push_back(w);
    // Cell critical points: Z_j Z_k seen under 60 or 120 degrees with the
    // bisector through Z_i, i.e. line(apex, Z_i) meets the apex circle.
    const double side = (p.z(j) - p.z(k)).norm();
    for (bool same : {true, false}) {
      const Vec apex = detail::equilateral_apex<double>(p.z(j), p.z(k), p.z(i), same);
      const Vec center = (apex + p.z(j) + p.z(k)) / 3;
      out.points.push_back(apex);
      const Vec to_zi = p.z(i) - apex;
      if (to_zi.norm() <= kGeomEps * std::max(1.0, side)) continue;
      const Vec dir = to_zi.normalized();
      out.points.push_back(apex - 2 * (apex - center).dot(dir) * dir);
    }
  }
  for (int i = 0; i < 3; ++i) {
    if (p.d(i) <= 0) continue;
    const auto f = [&](double t) { return eval_objective(on_circle(p.z(i), p.d(i), t), p); };
    for (const auto& m : periodic_minima(f)) out.points.push_back(on_circle(p.z(i), p.d(i), m.first));
  }
  if (is_equilateral(p.z(0), p.z(1), p.z(2))) {
    // On the far arc between Z_j and Z_k, r_i = r_j + r_k, so the objective
    // is constant wherever the signs of i versus j, k are opposite.
    for (int i = 0; i < 3; ++i) {
      const int j = (i + 1) % 3;
      const int k = (i + 2) % 3;
      const ArcD arc = apex_arc(p.z(i), p.z(j), p.z(k)).arc;
      for (unsigned bits : {single_bit(i), single_bit(j) | single_bit(k)}) {
        for (const Piece& piece : arc_within_region(arc, p, bits)) {
          if (const auto* a = std::get_if<ArcD>(&piece)) {
            out.arcs.push_back(*a);
          } else {
            out.points.push_back(std::get<PointPiece>(piece).coords);
          }
        }
      }
    }
  }
  return out;
}

StratumCandidates stratum_candidates(const Scenario& p) {
  return p.model == ErrorModel::Squared ? squared_candidates(p) : distance_candidates(p);
}

}  // namespace locus
