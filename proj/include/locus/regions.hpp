// Region bookkeeping for the three-sensor case: which closed balls contain
// a point, the census of the regions R_ijk / K / T, and the special points
// (Y, N, S_ij^±) that the case tables refer to.
//
// Three-sensor facts are decided inside the sensor plane: every ball meets
// that plane in a disk of the same radius, so 3D scenarios are first mapped
// to plane coordinates with `planar_scenario`.
#pragma once

#include "locus/model.hpp"

#include <array>
#include <optional>
#include <utility>
#include <vector>

namespace locus {

using Frame = PlaneFrame<double>;

/// Bit i set iff |W - Z_i| <= d_i (closed balls, kGeomEps slack).
unsigned classify_point(const Vec& w, const Scenario& s);

bool in_ball(const Vec& w, const Scenario& s, int i);

/// Membership in the closure of the region coded by `bits`: bit i set means
/// inside D_i, clear means in the closure of its complement.
bool in_region(const Vec& w, const Scenario& s, unsigned bits);

inline unsigned single_bit(int i) { return 1u << i; }

enum class TriState { No, Yes, Unknown };
std::string to_string(TriState t);

struct RegionCensus {
  /// contains[i][j]: D_j ⊂ D_i.
  std::array<std::array<bool, 3>, 3> contains{};
  bool r3_empty = true;
  /// Witness point in D_1 ∩ D_2 ∩ D_3 when r3_empty is false.
  std::optional<Vec> r3_witness;
  /// R_100, R_010, R_001 nonempty.
  std::array<bool, 3> r1_nonempty{};
  /// Each R_{1..} connected (always true in 3D and for empty regions).
  std::array<bool, 3> r1_connected{};
  TriState k_nonempty = TriState::Unknown;
  std::vector<Vec> t_points;
};

/// Census of a three-sensor scenario; t_points are in the scenario's own
/// coordinates. Throws CollinearError for collinear centers.
RegionCensus region_census(const Scenario& s);

/// K = triangle ∩ R_0 by adaptive subdivision of a planar (2D) scenario.
TriState k_nonempty(const Scenario& planar, int max_depth = 40, std::size_t max_nodes = 200000);

struct SpecialPoints {
  /// Centroid / midpoint (squared) or Fermat point (distance, I=3).
  std::optional<Vec> y0;
  /// Distance model, I=2: the part of the segment Z_1Z_2 outside both balls.
  std::optional<SegmentD> y0_segment;
  /// Y_100, Y_010, Y_001: a point, or for an equilateral distance triangle
  /// the whole arc.
  std::array<std::optional<Vec>, 3> y;
  std::array<std::optional<ArcD>, 3> y_arc;
  /// N_i on S_i. The distance model can give two tied points.
  std::array<std::vector<Vec>, 3> n;
  /// I=2 only: N_{-i}, the point of S_i facing away from the other center.
  std::array<std::optional<Vec>, 3> n_minus;
  /// Squared model, I=3: n_ij[i][j] = N_ij.
  std::array<std::array<std::optional<Vec>, 3>, 3> n_ij;
  /// S_12^±, S_23^±, S_31^± as (closest, farthest) to Y_0.
  std::array<std::optional<std::pair<Vec, Vec>>, 3> s_pm;
};

/// Index into SpecialPoints::s_pm for the unordered pair {i, j}.
int pair_slot(int i, int j);

/// Special points for I in {2, 3}, in the scenario's own coordinates.
SpecialPoints special_points(const Scenario& s);

/// Plane through the three centers (identity chart in 2D).
Frame sensor_plane(const Scenario& s);

/// The scenario expressed in plane coordinates (dim 2).
Scenario planar_scenario(const Scenario& s, const Frame& f);

/// Maps a piece from plane coordinates back to the scenario's space.
Piece lift_piece(const Piece& planar, const Frame& f);

bool is_equilateral(const Vec& a, const Vec& b, const Vec& c);

/// Distance model, I=3 (planar): points of S_i minimizing the sum of
/// distances to the other two centers.
std::vector<Vec> distance_n_points(const Scenario& planar, int i);

/// Sub-arcs (or isolated points) of `arc` lying in the closure of region `bits`.
std::vector<Piece> arc_within_region(const ArcD& arc, const Scenario& s, unsigned bits);

}  // namespace locus
