#include "locus/analytic.hpp"

#include "locus/oracle.hpp"
#include "locus/regions.hpp"
#include "locus/strata.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

namespace locus {

namespace {

double tie_tol(double m) { return 1e-8 * std::max(1.0, std::abs(m)); }

std::string order_tag(std::initializer_list<int> idx) {
  std::string out = " (order ";
  bool first = true;
  for (int i : idx) {
    out += (first ? "" : ",") + std::to_string(i + 1);
    first = false;
  }
  return out + ")";
}

double representative_value(const Piece& piece, const Scenario& s) {
  const auto samples = sample_piece(piece, 3);
  return eval_objective(samples[samples.size() / 2], s);
}

SolutionSet finish(const Scenario& s, std::string label, std::vector<Piece> pieces) {
  SolutionSet out;
  out.case_label = std::move(label);
  out.pieces = std::move(pieces);
  out.cardinality = out.implied_cardinality();
  out.min_value = std::numeric_limits<double>::infinity();
  for (const Piece& p : out.pieces) out.min_value = std::min(out.min_value, representative_value(p, s));
  out.resolved = true;
  return out;
}

SolutionSet oracle_fallback(const Scenario& s, std::string label) {
  const OracleSolution o = run_oracle(s);
  SolutionSet out;
  out.case_label = std::move(label);
  out.pieces = point_pieces(o.continuum ? o.minima : o.isolated);
  out.cardinality = o.cardinality();
  out.min_value = o.min_value;
  out.resolved = false;
  return out;
}

std::vector<Piece> intersection_pieces(const IntersectionSet<double>& set) {
  std::vector<Piece> out;
  if (set.kind == IntersectionKind::Circle) {
    out.emplace_back(*set.circle);
  } else {
    for (const Vec& w : set.points) out.emplace_back(PointPiece{w});
  }
  return out;
}

struct Proposal {
  std::string label;
  std::vector<Piece> pieces;
};

Proposal point_proposal(std::string label, const Vec& w) { return Proposal{std::move(label), {PointPiece{w}}}; }

// ---------------------------------------------------------------- squared

struct SquaredContext {
  const Scenario& p;
  const SpecialPoints& sp;
  const RegionCensus& c;
};

std::optional<Proposal> s_plus(const SquaredContext& x, int i, int j, const std::string& what, int k) {
  const auto& pm = x.sp.s_pm[pair_slot(i, j)];
  if (!pm) return std::nullopt;
  return point_proposal("three-squared: " + what + order_tag({i, j, k}), pm->first);
}

// Ball i contains both others.
std::optional<Proposal> nested_table(const SquaredContext& x, int i, int j, int k) {
  const Scenario& p = x.p;
  const Vec& y = *x.sp.y[i];
  const std::string tag = order_tag({i, j, k});
  if (in_region(y, p, single_bit(i))) return point_proposal("three-squared: nested balls, Y_100 in R_100" + tag, y);
  if (!in_ball(y, p, i) && x.sp.n_ij[i][i]) {
    return point_proposal("three-squared: nested balls, Y_100 outside D_1, N_1" + tag, *x.sp.n_ij[i][i]);
  }
  if (in_ball(y, p, j) && x.sp.n_ij[j][i]) {
    const Vec& n21 = *x.sp.n_ij[j][i];
    if (in_region(n21, p, single_bit(i))) return point_proposal("three-squared: nested balls, N_21" + tag, n21);
    if (in_ball(n21, p, k)) return s_plus(x, j, k, "nested balls, N_21 in D_3, S_23^+", i);
  }
  return std::nullopt;
}

// K and R_3 both empty; ball i meets both others.
std::optional<Proposal> meeting_table(const SquaredContext& x, int i, int j, int k) {
  const Scenario& p = x.p;
  const Vec& y = *x.sp.y[i];
  const std::string tag = order_tag({i, j, k});
  const auto& ni = x.sp.n_ij[i][i];
  const auto& nji = x.sp.n_ij[j][i];
  if (in_region(y, p, single_bit(i))) return point_proposal("three-squared: K and R_3 empty, Y_100" + tag, y);
  if (ni && in_region(y, p, 0) && in_region(*ni, p, 0)) {
    return point_proposal("three-squared: K and R_3 empty, N_1" + tag, *ni);
  }
  if (nji && in_ball(y, p, j) && in_region(*nji, p, single_bit(i))) {
    return point_proposal("three-squared: K and R_3 empty, N_21" + tag, *nji);
  }
  if ((ni && in_region(y, p, 0) && in_ball(*ni, p, j)) || (nji && in_ball(y, p, j) && in_region(*nji, p, 0))) {
    return s_plus(x, i, j, "K and R_3 empty, S_12^+", k);
  }
  return std::nullopt;
}

bool balls_meet(const Scenario& p, int i, int j) {
  return (p.z(i) - p.z(j)).norm() <= p.d(i) + p.d(j) + kGeomEps * std::max(1.0, p.d(i) + p.d(j));
}

std::optional<Proposal> squared_dispatch(const SquaredContext& x, int dim, bool& undecided) {
  const Scenario& p = x.p;
  const RegionCensus& c = x.c;
  for (int k = 0; k < 3; ++k) {
    const int i = (k + 1) % 3;
    const int j = (k + 2) % 3;
    if (c.contains[i][k] && c.contains[j][k]) {
      if (auto r = s_plus(x, std::min(i, j), std::max(i, j), "D_3 inside D_1 ∩ D_2, S_12^+", k)) return r;
    }
  }
  for (int i = 0; i < 3; ++i) {
    const int j = (i + 1) % 3;
    const int k = (i + 2) % 3;
    if (c.contains[i][j] && c.contains[i][k]) {
      if (auto r = nested_table(x, i, j, k)) return r;
      if (auto r = nested_table(x, i, k, j)) return r;
    }
  }
  if (dim == 2 && !c.r3_empty) {
    for (int i = 0; i < 3; ++i) {
      if (!c.r1_nonempty[i] || c.r1_connected[i]) continue;
      const int j = (i + 1) % 3;
      const int k = (i + 2) % 3;
      if (auto r = nested_table(x, i, j, k)) return r;
      if (auto r = nested_table(x, i, k, j)) return r;
    }
  }
  if (c.r3_empty && c.k_nonempty == TriState::Unknown) {
    undecided = true;
    return std::nullopt;
  }
  if (c.k_nonempty == TriState::Yes) {
    const Vec& y0 = *x.sp.y0;
    if (in_region(y0, p, 0)) return point_proposal("three-squared: K nonempty, Y_0 in R_0", y0);
    for (int i = 0; i < 3; ++i) {
      if (!in_ball(y0, p, i) || !x.sp.n_ij[i][i]) continue;
      const Vec& ni = *x.sp.n_ij[i][i];
      const int j = (i + 1) % 3;
      const int k = (i + 2) % 3;
      if (in_region(ni, p, 0)) return point_proposal("three-squared: K nonempty, N_1" + order_tag({i, j, k}), ni);
      for (int m : {j, k}) {
        if (in_ball(ni, p, m)) {
          if (auto r = s_plus(x, i, m, "K nonempty, N_1 in D_2, S_12^+", 3 - i - m)) return r;
        }
      }
    }
  }
  if (c.k_nonempty == TriState::No && c.r3_empty) {
    for (int i = 0; i < 3; ++i) {
      const int j = (i + 1) % 3;
      const int k = (i + 2) % 3;
      if (!balls_meet(p, i, j) || !balls_meet(p, i, k)) continue;
      if (auto r = meeting_table(x, i, j, k)) return r;
      if (auto r = meeting_table(x, i, k, j)) return r;
    }
  }
  if (dim == 2 && !c.r3_empty && c.r1_nonempty[0] && c.r1_nonempty[1] && c.r1_nonempty[2] && c.r1_connected[0] &&
      c.r1_connected[1] && c.r1_connected[2]) {
    std::vector<Vec> cands;
    for (const auto& pm : x.sp.s_pm) {
      if (!pm) continue;
      cands.push_back(pm->first);
      cands.push_back(pm->second);
    }
    if (!cands.empty()) {
      double best = std::numeric_limits<double>::infinity();
      for (const Vec& w : cands) best = std::min(best, eval_objective(w, p));
      std::vector<Vec> arg;
      for (const Vec& w : cands) {
        if (eval_objective(w, p) <= best + tie_tol(best)) arg.push_back(w);
      }
      return Proposal{"three-squared: R_3 nonempty, all R_100 nonempty and connected, argmin over S_ij^±",
                      point_pieces(arg, 1e-9 * scenario_scale(p))};
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------- distance

std::optional<Proposal> distance_dispatch(const Scenario& p, const SpecialPoints& sp, const RegionCensus& c) {
  const Vec& y0 = *sp.y0;
  if (in_region(y0, p, 0)) return point_proposal("three-distance: Y_0 in R_0, Fermat point", y0);
  for (int i = 0; i < 3; ++i) {
    const int j = (i + 1) % 3;
    const int k = (i + 2) % 3;
    if (sp.y_arc[i]) {
      auto pieces = arc_within_region(*sp.y_arc[i], p, single_bit(i));
      if (!pieces.empty()) {
        return Proposal{"three-distance: equilateral, arc of Y_100 in R_100" + order_tag({i, j, k}), std::move(pieces)};
      }
    } else if (sp.y[i] && in_region(*sp.y[i], p, single_bit(i))) {
      return point_proposal("three-distance: Y_100 in R_100" + order_tag({i, j, k}), *sp.y[i]);
    }
  }
  if (!c.t_points.empty()) {
    std::vector<Piece> pieces;
    for (const Vec& w : c.t_points) pieces.emplace_back(PointPiece{w});
    return Proposal{"three-distance: T nonempty", std::move(pieces)};
  }
  if (c.k_nonempty != TriState::Yes) return std::nullopt;
  for (int i = 0; i < 3; ++i) {
    if (!in_region(y0, p, single_bit(i)) || sp.n[i].empty()) continue;
    const int j = (i + 1) % 3;
    const int k = (i + 2) % 3;
    const bool all_free = std::all_of(sp.n[i].begin(), sp.n[i].end(), [&](const Vec& w) { return in_region(w, p, 0); });
    if (all_free) {
      std::vector<Piece> pieces;
      for (const Vec& w : sp.n[i]) pieces.emplace_back(PointPiece{w});
      return Proposal{"three-distance: K nonempty, Y_0 in R_100, N_1 in R_0" + order_tag({i, j, k}), std::move(pieces)};
    }
    for (int m : {j, k}) {
      const bool hit = std::any_of(sp.n[i].begin(), sp.n[i].end(), [&](const Vec& w) { return in_ball(w, p, m); });
      const auto& pm = sp.s_pm[pair_slot(i, m)];
      if (hit && pm) {
        return point_proposal("three-distance: K nonempty, Y_0 in R_100, N_1 in D_2, S_12^+" + order_tag({i, m, 3 - i - m}),
                              pm->first);
      }
    }
  }
  for (int i = 0; i < 3; ++i) {
    const int j = (i + 1) % 3;
    const int a = std::min(i, j);
    const int b = std::max(i, j);
    const auto& pm = sp.s_pm[pair_slot(a, b)];
    if (pm && in_region(y0, p, single_bit(a) | single_bit(b))) {
      return point_proposal("three-distance: K nonempty, Y_0 in R_110, S_12^+" + order_tag({a, b, 3 - a - b}), pm->first);
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------- checking

struct Judgement {
  bool certified = false;
  std::vector<Piece> enumerated;
};

std::pair<double, double> value_range(const Piece& piece, const Scenario& p) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const Vec& w : sample_piece(piece, 33)) {
    const double v = eval_objective(w, p);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  return {lo, hi};
}

bool lies_on(const Piece& piece, const std::vector<Piece>& set, double tol) {
  SolutionSet tmp;
  tmp.pieces = set;
  for (const Vec& w : sample_piece(piece, 33)) {
    if (distance_to_set(w, tmp) > tol) return false;
  }
  return true;
}

Judgement judge(const Scenario& p, const std::optional<Proposal>& prop, const StratumCandidates& e) {
  const double pos_tol = 1e-6 * scenario_scale(p);
  std::vector<double> pv;
  std::vector<double> av;
  double m = std::numeric_limits<double>::infinity();
  for (const Vec& w : e.points) {
    pv.push_back(eval_objective(w, p));
    m = std::min(m, pv.back());
  }
  for (const ArcD& a : e.arcs) {
    av.push_back(value_range(Piece{a}, p).second);
    m = std::min(m, av.back());
  }
  std::vector<std::pair<double, double>> prop_ranges;
  if (prop) {
    for (const Piece& piece : prop->pieces) {
      prop_ranges.push_back(value_range(piece, p));
      m = std::min(m, prop_ranges.back().first);
    }
  }
  const double tol = tie_tol(m);
  Judgement out;
  for (std::size_t k = 0; k < e.arcs.size(); ++k) {
    if (av[k] <= m + tol) out.enumerated.emplace_back(e.arcs[k]);
  }
  for (std::size_t k = 0; k < e.points.size(); ++k) {
    if (pv[k] > m + tol) continue;
    const Piece pt = PointPiece{e.points[k]};
    if (!lies_on(pt, out.enumerated, pos_tol)) out.enumerated.push_back(pt);
  }
  if (!prop) return out;
  out.certified = std::all_of(prop_ranges.begin(), prop_ranges.end(), [&](const auto& r) { return r.second <= m + tol; });
  for (const Piece& piece : out.enumerated) out.certified = out.certified && lies_on(piece, prop->pieces, pos_tol);
  return out;
}

SolutionSet lifted(const Scenario& s, const Frame& f, std::string label, const std::vector<Piece>& planar) {
  std::vector<Piece> pieces;
  for (const Piece& piece : planar) pieces.push_back(lift_piece(piece, f));
  return finish(s, std::move(label), std::move(pieces));
}

std::string refuted_note(const std::optional<Proposal>& prop) {
  return prop ? " (table answer refuted: " + prop->label + ")" : " (no table row applies)";
}

std::optional<SolutionSet> triple_or_collinear(const Scenario& s) {
  if (are_collinear(s.z(0), s.z(1), s.z(2))) return oracle_fallback(s, "three sensors: collinear centers");
  const auto triple = three_sphere_intersect(s.ball(0), s.ball(1), s.ball(2));
  if (!triple.empty()) return finish(s, "three sensors: S_123 nonempty", intersection_pieces(triple));
  return std::nullopt;
}

}  // namespace

SolutionSet solve_one(const Scenario& s) {
  if (s.d(0) <= 0) return finish(s, "one sensor: zero range, Z_1", {PointPiece{s.z(0)}});
  if (s.dim == 2) return finish(s, "one sensor: S_1", {CircleD{s.z(0), s.d(0), Vec()}});
  return finish(s, "one sensor: S_1", {SpherePiece{s.z(0), s.d(0)}});
}

SolutionSet solve_two(const Scenario& s) {
  const int a = s.d(1) > s.d(0) ? 1 : 0;
  const int b = 1 - a;
  const std::string tag = order_tag({a, b});
  const Vec z1 = s.z(a);
  const Vec z2 = s.z(b);
  const double d1 = s.d(a);
  const double d2 = s.d(b);
  const double len = (z2 - z1).norm();
  const double eps = kGeomEps * scenario_scale(s);
  if (len <= eps) return oracle_fallback(s, "two sensors: coincident centers");
  const Vec u = (z2 - z1) / len;
  const Vec n1 = z1 + d1 * u;
  const auto segment_or_point = [&](const Vec& p, const Vec& q) -> Piece {
    if ((p - q).norm() <= eps) return PointPiece{(p + q) / 2};
    return SegmentD{p, q};
  };
  if (s.model == ErrorModel::Squared) {
    if (d1 <= len / 2) return finish(s, "two-squared (a): midpoint Y_0" + tag, {PointPiece{(z1 + z2) / 2}});
    if (d1 < len && d1 + d2 <= len) return finish(s, "two-squared (b): N_1" + tag, {PointPiece{n1}});
    if (d1 - d2 < len && len < d1 + d2) {
      return finish(s, "two-squared (c): S_12" + tag, intersection_pieces(intersect(s.ball(a), s.ball(b))));
    }
    return finish(s, "two-squared (d): N_1" + tag, {PointPiece{n1}});
  }
  if (d1 + d2 <= len) return finish(s, "two-distance (a): Y_0 segment" + tag, {segment_or_point(n1, z2 - d2 * u)});
  if (d1 - d2 <= len) {
    auto pieces = intersection_pieces(intersect(s.ball(a), s.ball(b)));
    if (pieces.empty()) pieces.emplace_back(PointPiece{n1});
    return finish(s, "two-distance (b): S_12" + tag, std::move(pieces));
  }
  return finish(s, "two-distance (c): segment N_-2 N_1" + tag, {segment_or_point(z2 + d2 * u, n1)});
}

SolutionSet solve_three_squared(const Scenario& s) {
  if (auto early = triple_or_collinear(s)) return *early;
  const Frame f = sensor_plane(s);
  const Scenario p = planar_scenario(s, f);
  const SpecialPoints sp = special_points(p);
  const RegionCensus c = region_census(p);
  bool undecided = false;
  const auto prop = squared_dispatch(SquaredContext{p, sp, c}, s.dim, undecided);
  const Judgement j = judge(p, prop, squared_candidates(p));
  if (j.certified) return lifted(s, f, prop->label, prop->pieces);
  if (undecided && !prop) return oracle_fallback(s, "three-squared: census undecided (K unknown)");
  return lifted(s, f, "three-squared: enumerated" + refuted_note(prop), j.enumerated);
}

SolutionSet solve_three_distance(const Scenario& s) {
  if (auto early = triple_or_collinear(s)) return *early;
  const Frame f = sensor_plane(s);
  const Scenario p = planar_scenario(s, f);
  const SpecialPoints sp = special_points(p);
  const RegionCensus c = region_census(p);
  const auto prop = distance_dispatch(p, sp, c);
  const Judgement j = judge(p, prop, distance_candidates(p));
  if (j.certified) return lifted(s, f, prop->label, prop->pieces);
  if (c.k_nonempty == TriState::Yes) return lifted(s, f, "three-distance: enumerated" + refuted_note(prop), j.enumerated);
  const std::string why = c.k_nonempty == TriState::No ? "K empty" : "K undecided";
  return oracle_fallback(s, "three-distance: open case, " + why + refuted_note(prop));
}

SolutionSet solve(const Scenario& s) {
  s.validate();
  switch (s.count()) {
    case 1:
      return solve_one(s);
    case 2:
      return solve_two(s);
    default:
      return s.model == ErrorModel::Squared ? solve_three_squared(s) : solve_three_distance(s);
  }
}

bool overridden(const SolutionSet& set) { return set.case_label.find("refuted") != std::string::npos; }

}  // namespace locus
