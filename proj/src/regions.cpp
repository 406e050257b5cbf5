#include "locus/regions.hpp"

#include "locus/numeric.hpp"

#include <cmath>
#include <numbers>

namespace locus {

namespace {

double slack(double d) { return kGeomEps * std::max(1.0, d); }

Vec toward(const Vec& from, const Vec& to, double len) {
  const Vec dir = to - from;
  const double n = dir.norm();
  if (n == 0) return from;
  return from + len * dir / n;
}

void require_three(const Scenario& s) {
  if (s.count() != 3) throw std::invalid_argument("three sensors required");
  if (are_collinear(s.z(0), s.z(1), s.z(2))) throw CollinearError("sensor centers are collinear");
}

// Half-angle of the arc of S_i covered by D_j, seen from Z_i: pi for the
// whole circle, negative for none.
double cap_half_angle(const Scenario& s, int i, int j) {
  const double di = s.d(i);
  const double dj = s.d(j);
  const double dist = (s.z(j) - s.z(i)).norm();
  if (dist <= slack(di)) return dj >= di - slack(di) ? std::numbers::pi : -1.0;
  const double c = (di * di + dist * dist - dj * dj) / (2 * di * dist);
  if (c <= -1.0) return std::numbers::pi;
  if (c > 1.0 + kGeomEps) return -1.0;
  return std::acos(std::min(1.0, c));
}

struct CoverResult {
  bool covered = false;
  int gaps = 0;
};

CoverResult circle_cover(const Scenario& s, int i, int j, int k) {
  const double hj = cap_half_angle(s, i, j);
  const double hk = cap_half_angle(s, i, k);
  const double pi = std::numbers::pi;
  const double tol = 1e-9;
  CoverResult out;
  if (hj >= pi - tol || hk >= pi - tol) {
    out.covered = true;
    return out;
  }
  if (hj < 0 && hk < 0) {
    out.gaps = 1;
    return out;
  }
  if (hj < 0 || hk < 0) {
    out.gaps = 1;
    return out;
  }
  const Vec a = s.z(j) - s.z(i);
  const Vec b = s.z(k) - s.z(i);
  const double delta = std::acos(std::clamp(a.dot(b) / (a.norm() * b.norm()), -1.0, 1.0));
  if (hj + hk >= 2 * pi - delta - tol) {
    out.covered = true;
  } else {
    out.gaps = (hj + hk < delta - tol) ? 2 : 1;
  }
  return out;
}

bool in_all(const Vec& w, const Scenario& s) {
  for (int i = 0; i < s.count(); ++i) {
    if (!in_ball(w, s, i)) return false;
  }
  return true;
}

std::optional<Vec> triple_witness(const Scenario& s) {
  // The point of D_i ∩ D_j nearest Z_k is Z_k itself, a projection of Z_k on
  // one ball, or a corner of the lens; one of them is in D_k iff the triple
  // intersection is nonempty.
  for (int k = 0; k < 3; ++k) {
    const int i = (k + 1) % 3;
    const int j = (k + 2) % 3;
    std::vector<Vec> cands{s.z(k)};
    for (int m : {i, j}) {
      if ((s.z(k) - s.z(m)).norm() > s.d(m)) cands.push_back(toward(s.z(m), s.z(k), s.d(m)));
    }
    const auto pair = intersect(s.ball(i), s.ball(j));
    for (const Vec& p : pair.points) cands.push_back(p);
    for (const Vec& c : cands) {
      if (in_all(c, s)) return c;
    }
  }
  return std::nullopt;
}

}  // namespace

unsigned classify_point(const Vec& w, const Scenario& s) {
  unsigned bits = 0;
  for (int i = 0; i < s.count(); ++i) {
    if (in_ball(w, s, i)) bits |= single_bit(i);
  }
  return bits;
}

bool in_ball(const Vec& w, const Scenario& s, int i) { return (w - s.z(i)).norm() <= s.d(i) + slack(s.d(i)); }

bool in_region(const Vec& w, const Scenario& s, unsigned bits) {
  for (int i = 0; i < s.count(); ++i) {
    const double r = (w - s.z(i)).norm();
    if (bits & single_bit(i)) {
      if (r > s.d(i) + slack(s.d(i))) return false;
    } else if (r < s.d(i) - slack(s.d(i))) {
      return false;
    }
  }
  return true;
}

std::string to_string(TriState t) {
  switch (t) {
    case TriState::No:
      return "no";
    case TriState::Yes:
      return "yes";
    default:
      return "unknown";
  }
}

Frame sensor_plane(const Scenario& s) { return Frame::through(s.z(0), s.z(1), s.z(2)); }

Scenario planar_scenario(const Scenario& s, const Frame& f) {
  Scenario p = s;
  p.dim = 2;
  for (Sensor& sensor : p.sensors) sensor.z = f.local(sensor.z);
  return p;
}

Piece lift_piece(const Piece& planar, const Frame& f) {
  if (f.dim == 2) return planar;
  if (const auto* pt = std::get_if<PointPiece>(&planar)) return PointPiece{f.global(pt->coords)};
  if (const auto* seg = std::get_if<SegmentD>(&planar)) return SegmentD{f.global(seg->a), f.global(seg->b)};
  if (const auto* arc = std::get_if<ArcD>(&planar)) {
    CircleD c{f.global(arc->circle.center), arc->circle.radius, f.normal()};
    const double start = c.angle_of(f.global(arc->point_at(0)));
    return ArcD{c, start, start + arc->span()};
  }
  if (const auto* c = std::get_if<CircleD>(&planar)) return CircleD{f.global(c->center), c->radius, f.normal()};
  const auto& sp = std::get<SpherePiece>(planar);
  return SpherePiece{f.global(sp.center), sp.radius};
}

bool is_equilateral(const Vec& a, const Vec& b, const Vec& c) {
  const double ab = (a - b).norm();
  const double bc = (b - c).norm();
  const double ca = (c - a).norm();
  const double hi = std::max({ab, bc, ca});
  const double lo = std::min({ab, bc, ca});
  return hi - lo <= kGeomEps * std::max(1.0, hi);
}

TriState k_nonempty(const Scenario& p, int max_depth, std::size_t max_nodes) {
  const double margin = kGeomEps * scenario_scale(p);
  const auto outside_all = [&](const Vec& w) {
    for (int i = 0; i < p.count(); ++i) {
      if ((w - p.z(i)).norm() <= p.d(i) + margin) return false;
    }
    return true;
  };
  const auto covered_by_one = [&](const Vec& a, const Vec& b, const Vec& c) {
    for (int i = 0; i < p.count(); ++i) {
      const double lim = p.d(i) + slack(p.d(i));
      if ((a - p.z(i)).norm() <= lim && (b - p.z(i)).norm() <= lim && (c - p.z(i)).norm() <= lim) return true;
    }
    return false;
  };
  struct Tri {
    Vec a, b, c;
    int depth;
  };
  std::vector<Tri> stack{{p.z(0), p.z(1), p.z(2), 0}};
  std::size_t nodes = 0;
  bool exhausted = false;
  while (!stack.empty()) {
    Tri t = std::move(stack.back());
    stack.pop_back();
    ++nodes;
    const Vec g = (t.a + t.b + t.c) / 3;
    if (outside_all(t.a) || outside_all(t.b) || outside_all(t.c) || outside_all(g)) return TriState::Yes;
    if (covered_by_one(t.a, t.b, t.c)) continue;
    if (t.depth >= max_depth || nodes >= max_nodes) {
      exhausted = true;
      continue;
    }
    const Vec ab = (t.a + t.b) / 2;
    const Vec bc = (t.b + t.c) / 2;
    const Vec ca = (t.c + t.a) / 2;
    const int d = t.depth + 1;
    stack.push_back({t.a, ab, ca, d});
    stack.push_back({ab, t.b, bc, d});
    stack.push_back({ca, bc, t.c, d});
    stack.push_back({ab, bc, ca, d});
  }
  return exhausted ? TriState::Unknown : TriState::No;
}

RegionCensus region_census(const Scenario& s) {
  require_three(s);
  const Frame f = sensor_plane(s);
  const Scenario p = planar_scenario(s, f);
  RegionCensus c;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      c.contains[i][j] = i == j || (p.z(i) - p.z(j)).norm() + p.d(j) <= p.d(i) + slack(p.d(i));
    }
  }
  c.r3_witness = triple_witness(p);
  c.r3_empty = !c.r3_witness.has_value();
  if (c.r3_witness) c.r3_witness = f.global(*c.r3_witness);
  for (int i = 0; i < 3; ++i) {
    const int j = (i + 1) % 3;
    const int k = (i + 2) % 3;
    if (p.d(i) <= slack(0)) {
      const Vec& zi = p.z(i);
      const bool free = (zi - p.z(j)).norm() > p.d(j) + slack(p.d(j)) && (zi - p.z(k)).norm() > p.d(k) + slack(p.d(k));
      c.r1_nonempty[i] = free;
      c.r1_connected[i] = true;
      continue;
    }
    const CoverResult cover = circle_cover(p, i, j, k);
    c.r1_nonempty[i] = !cover.covered;
    c.r1_connected[i] = s.dim == 3 || cover.covered || cover.gaps < 2 || c.r3_empty;
  }
  c.k_nonempty = k_nonempty(p);
  for (int i = 0; i < 3; ++i) {
    const int j = (i + 1) % 3;
    const int k = (i + 2) % 3;
    if (p.d(i) <= 0) continue;
    for (const Vec& w : segment_sphere_intersect(p.z(j), p.z(k), p.ball(i))) {
      if (!in_region(w, p, single_bit(i))) continue;
      const Vec g = f.global(w);
      bool dup = false;
      for (const Vec& q : c.t_points) dup = dup || (q - g).norm() <= 1e-9 * scenario_scale(s);
      if (!dup) c.t_points.push_back(g);
    }
  }
  return c;
}

int pair_slot(int i, int j) {
  if (i > j) std::swap(i, j);
  if (i == 0 && j == 1) return 0;
  if (i == 1 && j == 2) return 1;
  return 2;
}

std::vector<Vec> distance_n_points(const Scenario& p, int i) {
  const int j = (i + 1) % 3;
  const int k = (i + 2) % 3;
  if (p.d(i) <= 0) return {p.z(i)};
  const auto crossing = segment_sphere_intersect(p.z(j), p.z(k), p.ball(i));
  std::vector<Vec> out;
  if (!crossing.empty()) {
    for (const Vec& w : crossing) {
      bool dup = false;
      for (const Vec& q : out) dup = dup || (q - w).norm() <= 1e-12 * scenario_scale(p);
      if (!dup) out.push_back(w);
    }
    return out;
  }
  const Vec zi = p.z(i);
  const double di = p.d(i);
  const auto at = [&](double t) {
    Vec w(2);
    w << zi(0) + di * std::cos(t), zi(1) + di * std::sin(t);
    return w;
  };
  const auto f = [&](double t) {
    const Vec w = at(t);
    return (w - p.z(j)).norm() + (w - p.z(k)).norm();
  };
  const auto minima = periodic_minima(f);
  double best = std::numeric_limits<double>::infinity();
  for (const auto& m : minima) best = std::min(best, m.second);
  for (const auto& m : minima) {
    if (m.second <= best + 1e-9 * std::max(1.0, best)) out.push_back(at(m.first));
  }
  return out;
}

std::vector<Piece> arc_within_region(const ArcD& arc, const Scenario& s, unsigned bits) {
  constexpr int n = 4096;
  std::vector<char> inside(n + 1);
  for (int k = 0; k <= n; ++k) inside[k] = in_region(arc.point_at(double(k) / n), s, bits);
  // Bisection uses exact membership so the ends land on the bounding spheres.
  const auto strictly_in = [&](const Vec& w) {
    for (int i = 0; i < s.count(); ++i) {
      const bool want = (bits >> i) & 1u;
      const double r = (w - s.z(i)).norm();
      if (want ? r > s.d(i) : r < s.d(i)) return false;
    }
    return true;
  };
  const auto boundary = [&](double t_out, double t_in) {
    for (int it = 0; it < 60; ++it) {
      const double mid = (t_out + t_in) / 2;
      if (strictly_in(arc.point_at(mid))) {
        t_in = mid;
      } else {
        t_out = mid;
      }
    }
    return t_in;
  };
  std::vector<Piece> out;
  int k = 0;
  while (k <= n) {
    if (!inside[k]) {
      ++k;
      continue;
    }
    int e = k;
    while (e + 1 <= n && inside[e + 1]) ++e;
    const double t0 = k == 0 ? 0.0 : boundary(double(k - 1) / n, double(k) / n);
    const double t1 = e == n ? 1.0 : boundary(double(e + 1) / n, double(e) / n);
    if ((t1 - t0) * std::abs(arc.span()) * arc.circle.radius <= 1e-9) {
      out.emplace_back(PointPiece{arc.point_at(t0)});
    } else {
      out.emplace_back(ArcD{arc.circle, arc.start + t0 * arc.span(), arc.start + t1 * arc.span()});
    }
    k = e + 1;
  }
  return out;
}

namespace {

void fill_pm(SpecialPoints& sp, const Scenario& p) {
  for (int i = 0; i < 3; ++i) {
    const int j = (i + 1) % 3;
    const int k = (i + 2) % 3;
    const auto set = intersect(p.ball(i), p.ball(j));
    if (set.kind != IntersectionKind::Point && set.kind != IntersectionKind::PointPair) continue;
    try {
      sp.s_pm[pair_slot(i, j)] = extremal_points(set, *sp.y0);
    } catch (const DegenerateError&) {
      sp.s_pm[pair_slot(i, j)] = extremal_points(set, p.z(k));
    }
  }
}

SpecialPoints planar_special_points(const Scenario& p) {
  SpecialPoints sp;
  if (p.model == ErrorModel::Squared) {
    sp.y0 = Vec((p.z(0) + p.z(1) + p.z(2)) / 3);
    for (int i = 0; i < 3; ++i) sp.y[i] = Vec(p.z(0) + p.z(1) + p.z(2) - 2 * p.z(i));
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        if ((*sp.y[j] - p.z(i)).norm() > 0) sp.n_ij[i][j] = toward(p.z(i), *sp.y[j], p.d(i));
      }
      if (sp.n_ij[i][i]) sp.n[i] = {*sp.n_ij[i][i]};
    }
  } else {
    sp.y0 = fermat_point(p.z(0), p.z(1), p.z(2));
    const bool equilateral = is_equilateral(p.z(0), p.z(1), p.z(2));
    for (int i = 0; i < 3; ++i) {
      const int j = (i + 1) % 3;
      const int k = (i + 2) % 3;
      const auto aa = apex_arc(p.z(i), p.z(j), p.z(k));
      if (equilateral) {
        sp.y_arc[i] = aa.arc;
      } else {
        const Vec dir = (p.z(i) - aa.apex).normalized();
        const double t = -2 * (aa.apex - aa.arc.circle.center).dot(dir);
        const Vec w = aa.apex + t * dir;
        if (aa.arc.contains_angle(aa.arc.circle.angle_of(w))) sp.y[i] = w;
      }
      sp.n[i] = distance_n_points(p, i);
    }
  }
  fill_pm(sp, p);
  return sp;
}

}  // namespace

SpecialPoints special_points(const Scenario& s) {
  if (s.count() == 2) {
    SpecialPoints sp;
    const Vec z1 = s.z(0);
    const Vec z2 = s.z(1);
    const double len = (z2 - z1).norm();
    sp.y0 = Vec((z1 + z2) / 2);
    if (len <= 0) return sp;
    const Vec u = (z2 - z1) / len;
    if (s.model == ErrorModel::Distance) {
      if (s.d(0) + s.d(1) <= len + slack(len)) sp.y0_segment = SegmentD{z1 + s.d(0) * u, z2 - s.d(1) * u};
      sp.y0.reset();
    }
    sp.n[0] = {z1 + s.d(0) * u};
    sp.n[1] = {z2 - s.d(1) * u};
    sp.n_minus[0] = z1 - s.d(0) * u;
    sp.n_minus[1] = z2 + s.d(1) * u;
    const auto set = intersect(s.ball(0), s.ball(1));
    if (set.kind == IntersectionKind::Point || set.kind == IntersectionKind::PointPair) {
      try {
        sp.s_pm[0] = extremal_points(set, Vec((z1 + z2) / 2));
      } catch (const DegenerateError&) {
        sp.s_pm[0] = std::pair{set.points[0], set.points.back()};
      }
    }
    return sp;
  }
  require_three(s);
  const Frame f = sensor_plane(s);
  const SpecialPoints sp2 = planar_special_points(planar_scenario(s, f));
  if (s.dim == 2) return sp2;
  SpecialPoints sp;
  const auto g = [&](const Vec& v) { return f.global(v); };
  if (sp2.y0) sp.y0 = g(*sp2.y0);
  for (int i = 0; i < 3; ++i) {
    if (sp2.y[i]) sp.y[i] = g(*sp2.y[i]);
    if (sp2.y_arc[i]) sp.y_arc[i] = std::get<ArcD>(lift_piece(*sp2.y_arc[i], f));
    for (const Vec& v : sp2.n[i]) sp.n[i].push_back(g(v));
    for (int j = 0; j < 3; ++j) {
      if (sp2.n_ij[i][j]) sp.n_ij[i][j] = g(*sp2.n_ij[i][j]);
    }
    if (sp2.s_pm[i]) sp.s_pm[i] = std::pair{g(sp2.s_pm[i]->first), g(sp2.s_pm[i]->second)};
  }
  return sp;
}

}  // namespace locus
