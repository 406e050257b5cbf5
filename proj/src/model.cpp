#include "locus/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace locus {

double psi(ErrorModel model, double y) { return model == ErrorModel::Distance ? y : y * y; }

double psi_prime(ErrorModel model, double y) { return model == ErrorModel::Distance ? 1.0 : 2.0 * y; }

std::string to_string(ErrorModel model) { return model == ErrorModel::Distance ? "distance" : "squared"; }

void Scenario::validate() const {
  if (dim != 2 && dim != 3) throw InvalidScenario("dim must be 2 or 3");
  if (sensors.empty() || sensors.size() > 3) throw InvalidScenario("between 1 and 3 sensors are required");
  for (std::size_t i = 0; i < sensors.size(); ++i) {
    const Sensor& s = sensors[i];
    const std::string where = "sensors[" + std::to_string(i) + "]";
    if (s.z.size() != dim) throw InvalidScenario(where + ".z must have " + std::to_string(dim) + " coordinates");
    if (!s.z.allFinite()) throw InvalidScenario(where + ".z must be finite");
    if (!std::isfinite(s.d) || s.d < 0) throw InvalidScenario(where + ".d must be finite and >= 0");
  }
}

double scenario_scale(const Scenario& s) {
  double scale = 1.0;
  for (const Sensor& sensor : s.sensors) scale = std::max({scale, sensor.z.cwiseAbs().maxCoeff(), sensor.d});
  return scale;
}

double eval_objective(const Vec& w, const Scenario& s) {
  if (w.size() != s.dim) throw DimensionMismatch("evaluation point dimension differs from scenario");
  double total = 0;
  for (const Sensor& sensor : s.sensors) {
    total += std::abs(psi(s.model, (w - sensor.z).norm()) - psi(s.model, sensor.d));
  }
  return total;
}

Vec eval_gradient(const Vec& w, const Scenario& s) {
  if (w.size() != s.dim) throw DimensionMismatch("evaluation point dimension differs from scenario");
  Vec g = Vec::Zero(s.dim);
  for (const Sensor& sensor : s.sensors) {
    const Vec delta = w - sensor.z;
    const double r = delta.norm();
    const double scale = std::max(1.0, sensor.d);
    if (r <= kGeomEps * scale) throw SingularPoint("gradient undefined at a sensor center");
    if (std::abs(r - sensor.d) <= kGeomEps * scale) throw SingularPoint("gradient undefined on a measurement sphere");
    const double sign = r > sensor.d ? 1.0 : -1.0;
    g += sign * psi_prime(s.model, r) * delta / r;
  }
  return g;
}

bool is_continuum(const Piece& piece) { return !std::holds_alternative<PointPiece>(piece); }

std::string piece_kind(const Piece& piece) {
  struct Visitor {
    std::string operator()(const PointPiece&) const { return "point"; }
    std::string operator()(const SegmentD&) const { return "segment"; }
    std::string operator()(const ArcD&) const { return "arc"; }
    std::string operator()(const CircleD&) const { return "circle"; }
    std::string operator()(const SpherePiece&) const { return "sphere"; }
  };
  return std::visit(Visitor{}, piece);
}

std::vector<Vec> sample_piece(const Piece& piece, int n) {
  std::vector<Vec> out;
  const int m = std::max(n, 2);
  if (const auto* p = std::get_if<PointPiece>(&piece)) {
    out.push_back(p->coords);
  } else if (const auto* seg = std::get_if<SegmentD>(&piece)) {
    for (int k = 0; k < m; ++k) out.push_back(seg->point_at(double(k) / (m - 1)));
  } else if (const auto* arc = std::get_if<ArcD>(&piece)) {
    for (int k = 0; k < m; ++k) out.push_back(arc->point_at(double(k) / (m - 1)));
  } else if (const auto* c = std::get_if<CircleD>(&piece)) {
    for (int k = 0; k < m; ++k) out.push_back(c->point_at(2 * std::numbers::pi * k / m));
  } else if (const auto* sp = std::get_if<SpherePiece>(&piece)) {
    if (sp->center.size() == 2) {
      for (int k = 0; k < m; ++k) {
        const double t = 2 * std::numbers::pi * k / m;
        out.push_back(sp->center + sp->radius * Vec(Eigen::Vector2d(std::cos(t), std::sin(t))));
      }
    } else {
      const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
      for (int k = 0; k < m; ++k) {
        const double y = 1.0 - 2.0 * (k + 0.5) / m;
        const double rho = std::sqrt(std::max(0.0, 1.0 - y * y));
        const double t = golden * k;
        out.push_back(sp->center + sp->radius * Vec(Eigen::Vector3d(rho * std::cos(t), y, rho * std::sin(t))));
      }
    }
  }
  return out;
}

namespace {

double distance_to_segment(const Vec& p, const SegmentD& seg) {
  const Vec dir = seg.b - seg.a;
  const double len2 = dir.squaredNorm();
  if (len2 == 0) return (p - seg.a).norm();
  const double t = std::clamp((p - seg.a).dot(dir) / len2, 0.0, 1.0);
  return (p - seg.point_at(t)).norm();
}

// Distance to the full circle and the in-plane angle of the closest point.
std::pair<double, double> distance_to_circle(const Vec& p, const CircleD& c) {
  Vec w = p - c.center;
  double height = 0;
  if (c.dim() == 3) {
    height = w.dot(c.normal);
    w -= height * c.normal;
  }
  const double radial = w.norm();
  const double angle = radial > 0 ? c.angle_of(c.center + w) : 0.0;
  return {std::hypot(radial - c.radius, height), angle};
}

}  // namespace

double distance_to_piece(const Vec& p, const Piece& piece) {
  if (const auto* pt = std::get_if<PointPiece>(&piece)) return (p - pt->coords).norm();
  if (const auto* seg = std::get_if<SegmentD>(&piece)) return distance_to_segment(p, *seg);
  if (const auto* c = std::get_if<CircleD>(&piece)) return distance_to_circle(p, *c).first;
  if (const auto* sp = std::get_if<SpherePiece>(&piece)) return std::abs((p - sp->center).norm() - sp->radius);
  const auto& arc = std::get<ArcD>(piece);
  const auto [dist, angle] = distance_to_circle(p, arc.circle);
  if (arc.contains_angle(angle)) return dist;
  return std::min((p - arc.point_at(0)).norm(), (p - arc.point_at(1)).norm());
}

std::string Cardinality::str() const { return infinite ? "infinite" : "finite:" + std::to_string(count); }

Cardinality Cardinality::parse(const std::string& text) {
  if (text == "infinite") return continuum();
  const std::string prefix = "finite:";
  if (text.rfind(prefix, 0) == 0) {
    std::size_t used = 0;
    const std::string rest = text.substr(prefix.size());
    int k = -1;
    try {
      k = std::stoi(rest, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == rest.size() && k >= 0) return finite(k);
  }
  throw std::invalid_argument("cardinality must be \"finite:K\" or \"infinite\", got \"" + text + "\"");
}

Cardinality SolutionSet::implied_cardinality() const {
  int points = 0;
  for (const Piece& p : pieces) {
    if (is_continuum(p)) return Cardinality::continuum();
    ++points;
  }
  return Cardinality::finite(points);
}

double distance_to_set(const Vec& p, const SolutionSet& set) {
  double best = std::numeric_limits<double>::infinity();
  for (const Piece& piece : set.pieces) best = std::min(best, distance_to_piece(p, piece));
  return best;
}

std::vector<Piece> point_pieces(const std::vector<Vec>& points, double radius) {
  std::vector<Piece> out;
  std::vector<Vec> kept;
  for (const Vec& p : points) {
    bool dup = false;
    for (const Vec& q : kept) dup = dup || (p - q).norm() <= radius;
    if (!dup) {
      kept.push_back(p);
      out.emplace_back(PointPiece{p});
    }
  }
  return out;
}

}  // namespace locus
