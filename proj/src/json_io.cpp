#include "locus/json_io.hpp"

#include "locus/oracle.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace locus {

namespace {

void reject_unknown(const Json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) throw SchemaError(where + ": expected an object");
  for (const auto& item : j.items()) {
    if (!allowed.contains(item.key())) throw SchemaError(where + ": unknown field \"" + item.key() + "\"");
  }
  for (const auto& key : allowed) {
    if (!j.contains(key)) throw SchemaError(where + ": missing field \"" + key + "\"");
  }
}

double number(const Json& j, const std::string& where) {
  if (!j.is_number()) throw SchemaError(where + ": expected a number");
  return j.get<double>();
}

Vec vec(const Json& j, const std::string& where) {
  if (!j.is_array()) throw SchemaError(where + ": expected an array of numbers");
  Vec v(static_cast<Eigen::Index>(j.size()));
  if (j.size() > 3) throw SchemaError(where + ": at most 3 coordinates");
  for (std::size_t k = 0; k < j.size(); ++k) v(static_cast<Eigen::Index>(k)) = number(j[k], where + "[" + std::to_string(k) + "]");
  return v;
}

Json vec_json(const Vec& v) {
  Json out = Json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) out.push_back(v(k));
  return out;
}

}  // namespace

Scenario scenario_from_json(const Json& j) {
  reject_unknown(j, {"dim", "model", "sensors"}, "scenario");
  Scenario s;
  if (!j["dim"].is_number_integer()) throw SchemaError("dim: expected 2 or 3");
  s.dim = j["dim"].get<int>();
  if (s.dim != 2 && s.dim != 3) throw SchemaError("dim: expected 2 or 3");
  const Json& model = j["model"];
  if (model == "distance") {
    s.model = ErrorModel::Distance;
  } else if (model == "squared") {
    s.model = ErrorModel::Squared;
  } else {
    throw SchemaError("model: expected \"distance\" or \"squared\"");
  }
  if (!j["sensors"].is_array()) throw SchemaError("sensors: expected an array");
  std::size_t i = 0;
  for (const Json& item : j["sensors"]) {
    const std::string where = "sensors[" + std::to_string(i++) + "]";
    reject_unknown(item, {"z", "d"}, where);
    s.sensors.push_back(Sensor{vec(item["z"], where + ".z"), number(item["d"], where + ".d")});
  }
  try {
    s.validate();
  } catch (const InvalidScenario& e) {
    throw SchemaError(e.what());
  }
  return s;
}

Json scenario_to_json(const Scenario& s) {
  Json sensors = Json::array();
  for (const Sensor& sensor : s.sensors) sensors.push_back({{"z", vec_json(sensor.z)}, {"d", sensor.d}});
  return {{"dim", s.dim}, {"model", to_string(s.model)}, {"sensors", sensors}};
}

Scenario parse_scenario(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw SchemaError(e.what());
  }
  return scenario_from_json(j);
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

Json solution_to_json(const SolutionSet& set) {
  Json pieces = Json::array();
  for (const Piece& piece : set.pieces) {
    Json p;
    p["kind"] = piece_kind(piece);
    if (const auto* pt = std::get_if<PointPiece>(&piece)) {
      p["coords"] = vec_json(pt->coords);
    } else if (const auto* seg = std::get_if<SegmentD>(&piece)) {
      p["a"] = vec_json(seg->a);
      p["b"] = vec_json(seg->b);
    } else if (const auto* arc = std::get_if<ArcD>(&piece)) {
      p["center"] = vec_json(arc->circle.center);
      p["radius"] = arc->circle.radius;
      p["normal"] = vec_json(arc->circle.normal);
      p["start"] = arc->start;
      p["end"] = arc->end;
    } else if (const auto* c = std::get_if<CircleD>(&piece)) {
      p["center"] = vec_json(c->center);
      p["radius"] = c->radius;
      p["normal"] = vec_json(c->normal);
    } else if (const auto* sp = std::get_if<SpherePiece>(&piece)) {
      p["center"] = vec_json(sp->center);
      p["radius"] = sp->radius;
    }
    pieces.push_back(std::move(p));
  }
  return {{"case", set.case_label},
          {"min_value", set.min_value},
          {"cardinality", set.cardinality.str()},
          {"resolved", set.resolved},
          {"pieces", pieces}};
}

SolutionSet solution_from_json(const Json& j) {
  reject_unknown(j, {"case", "min_value", "cardinality", "resolved", "pieces"}, "solution");
  SolutionSet set;
  if (!j["case"].is_string()) throw SchemaError("case: expected a string");
  set.case_label = j["case"].get<std::string>();
  set.min_value = number(j["min_value"], "min_value");
  if (!j["cardinality"].is_string()) throw SchemaError("cardinality: expected a string");
  try {
    set.cardinality = Cardinality::parse(j["cardinality"].get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw SchemaError(e.what());
  }
  if (!j["resolved"].is_boolean()) throw SchemaError("resolved: expected a boolean");
  set.resolved = j["resolved"].get<bool>();
  if (!j["pieces"].is_array()) throw SchemaError("pieces: expected an array");
  std::size_t i = 0;
  for (const Json& p : j["pieces"]) {
    const std::string where = "pieces[" + std::to_string(i++) + "]";
    if (!p.is_object() || !p.contains("kind") || !p["kind"].is_string()) throw SchemaError(where + ": missing kind");
    const std::string kind = p["kind"].get<std::string>();
    if (kind == "point") {
      reject_unknown(p, {"kind", "coords"}, where);
      set.pieces.emplace_back(PointPiece{vec(p["coords"], where + ".coords")});
    } else if (kind == "segment") {
      reject_unknown(p, {"kind", "a", "b"}, where);
      set.pieces.emplace_back(SegmentD{vec(p["a"], where + ".a"), vec(p["b"], where + ".b")});
    } else if (kind == "arc") {
      reject_unknown(p, {"kind", "center", "radius", "normal", "start", "end"}, where);
      CircleD c{vec(p["center"], where + ".center"), number(p["radius"], where + ".radius"),
                vec(p["normal"], where + ".normal")};
      set.pieces.emplace_back(ArcD{c, number(p["start"], where + ".start"), number(p["end"], where + ".end")});
    } else if (kind == "circle") {
      reject_unknown(p, {"kind", "center", "radius", "normal"}, where);
      set.pieces.emplace_back(CircleD{vec(p["center"], where + ".center"), number(p["radius"], where + ".radius"),
                                      vec(p["normal"], where + ".normal")});
    } else if (kind == "sphere") {
      reject_unknown(p, {"kind", "center", "radius"}, where);
      set.pieces.emplace_back(SpherePiece{vec(p["center"], where + ".center"), number(p["radius"], where + ".radius")});
    } else {
      throw SchemaError(where + ": unknown kind \"" + kind + "\"");
    }
  }
  return set;
}

Json oracle_to_json(const OracleSolution& o, const GridSpec& g) {
  Json bounds = Json::array();
  for (int k = 0; k < g.dim(); ++k) bounds.push_back({g.lo(k), g.hi(k)});
  Json minima = Json::array();
  for (const Vec& w : o.minima) minima.push_back(vec_json(w));
  Json isolated = Json::array();
  for (const Vec& w : o.isolated) isolated.push_back(vec_json(w));
  Json out = {{"bounds", bounds},
              {"resolution", g.resolution},
              {"min_value", o.min_value},
              {"minima", minima},
              {"isolated", isolated},
              {"cardinality", o.cardinality().str()},
              {"evidence", o.evidence},
              {"continuum", nullptr}};
  if (o.continuum) {
    Json samples = Json::array();
    for (const Vec& w : o.continuum->samples) samples.push_back(vec_json(w));
    out["continuum"] = {{"dimension", o.continuum->dimension}, {"samples", samples}};
  }
  return out;
}

}  // namespace locus
