// Scenario data model, the two error models and the summed-error
// objective with its gradient, plus the solution-set representation.
#pragma once

#include "locus/geom.hpp"

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace locus {

using BallD = Ball<double>;
using CircleD = Circle<double>;
using ArcD = Arc<double>;
using SegmentD = Segment<double>;

enum class ErrorModel { Distance, Squared };

/// psi(y) = y for the distance model and y^2 for the squared model.
double psi(ErrorModel model, double y);
double psi_prime(ErrorModel model, double y);
std::string to_string(ErrorModel model);

class InvalidScenario : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SingularPoint : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Sensor {
  Vec z;
  double d = 0;
};

struct Scenario {
  int dim = 2;
  ErrorModel model = ErrorModel::Distance;
  std::vector<Sensor> sensors;

  [[nodiscard]] int count() const { return static_cast<int>(sensors.size()); }
  [[nodiscard]] BallD ball(int i) const { return BallD{sensors[i].z, sensors[i].d}; }
  [[nodiscard]] const Vec& z(int i) const { return sensors[i].z; }
  [[nodiscard]] double d(int i) const { return sensors[i].d; }

  /// Throws InvalidScenario unless 1 <= I <= 3, dim is 2 or 3, every center
  /// has `dim` finite coordinates and every range is finite and >= 0.
  void validate() const;
};

/// Characteristic length: max(1, largest |coordinate|, largest range).
double scenario_scale(const Scenario& s);

/// O(W) = sum_i |psi(|W - Z_i|) - psi(d_i)|.
double eval_objective(const Vec& w, const Scenario& s);

/// Gradient of O away from the spheres S_i and the centers Z_i. Throws
/// SingularPoint within kGeomEps (normalized) of either.
Vec eval_gradient(const Vec& w, const Scenario& s);

struct PointPiece {
  Vec coords;
};

struct SpherePiece {
  Vec center;
  double radius = 0;
};

using Piece = std::variant<PointPiece, SegmentD, ArcD, CircleD, SpherePiece>;

[[nodiscard]] bool is_continuum(const Piece& piece);
[[nodiscard]] std::string piece_kind(const Piece& piece);

/// `n` points spread over the piece (a point piece yields its point once).
/// Sphere pieces use a Fibonacci lattice; curves are sampled uniformly in
/// their parameter including both endpoints.
[[nodiscard]] std::vector<Vec> sample_piece(const Piece& piece, int n);

/// Euclidean distance from p to the piece.
[[nodiscard]] double distance_to_piece(const Vec& p, const Piece& piece);

struct Cardinality {
  bool infinite = false;
  int count = 0;

  static Cardinality finite(int k) { return {false, k}; }
  static Cardinality continuum() { return {true, 0}; }
  [[nodiscard]] std::string str() const;
  static Cardinality parse(const std::string& text);
  bool operator==(const Cardinality&) const = default;
};

struct SolutionSet {
  std::string case_label;
  std::vector<Piece> pieces;
  Cardinality cardinality;
  double min_value = 0;
  bool resolved = true;

  /// Cardinality implied by the pieces: infinite if any continuum piece,
  /// otherwise the number of point pieces.
  [[nodiscard]] Cardinality implied_cardinality() const;
};

/// Minimum distance from p to any piece of the set.
[[nodiscard]] double distance_to_set(const Vec& p, const SolutionSet& set);

/// Point pieces for `points`, dropping duplicates within `radius`.
[[nodiscard]] std::vector<Piece> point_pieces(const std::vector<Vec>& points, double radius = 1e-7);

}  // namespace locus
