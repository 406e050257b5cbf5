// Brute-force global minimizer used to check analytic answers: a grid scan
// with a Lipschitz seed bound, derivative-free polishing, and clustering of
// the minima into isolated points or continua.
#pragma once

#include "locus/model.hpp"

#include <optional>
#include <string>
#include <vector>

namespace locus {

struct GridSpec {
  Vec lo;
  Vec hi;
  int resolution = 0;

  [[nodiscard]] int dim() const { return static_cast<int>(lo.size()); }
  [[nodiscard]] double cell(int axis) const { return (hi(axis) - lo(axis)) / (resolution - 1); }
  [[nodiscard]] double cell_diagonal() const;
  [[nodiscard]] std::size_t node_count() const;
  /// Row-major node: the last axis varies fastest.
  [[nodiscard]] Vec node(std::size_t index) const;
  void validate() const;
};

/// Every tolerance the oracle and the verifier use.
struct OracleConfig {
  int resolution = 0;  // 0: 201 per axis in 2D, 81 in 3D
  double dedup_radius = 1e-6;
  double cluster_cells = 3.0;
  double near_min_rel = 1e-8;
  double step_floor = 1e-10;
  double active_band = 1e-6;
  double capture_band = 1e-3;
  std::size_t max_seeds = 4000;
  double position_tol = 1e-5;
  double value_rel_tol = 1e-6;
  double group_radius = 1e-4;
  int piece_samples = 64;
};

struct ScanResult {
  double best_value = 0;
  double seed_margin = 0;
  std::vector<Vec> seeds;
  std::size_t near_minimal = 0;
};

struct ContinuumInfo {
  int dimension = 1;
  std::vector<Vec> samples;
};

struct OracleSolution {
  double min_value = 0;
  /// Minima after deduplication; on a continuum these are samples of it.
  std::vector<Vec> minima;
  /// Isolated minimizers, one representative per group.
  std::vector<Vec> isolated;
  std::optional<ContinuumInfo> continuum;
  std::size_t evidence = 0;

  [[nodiscard]] Cardinality cardinality() const;
};

/// Bounding box of the centers inflated by max_i d_i + 1; 201 nodes per axis
/// in 2D and 81 in 3D unless `resolution` is positive.
GridSpec default_grid(const Scenario& s, int resolution = 0);

/// Deterministic scan. Seeds are nodes within best + seed_margin, picked in
/// increasing value with at most one seed per 3^dim node block.
ScanResult grid_scan(const Scenario& s, const GridSpec& g, const OracleConfig& cfg = {});

/// Pattern search from each seed, then a search restricted to the spheres
/// the point sits on, then a final full-space pass. Output is deduplicated.
std::vector<Vec> polish(const Scenario& s, const std::vector<Vec>& seeds, double initial_step,
                        const OracleConfig& cfg = {});

OracleSolution characterize(const Scenario& s, const std::vector<Vec>& minima, const GridSpec& g,
                            std::size_t evidence, const OracleConfig& cfg = {});

OracleSolution run_oracle(const Scenario& s, const GridSpec& g, const OracleConfig& cfg = {});
OracleSolution run_oracle(const Scenario& s, const OracleConfig& cfg = {});

enum class Verdict { Pass, Fail, OracleOnly };
std::string to_string(Verdict v);

struct VerificationReport {
  Verdict verdict = Verdict::Pass;
  double analytic_min = 0;
  double oracle_min = 0;
  Cardinality analytic_cardinality;
  Cardinality oracle_cardinality;
  std::vector<std::string> discrepancies;

  [[nodiscard]] std::string str() const;
};

/// Compares an analytic set with the oracle for the same scenario.
VerificationReport verify(const Scenario& s, const SolutionSet& analytic, const OracleSolution& oracle,
                          const OracleConfig& cfg = {});

}  // namespace locus
