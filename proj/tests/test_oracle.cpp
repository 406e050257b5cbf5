#include "locus/oracle.hpp"

#include "locus/analytic.hpp"
#include "locus/json_io.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <fstream>

namespace locus {
namespace {

using testing_support::fixture;
using testing_support::load;
using testing_support::make;
using testing_support::v2;
using testing_support::v3;

TEST(DefaultGrid, Rules) {
  const GridSpec g = default_grid(load("i1_distance_2d"));
  EXPECT_EQ(g.resolution, 201);
  EXPECT_EQ(g.lo, v2(-2, -2));
  EXPECT_EQ(g.hi, v2(2, 2));
  EXPECT_EQ(default_grid(load("i1_distance_3d")).resolution, 81);
  const GridSpec n = default_grid(load("i2_distance_c"));
  EXPECT_LE(n.lo(0), 3);
  EXPECT_GE(n.hi(0), 3);
  EXPECT_EQ(default_grid(load("i1_distance_2d"), 51).resolution, 51);
}

TEST(GridSpecTest, NodesAndValidation) {
  GridSpec g{v2(0, 0), v2(1, 2), 3};
  EXPECT_EQ(g.node_count(), 9u);
  EXPECT_EQ(g.node(0), v2(0, 0));
  EXPECT_EQ(g.node(1), v2(0, 1));
  EXPECT_EQ(g.node(8), v2(1, 2));
  EXPECT_NO_THROW(g.validate());
  EXPECT_ANY_THROW((GridSpec{v2(0, 0), v2(1, 2), 2}).validate());
  EXPECT_ANY_THROW((GridSpec{v2(1, 0), v2(0, 2), 5}).validate());
}

TEST(GridScan, SeedsRingOnUnitCircle) {
  const Scenario s = load("i1_distance_2d");
  const GridSpec g = default_grid(s);
  const ScanResult r = grid_scan(s, g);
  ASSERT_FALSE(r.seeds.empty());
  for (const Vec& w : r.seeds) {
    if (w.norm() < 1e-12) continue;  // the center is always seeded
    EXPECT_NEAR(w.norm(), 1, 2 * g.cell_diagonal());
  }
}

TEST(GridScan, SquaredMidpointSingleCluster) {
  const Scenario s = load("i2_squared_a");
  const GridSpec g = default_grid(s);
  const ScanResult r = grid_scan(s, g);
  // outside both disks O = best + 2 |w - midpoint|^2, so seeds sit in one disk
  const double reach = std::sqrt(r.seed_margin / 2) + g.cell_diagonal();
  double nearest = 1e300;
  for (const Vec& w : r.seeds) {
    const bool center = (w - s.z(0)).norm() < 1e-12 || (w - s.z(1)).norm() < 1e-12;
    if (center) continue;
    EXPECT_LT((w - v2(2, 0)).norm(), reach);
    nearest = std::min(nearest, (w - v2(2, 0)).norm());
  }
  EXPECT_LE(nearest, g.cell_diagonal());
}

TEST(GridScan, TripleIntersectionTwoClusters) {
  const Scenario s = load("i3_s123_3d");
  const ScanResult r = grid_scan(s, default_grid(s));
  bool up = false, down = false;
  for (const Vec& w : r.seeds) {
    up = up || (w - v3(1, 0, 1)).norm() < 0.2;
    down = down || (w - v3(1, 0, -1)).norm() < 0.2;
  }
  EXPECT_TRUE(up && down);
}

TEST(Polish, ConvergesToKnownMinima) {
  const Scenario a = load("i2_squared_a");
  const auto pa = polish(a, {v2(1.9, 0.1)}, 0.05);
  ASSERT_EQ(pa.size(), 1u);
  EXPECT_LT((pa[0] - v2(2, 0)).norm(), 1e-7);
  const Scenario b = load("i2_squared_b");
  const auto pb = polish(b, {v2(2.4, 0)}, 0.05);
  ASSERT_EQ(pb.size(), 1u);
  EXPECT_LT((pb[0] - v2(2.5, 0)).norm(), 1e-7);
  const Scenario c = load("i1_distance_2d");
  const auto pc = polish(c, {v2(0.6, 0.8)}, 0.02);
  ASSERT_EQ(pc.size(), 1u);
  EXPECT_NEAR(pc[0].norm(), 1, 1e-9);
  EXPECT_LT(eval_objective(pc[0], c), 1e-9);
}

TEST(Characterize, ContinuumDimensions) {
  const OracleSolution circle = run_oracle(load("i1_distance_2d"));
  ASSERT_TRUE(circle.continuum.has_value());
  EXPECT_EQ(circle.continuum->dimension, 1);
  const OracleSolution ring3d = run_oracle(load("i2_squared_c_3d"));
  ASSERT_TRUE(ring3d.continuum.has_value());
  EXPECT_EQ(ring3d.continuum->dimension, 1);
  const OracleSolution sphere = run_oracle(load("i1_distance_3d"));
  ASSERT_TRUE(sphere.continuum.has_value());
  EXPECT_EQ(sphere.continuum->dimension, 2);
  const OracleSolution seg = run_oracle(load("i2_distance_c"));
  ASSERT_TRUE(seg.continuum.has_value());
  EXPECT_EQ(seg.continuum->dimension, 1);
  for (const Vec& w : seg.continuum->samples) EXPECT_NEAR(w(1), 0, 1e-6);
  EXPECT_EQ(run_oracle(load("i2_squared_c")).cardinality(), Cardinality::finite(2));
}

TEST(OracleInvariants, MinimaAtMinValue) {
  for (const char* name : {"i2_squared_b", "i3_five_solutions", "i3_distance_open"}) {
    const OracleSolution o = run_oracle(load(name));
    EXPECT_GE(o.min_value, 0);
    for (const Vec& w : o.minima) EXPECT_LE(eval_objective(w, load(name)) - o.min_value, 1e-8 * std::max(1.0, o.min_value));
  }
  EXPECT_LE(run_oracle(load("i3_s123_3d")).min_value, 1e-8);
}

TEST(OracleInvariants, RefinementDoesNotRaiseMin) {
  for (const char* name : {"i2_squared_b", "i3_five_solutions", "i3_distance_open", "i3_equilateral_arc"}) {
    const Scenario s = load(name);
    const double coarse = run_oracle(s, default_grid(s, 101)).min_value;
    const double fine = run_oracle(s, default_grid(s, 201)).min_value;
    EXPECT_LE(fine, coarse + 1e-9) << name;
  }
}

TEST(OracleInvariants, Deterministic) {
  const Scenario s = load("i3_five_solutions");
  const OracleSolution a = run_oracle(s);
  const OracleSolution b = run_oracle(s);
  EXPECT_EQ(a.min_value, b.min_value);
  ASSERT_EQ(a.minima.size(), b.minima.size());
  for (std::size_t k = 0; k < a.minima.size(); ++k) EXPECT_EQ(a.minima[k], b.minima[k]);
}

TEST(Verify, PassOnResolvedFixture) {
  const Scenario s = load("i2_squared_c");
  const VerificationReport r = verify(s, solve(s), run_oracle(s));
  EXPECT_EQ(r.verdict, Verdict::Pass) << r.str();
}

TEST(Verify, CorruptedSolutionFails) {
  const Scenario s = load("i2_squared_a");
  std::ifstream in(fixture("corrupted_solution"));
  const SolutionSet bad = solution_from_json(Json::parse(in));
  const VerificationReport r = verify(s, bad, run_oracle(s));
  EXPECT_EQ(r.verdict, Verdict::Fail);
  EXPECT_NE(r.str().find("extraneous-piece"), std::string::npos) << r.str();
}

TEST(Verify, MissingMinimumFails) {
  const Scenario s = load("i2_squared_c");
  SolutionSet half = solve(s);
  half.pieces.resize(1);
  half.cardinality = half.implied_cardinality();
  const VerificationReport r = verify(s, half, run_oracle(s));
  EXPECT_EQ(r.verdict, Verdict::Fail);
  EXPECT_NE(r.str().find("unexplained-minimum"), std::string::npos) << r.str();
}

TEST(Verify, UnresolvedIsOracleOnly) {
  const Scenario s = load("i3_distance_open");
  const VerificationReport r = verify(s, solve(s), run_oracle(s));
  EXPECT_EQ(r.verdict, Verdict::OracleOnly);
  EXPECT_EQ(to_string(r.verdict), "ORACLE-ONLY");
}

}  // namespace
}  // namespace locus
