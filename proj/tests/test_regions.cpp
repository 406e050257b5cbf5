#include "locus/regions.hpp"

#include "locus/strata.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

namespace locus {
namespace {

using testing_support::load;
using testing_support::make;
using testing_support::random_point;
using testing_support::random_scenario;
using testing_support::v2;
using testing_support::v3;

const double kRoot2 = std::sqrt(2.0);
const double kRoot3 = std::sqrt(3.0);

TEST(Classify, Examples) {
  const Scenario s = make(2, ErrorModel::Distance, {{v2(0, 0), 0.5}, {v2(3, 0), 0.5}, {v2(0, 3), 0.5}});
  EXPECT_EQ(classify_point(v2(10, 10), s), 0u);
  EXPECT_EQ(classify_point(v2(0, 0), s), 1u);
  const Scenario t = make(2, ErrorModel::Distance, {{v2(0, 0), kRoot2}, {v2(2, 0), kRoot2}, {v2(5, 5), 1}});
  EXPECT_EQ(classify_point(v2(1, 1), t), 3u);
}

TEST(Classify, AgreesWithDistanceTests) {
  std::mt19937_64 rng(31);
  const Scenario s = random_scenario(rng, 3, 2, ErrorModel::Distance);
  for (int t = 0; t < 10000; ++t) {
    const Vec w = random_point(rng, 2, -6, 6);
    unsigned expected = 0;
    for (int i = 0; i < 3; ++i) {
      if ((w - s.z(i)).norm() <= s.d(i)) expected |= 1u << i;
    }
    const unsigned got = classify_point(w, s);
    bool near_boundary = false;
    for (int i = 0; i < 3; ++i) near_boundary = near_boundary || std::abs((w - s.z(i)).norm() - s.d(i)) < 1e-8;
    if (!near_boundary) EXPECT_EQ(got, expected);
  }
}

TEST(Census, TinyDisjointDisks) {
  const Scenario s = make(2, ErrorModel::Distance, {{v2(0, 0), 0.1}, {v2(3, 0), 0.1}, {v2(0, 3), 0.1}});
  const RegionCensus c = region_census(s);
  EXPECT_TRUE(c.r3_empty);
  for (int i = 0; i < 3; ++i) EXPECT_TRUE(c.r1_nonempty[i]);
  EXPECT_EQ(c.k_nonempty, TriState::Yes);
  EXPECT_TRUE(c.t_points.empty());
}

TEST(Census, NestedBalls) {
  const Scenario s = make(2, ErrorModel::Squared, {{v2(0, 0), 5}, {v2(1, 0), 1}, {v2(0, 1), 1}});
  const RegionCensus c = region_census(s);
  EXPECT_TRUE(c.contains[0][1]);
  EXPECT_TRUE(c.contains[0][2]);
  EXPECT_FALSE(c.contains[1][0]);
  EXPECT_TRUE(c.r1_nonempty[0]);
  EXPECT_FALSE(c.r1_nonempty[1]);
  EXPECT_FALSE(c.r1_nonempty[2]);
  EXPECT_FALSE(c.r3_empty);
  EXPECT_EQ(c.k_nonempty, TriState::No);
}

TEST(Census, TPointsOnOppositeEdge) {
  // S_1 with radius 2.5 crosses the edge Z_2Z_3 once, outside D_2 and D_3
  const Scenario s = make(2, ErrorModel::Distance, {{v2(0, 0), 2.5}, {v2(2, 0), kRoot2}, {v2(1, 5), 0.5}});
  const RegionCensus c = region_census(s);
  ASSERT_EQ(c.t_points.size(), 1u);
  // (2 - t, 5t) on |w| = 2.5: 26 t^2 - 4 t - 2.25 = 0
  const double t = (4 + std::sqrt(16 + 4 * 26 * 2.25)) / 52;
  EXPECT_LT((c.t_points[0] - v2(2 - t, 5 * t)).norm(), 1e-12);
}

TEST(Census, CollinearRejected) {
  EXPECT_THROW((void)region_census(make(2, ErrorModel::Distance, {{v2(0, 0), 1}, {v2(1, 0), 1}, {v2(2, 0), 1}})),
               CollinearError);
}

TEST(Census, R1AgreesWithCircleSampling) {
  std::mt19937_64 rng(32);
  for (int t = 0; t < 150; ++t) {
    const Scenario s = random_scenario(rng, 3, 2, ErrorModel::Distance);
    const RegionCensus c = region_census(s);
    for (int i = 0; i < 3; ++i) {
      if (s.d(i) == 0) continue;
      int free = 0;
      for (int k = 0; k < 10000; ++k) {
        const double a = 2 * std::numbers::pi * k / 10000;
        const Vec w = s.z(i) + s.d(i) * v2(std::cos(a), std::sin(a));
        if ((classify_point(w, s) & ~(1u << i)) == 0) ++free;
      }
      // sampling can only miss a sliver of R_1, so only one direction is strict
      if (free > 0) EXPECT_TRUE(c.r1_nonempty[i]) << "scenario " << t << " sensor " << i;
    }
  }
}

TEST(Census, R3WitnessIsInsideAllBalls) {
  std::mt19937_64 rng(33);
  for (int t = 0; t < 300; ++t) {
    const Scenario s = random_scenario(rng, 3, t % 2 ? 3 : 2, ErrorModel::Squared);
    const RegionCensus c = region_census(s);
    if (!c.r3_empty) {
      ASSERT_TRUE(c.r3_witness.has_value());
      EXPECT_EQ(classify_point(*c.r3_witness, s), 7u);
    } else {
      for (int k = 0; k < 3000; ++k) ASSERT_NE(classify_point(random_point(rng, s.dim, -7, 7), s), 7u);
    }
  }
}

TEST(Census, PlanarLemmaNoTripleIntersection) {
  std::mt19937_64 rng(34);
  int seen = 0;
  for (int t = 0; t < 400; ++t) {
    const Scenario s = random_scenario(rng, 3, 2, ErrorModel::Squared);
    const RegionCensus c = region_census(s);
    if (!(c.r1_nonempty[0] && c.r1_nonempty[1] && c.r1_nonempty[2])) continue;
    ++seen;
    EXPECT_TRUE(three_sphere_intersect(s.ball(0), s.ball(1), s.ball(2)).empty());
  }
  EXPECT_GT(seen, 20);
}

TEST(Census, TNonemptyImpliesKNonempty) {
  std::mt19937_64 rng(35);
  int with_t = 0;
  for (int t = 0; t < 400; ++t) {
    const Scenario s = random_scenario(rng, 3, 2, ErrorModel::Distance);
    const RegionCensus c = region_census(s);
    if (c.t_points.empty()) continue;
    ++with_t;
    EXPECT_NE(c.k_nonempty, TriState::No);
  }
  EXPECT_GT(with_t, 10);
}

TEST(Census, KAgreesWithTriangleSampling) {
  std::mt19937_64 rng(36);
  std::uniform_real_distribution<double> u(0, 1);
  for (int t = 0; t < 150; ++t) {
    const Scenario s = random_scenario(rng, 3, 2, ErrorModel::Distance);
    const TriState k = region_census(s).k_nonempty;
    bool hit = false;
    for (int n = 0; n < 20000 && !hit; ++n) {
      double a = u(rng), b = u(rng);
      if (a + b > 1) {
        a = 1 - a;
        b = 1 - b;
      }
      const Vec w = s.z(0) + a * (s.z(1) - s.z(0)) + b * (s.z(2) - s.z(0));
      hit = classify_point(w, s) == 0;
    }
    if (hit) EXPECT_EQ(k, TriState::Yes);
  }
}

TEST(Special, SquaredTriangle) {
  const Scenario s = make(2, ErrorModel::Squared, {{v2(0, 0), 0.5}, {v2(4, 0), 0.5}, {v2(0, 4), 0.5}});
  const SpecialPoints sp = special_points(s);
  EXPECT_LT((*sp.y0 - v2(4.0 / 3, 4.0 / 3)).norm(), 1e-12);
  EXPECT_LT((*sp.y[0] - v2(4, 4)).norm(), 1e-12);
  EXPECT_LT((*sp.y[1] - v2(-4, 4)).norm(), 1e-12);
}

TEST(Special, SquaredPairN1) {
  const Scenario s = make(2, ErrorModel::Squared, {{v2(0, 0), 2.5}, {v2(4, 0), 1}});
  const SpecialPoints sp = special_points(s);
  ASSERT_FALSE(sp.n[0].empty());
  EXPECT_LT((sp.n[0][0] - v2(2.5, 0)).norm(), 1e-12);
  EXPECT_LT((*sp.y0 - v2(2, 0)).norm(), 1e-12);
}

TEST(Special, DistancePairFarSideN) {
  const Scenario s = make(2, ErrorModel::Distance, {{v2(0, 0), 3}, {v2(1, 0), 1}});
  const SpecialPoints sp = special_points(s);
  ASSERT_TRUE(sp.n_minus[1].has_value());
  EXPECT_LT((*sp.n_minus[1] - v2(2, 0)).norm(), 1e-12);
}

TEST(Special, EquilateralDistance) {
  const Scenario s = load("i3_equilateral_arc");
  const SpecialPoints sp = special_points(s);
  EXPECT_LT((*sp.y0 - v2(1, 1 / kRoot3)).norm(), 1e-9);
  for (int i = 0; i < 3; ++i) ASSERT_TRUE(sp.y_arc[i].has_value());
  const ArcD& arc = *sp.y_arc[0];
  for (int k = 0; k <= 20; ++k) {
    const Vec w = arc.point_at(k / 20.0);
    EXPECT_NEAR((w - s.z(0)).norm(), (w - s.z(1)).norm() + (w - s.z(2)).norm(), 1e-9);
  }
}

TEST(Special, PointsLieOnTheirSpheres) {
  std::mt19937_64 rng(37);
  for (int t = 0; t < 200; ++t) {
    const ErrorModel model = t % 2 ? ErrorModel::Squared : ErrorModel::Distance;
    const Scenario s = random_scenario(rng, 3, t % 4 < 2 ? 2 : 3, model);
    const SpecialPoints sp = special_points(s);
    for (int i = 0; i < 3; ++i) {
      for (const Vec& w : sp.n[i]) EXPECT_NEAR((w - s.z(i)).norm(), s.d(i), 1e-9 * std::max(1.0, s.d(i)));
      for (int j = 0; j < 3; ++j) {
        if (sp.n_ij[i][j]) EXPECT_NEAR((*sp.n_ij[i][j] - s.z(i)).norm(), s.d(i), 1e-9 * std::max(1.0, s.d(i)));
      }
    }
    for (int i = 0; i < 3; ++i) {
      const int j = (i + 1) % 3;
      const auto& pm = sp.s_pm[pair_slot(i, j)];
      if (!pm) continue;
      for (const Vec& w : {pm->first, pm->second}) {
        EXPECT_NEAR((w - s.z(i)).norm(), s.d(i), 1e-9 * std::max(1.0, s.d(i)));
        EXPECT_NEAR((w - s.z(j)).norm(), s.d(j), 1e-9 * std::max(1.0, s.d(j)));
      }
      EXPECT_LE((pm->first - *sp.y0).norm(), (pm->second - *sp.y0).norm() + 1e-12);
    }
  }
}

TEST(Special, DistanceNMinimizesSumOfDistances) {
  std::mt19937_64 rng(38);
  for (int t = 0; t < 100; ++t) {
    const Scenario s = random_scenario(rng, 3, 2, ErrorModel::Distance);
    for (int i = 0; i < 3; ++i) {
      if (s.d(i) == 0) continue;
      const int j = (i + 1) % 3, k = (i + 2) % 3;
      const auto f = [&](const Vec& w) { return (w - s.z(j)).norm() + (w - s.z(k)).norm(); };
      const auto ns = distance_n_points(s, i);
      ASSERT_FALSE(ns.empty());
      const double best = f(ns[0]);
      for (const Vec& w : ns) EXPECT_NEAR(f(w), best, 1e-9);
      for (int n = 0; n < 10000; ++n) {
        const double a = 2 * std::numbers::pi * n / 10000;
        ASSERT_GE(f(s.z(i) + s.d(i) * v2(std::cos(a), std::sin(a))), best - 1e-8);
      }
    }
  }
}

TEST(Plane, ThreeDimensionalReductionPreservesGeometry) {
  const Scenario s = make(3, ErrorModel::Squared, {{v3(1, 0, 0), 1}, {v3(0, 2, 0), 1.5}, {v3(0, 0, 3), 2}});
  const Frame f = sensor_plane(s);
  const Scenario p = planar_scenario(s, f);
  ASSERT_EQ(p.dim, 2);
  for (int i = 0; i < 3; ++i) {
    EXPECT_EQ(p.d(i), s.d(i));
    EXPECT_LT((f.global(p.z(i)) - s.z(i)).norm(), 1e-12);
  }
  const Piece lifted = lift_piece(CircleD{p.z(0), 1, Vec()}, f);
  for (const Vec& w : sample_piece(lifted, 12)) {
    EXPECT_NEAR((w - s.z(0)).norm(), 1, 1e-12);
    EXPECT_NEAR(f.normal().dot(w - s.z(0)), 0, 1e-12);
  }
}

TEST(Strata, SquaredCandidatesContainTheMinimum) {
  std::mt19937_64 rng(39);
  for (int t = 0; t < 100; ++t) {
    const Scenario s = random_scenario(rng, 3, 2, ErrorModel::Squared);
    const StratumCandidates e = squared_candidates(s);
    double m = 1e300;
    for (const Vec& w : e.points) m = std::min(m, eval_objective(w, s));
    for (int n = 0; n < 20000; ++n) ASSERT_GE(eval_objective(random_point(rng, 2, -8, 8), s), m - 1e-9);
  }
}

TEST(Strata, EquilateralArcIsFlat) {
  const Scenario s = load("i3_equilateral_arc");
  const StratumCandidates e = distance_candidates(s);
  ASSERT_FALSE(e.arcs.empty());
  for (const ArcD& a : e.arcs) {
    const auto vals = testing_support::values_along(a, s, 200);
    EXPECT_LE(testing_support::stddev(vals), 1e-9);
  }
}

TEST(ArcRegion, ClipsToRegion) {
  const Scenario s = load("i3_equilateral_arc");
  const SpecialPoints sp = special_points(s);
  const auto pieces = arc_within_region(*sp.y_arc[0], s, 1u);
  ASSERT_FALSE(pieces.empty());
  for (const Piece& piece : pieces) {
    for (const Vec& w : sample_piece(piece, 50)) EXPECT_TRUE(in_region(w, s, 1u));
  }
}

}  // namespace
}  // namespace locus
