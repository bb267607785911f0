#include "normconc/geometry.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace normconc;

namespace {

Vector vec(std::initializer_list<double> xs) {
  Vector v(static_cast<Index>(xs.size()));
  Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

ConvexBody unit_square() { return ConvexBody::box(vec({0, 0}), vec({1, 1})); }

}  // namespace

TEST(HalfSpace, Membership) {
  EXPECT_TRUE(halfspace_contains(HalfSpace(vec({0}), vec({1})), vec({-1})));
  EXPECT_TRUE(halfspace_contains(HalfSpace(vec({0}), vec({0})), vec({1e9})));
  EXPECT_FALSE(halfspace_contains(HalfSpace(vec({0, 0}), vec({1, 0})), vec({0.5, 0})));
  EXPECT_THROW(halfspace_contains(HalfSpace(vec({0, 0}), vec({1, 0})), vec({0.5})), Error);
}

TEST(SupportFunction, ClosedForms) {
  EXPECT_DOUBLE_EQ(ConvexBody::ball(vec({0, 0}), 2).support(vec({1, 0})), 2.0);
  EXPECT_DOUBLE_EQ(unit_square().support(vec({1, -1})), 1.0);
  EXPECT_DOUBLE_EQ(ConvexBody::hull({vec({1, 0}), vec({0, 1})}).support(vec({1, 1})), 1.0);
}

TEST(SupportFunction, PolytopeMatchesBoxAndReportsUnbounded) {
  const auto square = ConvexBody::polytope({HalfSpace(vec({1, 0}), vec({1, 0})), HalfSpace(vec({0, 0}), vec({-1, 0})),
                                            HalfSpace(vec({0, 1}), vec({0, 1})), HalfSpace(vec({0, 0}), vec({0, -1}))});
  CounterRng rng(7);
  for (int i = 0; i < 50; ++i) {
    const Vector nu = oracle::random_normal(rng, 2);
    EXPECT_NEAR(square.support(nu), unit_square().support(nu), 1e-12);
  }
  const auto half = ConvexBody::halfspace(HalfSpace(vec({0, 0}), vec({1, 0})));
  EXPECT_EQ(half.support(vec({0, 1})), kInf);
  EXPECT_NEAR(half.support(vec({2, 0})), 0.0, 1e-12);
  EXPECT_FALSE(half.support_point(vec({1, 1})).has_value());
}

TEST(SupportFunction, EmptyPolytopeIsInfeasible) {
  const auto empty = ConvexBody::polytope({HalfSpace(vec({0}), vec({1})), HalfSpace(vec({1}), vec({-1}))});
  try {
    empty.support(vec({1}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::infeasible);
  }
}

TEST(Psi, HomogeneousAndNonnegative) {
  CounterRng rng(11);
  Matrix a = Matrix::Random(3, 3);
  const auto w = PsiFunctional::weighted_quadratic(a * a.transpose());
  const auto mq = PsiFunctional::max_of_quadratics({Matrix::Identity(3, 3), 4.0 * Matrix::Identity(3, 3)});
  for (int i = 0; i < 100; ++i) {
    const Vector nu = oracle::random_normal(rng, 3);
    const double alpha = 5.0 * rng.uniform();
    for (const auto* psi : {&w, &mq}) {
      EXPECT_GE((*psi)(nu), 0.0);
      EXPECT_NEAR((*psi)(alpha * nu), alpha * (*psi)(nu), 1e-12 * (1 + (*psi)(nu)));
    }
    EXPECT_NEAR(mq(nu), 2.0 * nu.norm(), 1e-12);
  }
  EXPECT_THROW(PsiFunctional::weighted_quadratic(-Matrix::Identity(2, 2)), Error);
}

TEST(HalfSpaceDistance, Conventions) {
  const auto e = PsiFunctional::euclidean();
  const HalfSpace h(vec({-1, 0}), vec({1, 0}));
  EXPECT_DOUBLE_EQ(distance_to_halfspace(e, vec({0, 0}), h), 1.0);
  EXPECT_DOUBLE_EQ(distance_to_halfspace(e, vec({-2, 0}), h), 0.0);
  const auto cuboid = PsiFunctional::diagonal(vec({1, 1}));  // L = (2, 2)
  EXPECT_DOUBLE_EQ(distance_to_halfspace(cuboid, vec({0, 0}), h), 1.0);
  const auto flat = PsiFunctional::diagonal(vec({0, 1}));
  EXPECT_EQ(distance_to_halfspace(flat, vec({0, 0}), h), kInf);
  EXPECT_EQ(distance_to_halfspace(flat, vec({0, 0}), HalfSpace(vec({0, 0}), vec({0, 0}))), 0.0);
}

TEST(NormalDistance, KnownValues) {
  const auto e = PsiFunctional::euclidean();
  EXPECT_NEAR(normal_distance(e, vec({0, 0}), ConvexBody::ball(vec({3, 0}), 2)).distance, 1.0, 1e-9);
  EXPECT_EQ(normal_distance(e, vec({3, 0.5}), ConvexBody::ball(vec({3, 0}), 2)).distance, 0.0);
  EXPECT_NEAR(normal_distance(e, vec({0, 0}), PointSet{vec({1, 0}), vec({0, 1})}).distance, std::sqrt(0.5), 1e-9);
}

TEST(NormalDistance, WitnessIsPsiNormalizedAndSupporting) {
  const auto psi = PsiFunctional::diagonal(vec({0.25, 4.0}));
  const auto body = ConvexBody::box(vec({1, 1}), vec({2, 3}));
  const Vector x = vec({-1, -2});
  const auto r = normal_distance(psi, x, body);
  EXPECT_NEAR(psi(r.normal), 1.0, 1e-12);
  EXPECT_NEAR(r.normal.dot(r.support_point), body.support(r.normal), 1e-9);
  EXPECT_NEAR(r.normal.dot(x - r.support_point), r.distance, 1e-9);
}

TEST(NormalDistance, DenseGridOracleInTwoDimensions) {
  const auto psi = PsiFunctional::weighted_quadratic((Matrix(2, 2) << 2.0, 0.5, 0.5, 1.0).finished());
  const std::vector<ConvexBody> bodies{ConvexBody::ball(vec({2, 1}), 0.5), ConvexBody::box(vec({1, -1}), vec({2, 3})),
                                       ConvexBody::hull({vec({1, 1}), vec({2, -1}), vec({3, 2}), vec({1.5, 0.2})})};
  const Vector x = vec({-0.5, 0.3});
  for (const auto& body : bodies) {
    const double grid = oracle::circle_max([&](const Vector& u) { return (u.dot(x) - body.support(u)) / psi(u); });
    const double d = normal_distance(psi, x, body).distance;
    EXPECT_GE(d, grid - 1e-12);
    EXPECT_NEAR(d, grid, 1e-6);
  }
}

TEST(NormalDistance, DegenerateSeparationIsInfinite) {
  const auto psi = PsiFunctional::diagonal(vec({0, 1}));
  const auto r = normal_distance(psi, vec({0, 0}), ConvexBody::ball(vec({3, 0}), 1));
  EXPECT_EQ(r.distance, kInf);
  EXPECT_TRUE(r.degenerate);
}

TEST(NormalDistance, EuclideanMatchesProjectionOracles) {
  CounterRng rng(2024);
  for (int trial = 0; trial < 24; ++trial) {
    const Index n = 2 + trial % 5;
    std::vector<Vector> pts;
    for (int i = 0; i < 10; ++i) pts.push_back(oracle::random_normal(rng, n));
    const Vector x = 3.0 * oracle::random_unit(rng, n);
    const double expected = oracle::hull_distance(x, pts);
    const auto r = normal_distance(PsiFunctional::euclidean(), x, ConvexBody::hull(pts));
    EXPECT_NEAR(r.distance, expected, 1e-6) << "trial " << trial;
  }
}

TEST(NormalDistance, PolytopeMatchesActiveSetOracle) {
  CounterRng rng(99);
  int tested = 0;
  while (tested < 12) {
    const Index n = 2 + tested % 4;
    Matrix a(6, n);
    Vector b(6);
    for (Index i = 0; i < 6; ++i) {
      a.row(i) = oracle::random_unit(rng, n).transpose();
      b(i) = 0.5 + rng.uniform();
    }
    std::vector<HalfSpace> hs;
    for (Index i = 0; i < 6; ++i) hs.emplace_back(Vector(b(i) * a.row(i).transpose()), Vector(a.row(i).transpose()));
    const auto poly = ConvexBody::polytope(hs);
    bool bounded = true;
    for (Index j = 0; j < n && bounded; ++j) {
      bounded = std::isfinite(poly.support(Vector::Unit(n, j))) && std::isfinite(poly.support(-Vector::Unit(n, j)));
    }
    if (!bounded) continue;
    const Vector x = 3.0 * oracle::random_unit(rng, n);
    EXPECT_NEAR(normal_distance(PsiFunctional::euclidean(), x, poly).distance, oracle::polytope_distance(x, a, b), 1e-6)
        << "polytope " << tested;
    ++tested;
  }
}

TEST(NormalDistance, UnboundedPolytope) {
  // Quadrant {x <= 0, y <= 0}: distance from (1, 2) is sqrt(5).
  const auto q = ConvexBody::polytope({HalfSpace(vec({0, 0}), vec({1, 0})), HalfSpace(vec({0, 0}), vec({0, 1}))});
  EXPECT_NEAR(normal_distance(PsiFunctional::euclidean(), vec({1, 2}), q).distance, std::sqrt(5.0), 1e-8);
  EXPECT_NEAR(normal_distance(PsiFunctional::euclidean(), vec({-1, 2}), q).distance, 2.0, 1e-8);
}

TEST(NormalDistance, WeightedQuadraticIsEuclideanAfterRescaling) {
  // Psi(nu) = |diag(d) nu|: distance equals the Euclidean one in coordinates y = x / d.
  const Vector d = vec({0.5, 2.0, 1.5});
  const auto psi = PsiFunctional::diagonal(d.cwiseProduct(d));
  CounterRng rng(5);
  std::vector<Vector> pts, scaled;
  for (int i = 0; i < 8; ++i) {
    pts.push_back(oracle::random_normal(rng, 3));
    scaled.push_back(pts.back().cwiseQuotient(d));
  }
  const Vector x = vec({3, -2, 1});
  EXPECT_NEAR(normal_distance(psi, x, ConvexBody::hull(pts)).distance, oracle::hull_distance(x.cwiseQuotient(d), scaled),
              1e-6);
}

TEST(NormalDistance, MonotoneUnderInclusion) {
  const auto e = PsiFunctional::euclidean();
  const Vector x = vec({4, 1, -1});
  const double small = normal_distance(e, x, ConvexBody::ball(vec({0, 0, 0}), 1)).distance;
  const double big = normal_distance(e, x, ConvexBody::ball(vec({0.5, 0, 0}), 2)).distance;
  EXPECT_LE(big, small + 1e-12);
  const double inner_box = normal_distance(e, x, ConvexBody::box(vec({-1, -1, -1}), vec({1, 1, 1}))).distance;
  const double outer_box = normal_distance(e, x, ConvexBody::box(vec({-1, -1, -2}), vec({2, 1, 1}))).distance;
  EXPECT_LE(outer_box, inner_box + 1e-12);
}

TEST(NormalDistance, HomogeneousOfDegreeOne) {
  CounterRng rng(31);
  const auto psi = PsiFunctional::diagonal(vec({1, 2, 0.5}));
  for (int i = 0; i < 10; ++i) {
    PointSet set;
    for (int k = 0; k < 6; ++k) set.push_back(oracle::random_normal(rng, 3));
    const Vector x = 3.0 * oracle::random_unit(rng, 3);
    const double alpha = 0.1 + 5.0 * rng.uniform();
    PointSet scaled;
    for (const auto& p : set) scaled.push_back(alpha * p);
    const double d1 = normal_distance(psi, x, set).distance;
    const double d2 = normal_distance(psi, Vector(alpha * x), scaled).distance;
    EXPECT_NEAR(d2, alpha * d1, 1e-6 * std::max(1.0, alpha * d1));
  }
}

TEST(NormalDistance, Sublevel) {
  // {|x|^2 <= 1}: a unit ball, so the Euclidean distance from (3, 0) is 2.
  SmoothSublevel s{[](const Vector& v) { return v.squaredNorm(); }, [](const Vector& v) { return Vector(2.0 * v); }, 1.0,
                   vec({0, 0}), "norm2"};
  const auto body = ConvexBody::sublevel(s);
  EXPECT_NEAR(normal_distance(PsiFunctional::euclidean(), vec({3, 0}), body).distance, 2.0, 1e-7);
  EXPECT_NEAR(body.support(vec({0, 2})), 2.0, 1e-7);
  EXPECT_NEAR((project(vec({0, 3}), body) - vec({0, 1})).norm(), 0.0, 1e-6);
}

TEST(NormalCone, UnitSquare) {
  const auto sq = unit_square();
  EXPECT_TRUE(normal_cone_at(sq, vec({0.5, 0.5})).generators.empty());
  const auto side = normal_cone_at(sq, vec({1, 0.5})).generators;
  ASSERT_EQ(side.size(), 1u);
  EXPECT_EQ(side[0], vec({1, 0}));
  EXPECT_EQ(normal_cone_at(sq, vec({1, 1})).generators.size(), 2u);
  try {
    normal_cone_at(sq, vec({2, 0}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::not_in_set);
  }
}

TEST(Hausdorff, PointSetsAndBodies) {
  EXPECT_DOUBLE_EQ(hausdorff_distance(vec({0, 0}), PointSet{vec({2, 0})}), 2.0);
  EXPECT_DOUBLE_EQ(hausdorff_distance(vec({0, 0}), ConvexBody::ball(vec({0, 0.5}), 1)), 0.0);
  EXPECT_THROW(hausdorff_distance(vec({0}), PointSet{}), Error);
}

TEST(Hausdorff, NonconvexSetIsFartherThanItsHullNormally) {
  // Two points at distance 2 whose connecting chord passes at distance 1 from the origin.
  const PointSet a{vec({-std::sqrt(3.0), 1}), vec({std::sqrt(3.0), 1})};
  EXPECT_NEAR(hausdorff_distance(vec({0, 0}), a), 2.0, 1e-12);
  EXPECT_NEAR(normal_distance(PsiFunctional::euclidean(), vec({0, 0}), a).distance, 1.0, 1e-9);
}

TEST(SetToSet, Instances) {
  const auto e = PsiFunctional::euclidean();
  const auto b = ConvexBody::ball(vec({0, 0}), 1);
  EXPECT_NEAR(normal_distance_set_to_set(e, b, b).inner.distance, 0.0, 1e-12);
  EXPECT_NEAR(normal_distance_set_to_set(e, ConvexBody::ball(vec({3, 0}), 1), b).inner.distance, 1.0, 1e-6);
}

TEST(SetToSet, NotSymmetric) {
  const auto e = PsiFunctional::euclidean();
  const PointSet a{vec({-std::sqrt(3.0), 1}), vec({std::sqrt(3.0), 1})};
  const PointSet b{vec({0, 1})};
  const double ab = normal_distance_set_to_set(e, a, ConvexBody::hull(b)).inner.distance;
  const double ba = normal_distance_set_to_set(e, b, ConvexBody::hull(a)).inner.distance;
  EXPECT_NEAR(ab, std::sqrt(3.0), 1e-9);
  EXPECT_NEAR(ba, 0.0, 1e-12);
}

TEST(Hamming, Weighted) {
  EXPECT_DOUBLE_EQ(weighted_hamming(vec({1, 1}), vec({0, 0}), vec({1, 1})), 2.0);
  EXPECT_DOUBLE_EQ(weighted_hamming(vec({1, 1}), vec({0, 3}), vec({0, 3})), 0.0);
  EXPECT_DOUBLE_EQ(weighted_hamming(vec({0.6, 0.8}), vec({0, 0}), vec({1, 0})), 0.6);
  EXPECT_THROW(weighted_hamming(vec({-1, 1}), vec({0, 0}), vec({1, 0})), Error);
}

TEST(Talagrand, KnownValues) {
  EXPECT_NEAR(talagrand_distance(vec({1, 1}), PointSet{vec({0, 0})}), std::sqrt(2.0), 1e-12);
  EXPECT_EQ(talagrand_distance(vec({1, 1}), PointSet{vec({1, 1}), vec({0, 0})}), 0.0);
  EXPECT_NEAR(talagrand_distance(vec({1, 1}), PointSet{vec({0, 1}), vec({1, 0})}), std::sqrt(0.5), 1e-12);
}

TEST(Talagrand, MatchesWeightGridOracle) {
  CounterRng rng(77);
  for (int trial = 0; trial < 20; ++trial) {
    const Index n = 2 + trial % 2;
    auto draw = [&] {
      Vector v(n);
      for (Index i = 0; i < n; ++i) v(i) = static_cast<double>(rng.next_u64() % 3);
      return v;
    };
    const Vector x = draw();
    PointSet set;
    for (int k = 0; k < 1 + trial % 5; ++k) set.push_back(draw());
    const double exact = talagrand_distance(x, set);
    const double grid = oracle::talagrand_grid(x, set, n == 2 ? 1e-4 : 2e-3);
    EXPECT_GE(exact, grid - 1e-12);
    EXPECT_NEAR(exact, grid, n == 2 ? 1e-6 : 1e-4);
  }
}

TEST(Talagrand, HomogeneousOfDegreeZero) {
  CounterRng rng(3);
  for (int i = 0; i < 50; ++i) {
    const Vector x = oracle::random_normal(rng, 4);
    PointSet set;
    for (int k = 0; k < 5; ++k) {
      Vector a = oracle::random_normal(rng, 4);
      a(k % 4) = x(k % 4);
      set.push_back(a);
    }
    const double alpha = 0.5 + 10.0 * rng.uniform();
    PointSet scaled;
    for (const auto& a : set) scaled.push_back(alpha * a);
    EXPECT_EQ(talagrand_distance(Vector(alpha * x), scaled), talagrand_distance(x, set));
  }
}

TEST(NormalDistance, QuadraticBallClosedFormMatchesSearch) {
  CounterRng rng(313);
  for (int t = 0; t < 20; ++t) {
    const Index n = 2 + static_cast<Index>(t % 3);
    Matrix a = Matrix::Random(n, n);
    const Matrix w = a * a.transpose() + 0.2 * Matrix::Identity(n, n);
    const auto quad = PsiFunctional::weighted_quadratic(w);
    const auto same = PsiFunctional::custom([w](const Covector& nu) { return std::sqrt(nu.dot(w * nu)); });
    const auto ball = ConvexBody::ball(oracle::random_normal(rng, n), 0.5 + rng.uniform());
    const Vector x = oracle::random_normal(rng, n) * 3.0;
    const auto fast = normal_distance(quad, x, ball);
    const auto slow = normal_distance(same, x, ball);
    EXPECT_NEAR(fast.distance, slow.distance, 1e-7 * std::max(1.0, slow.distance)) << t;
    if (fast.distance > 0.0) {
      EXPECT_NEAR(quad(fast.normal), 1.0, 1e-12);
      EXPECT_NEAR(fast.normal.dot(x - fast.support_point), fast.distance, 1e-9 * std::max(1.0, fast.distance));
    }
  }
}

TEST(NormalDistance, QuadraticPolyhedraMatchSearch) {
  CounterRng rng(414);
  for (int t = 0; t < 24; ++t) {
    const Index n = 2 + static_cast<Index>(t % 2);
    Matrix a(n, n);
    for (Index i = 0; i < n; ++i) a.col(i) = oracle::random_normal(rng, n);
    const Matrix w = a * a.transpose() + 0.2 * Matrix::Identity(n, n);
    const auto quad = PsiFunctional::weighted_quadratic(w);
    const auto same = PsiFunctional::custom([w](const Covector& nu) { return std::sqrt(nu.dot(w * nu)); });
    std::vector<Vector> pts;
    for (int i = 0; i < 6; ++i) pts.push_back(oracle::random_normal(rng, n));
    const Vector lo = oracle::random_normal(rng, n);
    std::vector<HalfSpace> hs;
    for (int i = 0; i < 5; ++i) {
      const Vector nu = oracle::random_unit(rng, n);
      hs.emplace_back(Vector((0.5 + rng.uniform()) * nu), nu);
    }
    const Vector x = oracle::random_normal(rng, n) * 3.0;
    for (const auto& body : {ConvexBody::hull(pts), ConvexBody::box(lo, Vector(lo + Vector::Ones(n))),
                             ConvexBody::polytope(hs)}) {
      const auto fast = normal_distance(quad, x, body);
      const auto slow = normal_distance(same, x, body);
      EXPECT_NEAR(fast.distance, slow.distance, 1e-6 * std::max(1.0, slow.distance)) << t;
      EXPECT_GE(fast.distance, slow.distance - 1e-9);
      if (fast.distance > 0.0) {
        EXPECT_NEAR(quad(fast.normal), 1.0, 1e-12);
        EXPECT_NEAR(fast.normal.dot(x - fast.support_point), fast.distance, 1e-9 * std::max(1.0, fast.distance));
        EXPECT_TRUE(body.contains(fast.support_point));
      }
    }
  }
}

TEST(Projection, UnboundedPolytopeInSixDimensions) {
  // Six facets cannot bound R^6; the projection must still be exact.
  CounterRng rng(15);
  for (int t = 0; t < 20; ++t) {
    Matrix a(6, 6);
    Vector b(6);
    std::vector<HalfSpace> hs;
    for (Index i = 0; i < 6; ++i) {
      a.row(i) = oracle::random_unit(rng, 6).transpose();
      b(i) = 0.5 + rng.uniform();
      hs.emplace_back(Vector(b(i) * a.row(i).transpose()), Vector(a.row(i).transpose()));
    }
    const auto poly = ConvexBody::polytope(hs);
    const Vector x = 3.0 * oracle::random_unit(rng, 6);
    const double want = oracle::polytope_distance(x, a, b);
    EXPECT_NEAR(hausdorff_distance(x, poly), want, 1e-9);
    EXPECT_NEAR(normal_distance(PsiFunctional::euclidean(), x, poly).distance, want, 1e-9);
  }
}
