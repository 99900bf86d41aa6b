#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "hadamard/error.hpp"
#include "hadamard/geometry.hpp"
#include "hadamard/sampling.hpp"
#include "test_support.hpp"

using namespace hadamard;
using namespace hadamard::testing;

TEST(Distance, EuclideanPythagorean) {
  EXPECT_DOUBLE_EQ(distance(euclidean(2), e2(0, 0), e2(3, 4)), 5.0);
}

TEST(Distance, HyperbolicUnitStep) {
  const auto s = hyperbolic(2);
  const auto o = Point::hyperboloid({1, 0, 0});
  const auto x = Point::hyperboloid({std::cosh(1.0), std::sinh(1.0), 0});
  EXPECT_NEAR(distance(s, o, x), 1.0, 1e-14);
}

TEST(Distance, HyperbolicMatchesArcoshFormula) {
  const auto s = hyperbolic(3);
  RandomStream r(5);
  const auto region = default_region(s, 4.0);
  for (int i = 0; i < 1000; ++i) {
    const auto a = random_point(s, region, r);
    const auto b = random_point(s, region, r);
    const double m = -hyperboloid::minkowski(a.coords(), b.coords());
    const double expected = std::acosh(std::max(1.0, m));
    ASSERT_NEAR(distance(s, a, b), expected, 1e-7 * (1 + expected));
  }
}

TEST(Distance, SelfDistanceIsZero) {
  for (const auto& s : {euclidean(3), hyperbolic(2), star(3, 2.0), product_e2_h2()}) {
    RandomStream r(9);
    const auto p = random_point(s, default_region(s, 3.0), r);
    EXPECT_EQ(distance(s, p, p), 0.0);
  }
}

TEST(Distance, RejectsMismatchedPoints) {
  EXPECT_THROW(distance(euclidean(2), e2(0, 0), Point::euclidean({1, 2, 3})), DomainError);
  EXPECT_THROW(distance(euclidean(2), e2(0, 0), Point::hyperboloid({1, 0, 0})), DomainError);
  EXPECT_THROW(distance(euclidean(2), e2(0, 0), e2(NAN, 0)), DomainError);
}

TEST(GeodesicPoint, EuclideanQuarter) {
  const auto z = geodesic_point(euclidean(2), e2(0, 0), e2(4, 0), 0.25);
  EXPECT_NEAR(z.coords()[0], 3.0, 1e-15);
  EXPECT_NEAR(z.coords()[1], 0.0, 1e-15);
}

TEST(GeodesicPoint, Endpoints) {
  for (const auto& s : {euclidean(2), hyperbolic(2), star(3, 2.0), product_e2_h2()}) {
    RandomStream r(2);
    const auto region = default_region(s, 3.0);
    const auto x = random_point(s, region, r);
    const auto y = random_point(s, region, r);
    EXPECT_EQ(geodesic_point(s, x, y, 1.0), x);
    EXPECT_EQ(geodesic_point(s, x, y, 0.0), y);
  }
}

TEST(GeodesicPoint, StarMidpointIsCanonicalHub) {
  const auto s = star(3, 2.0);
  const auto x = Point::tree(0, 2.0);
  const auto y = Point::tree(1, 2.0);
  const auto z = geodesic_point(s, x, y, 0.5);
  EXPECT_EQ(z, Point::tree(0, 0.0));
  EXPECT_EQ(s.tree().vertex_of(z.tree_location()), 0);
}

TEST(GeodesicPoint, RejectsWeightOutsideUnitInterval) {
  const auto s = euclidean(2);
  EXPECT_THROW(geodesic_point(s, e2(0, 0), e2(1, 0), -0.1), DomainError);
  EXPECT_THROW(geodesic_point(s, e2(0, 0), e2(1, 0), 1.5), DomainError);
  EXPECT_THROW(geodesic_point(s, e2(0, 0), e2(1, 0), NAN), DomainError);
}

TEST(GeodesicPoint, DistanceContractInEverySpace) {
  const std::vector<Space> spaces = {euclidean(4), hyperbolic(2), hyperbolic(5), random_tree_space(12, 4),
                                     product_e2_h2()};
  for (const auto& s : spaces) {
    RandomStream r(17);
    const auto region = default_region(s, 5.0);
    for (int i = 0; i < 2000; ++i) {
      const auto x = random_point(s, region, r);
      const auto y = random_point(s, region, r);
      const double l = r.uniform();
      const auto z = geodesic_point(s, x, y, l);
      ASSERT_FALSE(validate_point(s, z).has_value());
      const double d = distance(s, x, y);
      ASSERT_NEAR(distance(s, z, x), (1 - l) * d, 1e-9 * (1 + d));
      ASSERT_NEAR(distance(s, z, y), l * d, 1e-9 * (1 + d));
    }
  }
}

TEST(GeodesicPoint, HyperbolicStaysOnHyperboloidOverLongChains) {
  const auto s = hyperbolic(3);
  RandomStream r(8);
  const auto region = default_region(s, 6.0);
  Point x = random_point(s, region, r);
  for (int i = 0; i < 10000; ++i) x = geodesic_point(s, x, random_point(s, region, r), 0.9);
  const double m = hyperboloid::minkowski(x.coords(), x.coords());
  EXPECT_NEAR(m, -1.0, 1e-9 * x.coords()[0] * x.coords()[0]);
}

TEST(Quasilin, OrthogonalExample) {
  EXPECT_NEAR(quasilin(euclidean(2), e2(0, 0), e2(1, 0), e2(0, 0), e2(0, 1)), 0.0, 1e-15);
}

TEST(Quasilin, SelfPairingIsSquaredDistance) {
  for (const auto& s : {euclidean(3), hyperbolic(2), star(4, 1.0)}) {
    RandomStream r(4);
    const auto region = default_region(s, 3.0);
    const auto a = random_point(s, region, r);
    const auto b = random_point(s, region, r);
    const double d = distance(s, a, b);
    EXPECT_NEAR(quasilin(s, a, b, a, b), d * d, 1e-12 * (1 + d * d));
    EXPECT_NEAR(quasilin(s, OrientedPair{a, b}, OrientedPair{a, b}), d * d, 1e-12 * (1 + d * d));
  }
}

TEST(Quasilin, EuclideanEqualsDotProduct) {
  for (int dim : {1, 2, 5}) {
    const auto s = euclidean(dim);
    RandomStream r(dim);
    const auto region = default_region(s, 5.0);
    for (int i = 0; i < 2000; ++i) {
      const auto a = random_point(s, region, r);
      const auto b = random_point(s, region, r);
      const auto c = random_point(s, region, r);
      const auto d = random_point(s, region, r);
      const double oracle = dot(sub(b.coords(), a.coords()), sub(d.coords(), c.coords()));
      ASSERT_NEAR(quasilin(s, a, b, c, d), oracle, 1e-9 * scale_of(s, {a, b, c, d}));
    }
  }
}

TEST(Quasilin, IdentitiesInEverySpace) {
  const std::vector<Space> spaces = {euclidean(3), hyperbolic(2), random_tree_space(10, 1), product_e2_h2()};
  for (const auto& s : spaces) {
    RandomStream r(23);
    const auto region = default_region(s, 5.0);
    for (int i = 0; i < 1000; ++i) {
      const auto a = random_point(s, region, r);
      const auto b = random_point(s, region, r);
      const auto c = random_point(s, region, r);
      const auto d = random_point(s, region, r);
      const auto x = random_point(s, region, r);
      const double sc = scale_of(s, {a, b, c, d, x});
      ASSERT_NEAR(quasilin(s, a, b, c, d), quasilin(s, c, d, a, b), 1e-12 * sc);
      ASSERT_NEAR(quasilin(s, a, b, c, d), -quasilin(s, b, a, c, d), 1e-9 * sc);
      ASSERT_NEAR(quasilin(s, a, x, c, d) + quasilin(s, x, b, c, d), quasilin(s, a, b, c, d), 1e-9 * sc);
    }
  }
}

TEST(Norm, Examples) {
  EXPECT_EQ(norm(euclidean(2), e2(1, 2), Basepoint{e2(1, 2)}), 0.0);
  EXPECT_DOUBLE_EQ(norm(euclidean(2), e2(3, 4), Basepoint{e2(0, 0)}), 5.0);
  const auto o = Point::hyperboloid({1, 0, 0});
  const auto x = Point::hyperboloid({std::cosh(2.0), std::sinh(2.0), 0});
  EXPECT_NEAR(norm(hyperbolic(2), x, Basepoint{o}), 2.0, 1e-14);
}

TEST(CauchySchwarzGap, Examples) {
  const auto s = euclidean(2);
  EXPECT_EQ(cauchy_schwarz_gap(s, e2(1, 1), e2(1, 1), e2(0, 3), e2(2, 0)), 0.0);
  EXPECT_NEAR(cauchy_schwarz_gap(s, e2(0, 1), e2(2, 5), e2(0, 1), e2(2, 5)), 0.0, 1e-12);
  EXPECT_NEAR(cauchy_schwarz_gap(s, e2(0, 0), e2(1, 0), e2(0, 0), e2(1, 1)), std::numbers::sqrt2 - 1, 1e-15);
}

TEST(Hyperboloid, BoostMovesOriginToCenter) {
  const auto c = hyperboloid::lift(std::vector<double>{0.3, -1.2});
  const std::vector<double> o = {1, 0, 0};
  const auto moved = hyperboloid::boost(c, o);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(moved[i], c[i], 1e-12);
  const auto back = hyperboloid::unboost(c, moved);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(back[i], o[i], 1e-12);
}

TEST(Hyperboloid, ExpMapTravelsRequestedDistance) {
  const auto s = hyperbolic(2);
  const auto c = hyperboloid::lift(std::vector<double>{1.0, 0.5});
  const std::vector<double> dir = {0.6, 0.8};
  for (double t : {0.0, 0.1, 1.0, 7.5}) {
    const auto p = Point::hyperboloid(hyperboloid::exp_from(c, dir, t));
    EXPECT_NEAR(distance(s, Point::hyperboloid(c), p), t, 1e-9 * (1 + t));
  }
}
