#include <gtest/gtest.h>

#include <cmath>

#include "hadamard/convex.hpp"
#include "hadamard/error.hpp"
#include "hadamard/geometry.hpp"
#include "hadamard/sampling.hpp"
#include "test_support.hpp"

using namespace hadamard;
using namespace hadamard::testing;

namespace {

ConvexSetDescriptor ball(Point c, double r) { return {Ball{std::move(c), r}}; }
ConvexSetDescriptor segment(Point a, Point b) { return {Segment{std::move(a), std::move(b)}}; }

// Random Ball/Segment instance plus a query point.
struct Instance {
  ConvexSetDescriptor set;
  Point x;
};

Instance random_instance(const Space& s, RandomStream& r, bool use_ball) {
  const auto region = default_region(s, 4.0);
  Instance in;
  if (use_ball)
    in.set = ball(random_point(s, region, r), r.uniform(0.2, 3.0));
  else
    in.set = segment(random_point(s, region, r), random_point(s, region, r));
  in.x = random_point(s, region, r);
  return in;
}

std::vector<Space> all_spaces() {
  return {euclidean(2), euclidean(5), hyperbolic(2), random_tree_space(10, 5), product_e2_h2()};
}

}  // namespace

TEST(Contains, Examples) {
  const auto s = euclidean(2);
  EXPECT_TRUE(contains(s, ball(e2(0, 0), 1), e2(0.5, 0), 0.0));
  EXPECT_TRUE(contains(s, segment(e2(0, 0), e2(1, 0)), e2(0.5, 1e-12), 1e-9));
  EXPECT_FALSE(contains(s, segment(e2(0, 0), e2(1, 0)), e2(0.5, 1e-6), 1e-9));
  EXPECT_FALSE(contains(s, {HalfSpace{{1, 0}, 0}}, e2(-0.1, 0), 0.0));
  EXPECT_TRUE(contains(s, {HalfSpace{{1, 0}, 0}}, e2(0.1, -7), 0.0));
  EXPECT_TRUE(contains(s, {WholeSpace{}}, e2(1e9, 0), 0.0));
}

TEST(ValidateSet, RejectsMalformedSets) {
  const auto s = euclidean(2);
  EXPECT_THROW(validate_set(s, ball(e2(0, 0), 0.0)), DomainError);
  EXPECT_THROW(validate_set(s, ball(e2(0, 0), -1.0)), DomainError);
  EXPECT_THROW(validate_set(s, {HalfSpace{{0, 0}, 1}}), DomainError);
  EXPECT_THROW(validate_set(s, {HalfSpace{{1}, 1}}), DomainError);
  EXPECT_THROW(validate_set(s, {Subtree{{0}}}), DomainError);
  EXPECT_THROW(validate_set(hyperbolic(2), {HalfSpace{{1, 0}, 1}}), DomainError);
  const auto t = star(3, 1.0);
  EXPECT_THROW(validate_set(t, {Subtree{{}}}), DomainError);
  EXPECT_THROW(validate_set(t, {Subtree{{1, 2}}}), DomainError);
  EXPECT_THROW(validate_set(t, {Subtree{{7}}}), DomainError);
  EXPECT_NO_THROW(validate_set(t, {Subtree{{0, 1, 2}}}));
  EXPECT_THROW(project(s, ball(e2(0, 0), 0.0), e2(1, 1)), DomainError);
}

TEST(Project, Examples) {
  const auto s = euclidean(2);
  const auto r = project(s, ball(e2(0, 0), 1), e2(2, 0));
  EXPECT_NEAR(r.u.coords()[0], 1.0, 1e-15);
  EXPECT_NEAR(r.u.coords()[1], 0.0, 1e-15);
  EXPECT_GE(r.certificate_residual, -1e-12);

  const auto inside = project(s, ball(e2(0, 0), 1), e2(0.3, 0.2));
  EXPECT_EQ(inside.u, e2(0.3, 0.2));
  EXPECT_EQ(inside.certificate_residual, 0.0);

  const auto seg = project(s, segment(e2(0, 0), e2(4, 0)), e2(1, 2));
  EXPECT_NEAR(seg.u.coords()[0], 1.0, 1e-12);
  EXPECT_NEAR(seg.u.coords()[1], 0.0, 1e-12);

  EXPECT_EQ(project(s, {WholeSpace{}}, e2(5, 5)).u, e2(5, 5));
  const auto h = project(s, {HalfSpace{{1, 1}, 2}}, e2(0, 0)).u;
  EXPECT_NEAR(h.coords()[0], 1.0, 1e-15);
  EXPECT_NEAR(h.coords()[1], 1.0, 1e-15);
}

TEST(Project, SegmentAgreesWithGridInEverySpace) {
  for (const auto& s : all_spaces()) {
    RandomStream r(41);
    for (int i = 0; i < 20; ++i) {
      const auto in = random_instance(s, r, false);
      const auto& seg = std::get<Segment>(in.set.kind);
      const auto u = project_point(s, in.set, in.x);
      const double lambda = grid_segment_lambda(s, seg.a, seg.b, in.x, 20000);
      const auto g = geodesic_point(s, seg.a, seg.b, lambda);
      const double dg = distance(s, in.x, g);
      ASSERT_LE(distance(s, in.x, u), dg + 1e-9 * (1 + dg));
    }
  }
}

TEST(Project, SubtreeGate) {
  // Path 0 - 1 - 2 - 3 with unit edges; subtree {0, 1}.
  const auto s = make_space(SpaceDescriptor::tree(TreeTopology{4, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}}}));
  const ConvexSetDescriptor sub{Subtree{{0, 1}}};
  const auto u = project(s, sub, Point::tree(2, 0.5)).u;
  EXPECT_EQ(s.tree().vertex_of(u.tree_location()), 1);
  EXPECT_EQ(project(s, sub, Point::tree(0, 0.25)).u, Point::tree(0, 0.25));
  const auto r = project(s, sub, Point::tree(2, 1.0));
  EXPECT_GE(r.certificate_residual, -1e-12);
}

TEST(Project, ForwardCertificateNonexpansiveIdempotent) {
  for (const auto& s : all_spaces()) {
    RandomStream r(5);
    for (int i = 0; i < 60; ++i) {
      const auto in = random_instance(s, r, i % 2 == 0);
      const auto res = project(s, in.set, in.x, 1000, static_cast<std::uint64_t>(i));
      ASSERT_TRUE(contains(s, in.set, res.u, membership_tolerance(s, in.set, res.u)));
      const double sc = 1 + std::pow(distance(s, in.x, res.u), 2);
      ASSERT_GE(res.certificate_residual, -1e-8 * sc);

      const auto y = random_point(s, default_region(s, 4.0), r);
      const auto uy = project_point(s, in.set, y);
      const double dxy = distance(s, in.x, y);
      ASSERT_LE(distance(s, res.u, uy), dxy + 1e-8 * (1 + dxy * dxy));
      ASSERT_LE(distance(s, project_point(s, in.set, res.u), res.u), 1e-8);
    }
  }
}

TEST(Project, ConverseDetectsWrongCandidates) {
  for (const auto& s : all_spaces()) {
    RandomStream r(77);
    int detected = 0;
    int attempted = 0;
    constexpr int n = 40;
    for (int i = 0; i < n; ++i) {
      const auto in = random_instance(s, r, i % 2 == 0);
      const auto u = project_point(s, in.set, in.x);
      // Step 1e-2 from u toward another member of C.
      RandomStream ps = r.split("probes");
      const auto members = make_probes(s, in.set, 8, ps, u);
      Point w = members.back();
      for (const auto& m : members)
        if (distance(s, m, u) > distance(s, w, u)) w = m;
      const double duw = distance(s, u, w);
      if (duw < 0.02) continue;
      ++attempted;
      const auto v = geodesic_point(s, w, u, 1e-2 / duw);
      RandomStream adv = r.split("adversarial");
      const auto probes = make_probes(s, in.set, 1000, adv, u);
      if (characterization_residual(s, in.set, in.x, v, probes) < 0) ++detected;
    }
    EXPECT_GE(attempted, n / 2);
    EXPECT_GE(detected, attempted - 1) << describe(s.descriptor());
  }
}

TEST(ProjectSegment, Examples) {
  const auto s = euclidean(2);
  const auto at_a = project_segment(s, e2(0, 0), e2(4, 0), e2(0, 0), 1e-9);
  EXPECT_NEAR(at_a.lambda, 1.0, 1e-9);
  const auto r = project_segment(s, e2(0, 0), e2(4, 0), e2(1, 2), 1e-10);
  EXPECT_NEAR(r.lambda, 0.75, 1e-7);
  EXPECT_NEAR(r.lambda, grid_segment_lambda(s, e2(0, 0), e2(4, 0), e2(1, 2)), 1e-5);

  const auto h = hyperbolic(2);
  const auto a = h2(-1.0, 0.5);
  const auto b = h2(2.0, 1.0);
  const auto x = geodesic_point(h, a, b, 0.3);
  const auto hr = project_segment(h, a, b, x, 1e-12);
  EXPECT_LE(distance(h, hr.u, x), 1e-8);
  EXPECT_THROW(project_segment(s, e2(0, 0), e2(1, 0), e2(0, 1), 0.0), DomainError);
}

TEST(ProjectSegment, GridOracleOnRandomInstances) {
  for (const auto& s : {euclidean(2), hyperbolic(2), random_tree_space(10, 8)}) {
    RandomStream r(13);
    for (int i = 0; i < 10; ++i) {
      const auto in = random_instance(s, r, false);
      const auto& seg = std::get<Segment>(in.set.kind);
      if (distance(s, seg.a, seg.b) < 1e-3) continue;
      const auto res = project_segment(s, seg.a, seg.b, in.x, 1e-9);
      const double oracle = grid_segment_lambda(s, seg.a, seg.b, in.x, 200000);
      ASSERT_NEAR(res.lambda, oracle, 2e-5) << describe(s.descriptor());
    }
  }
}

TEST(Characterization, Examples) {
  const auto s = euclidean(2);
  const auto c = ball(e2(0, 0), 1);
  const std::vector<Point> probes = {e2(1, 0), e2(0, 1), e2(-1, 0), e2(0.2, -0.3)};
  EXPECT_EQ(characterization_residual(s, c, e2(0.5, 0.5), e2(0.5, 0.5), probes), 0.0);
  EXPECT_GE(characterization_residual(s, c, e2(2, 0), e2(1, 0), probes), 0.0);
  EXPECT_GE(characterization_residual(s, c, e2(2, 0), e2(1, 0), 1000, 3), -1e-12);
  const std::vector<Point> one = {e2(1, 0)};
  EXPECT_DOUBLE_EQ(characterization_residual(s, c, e2(2, 0), e2(0, 1), one), -3.0);
  EXPECT_THROW(characterization_residual(s, c, e2(2, 0), e2(2, 0), probes), DomainError);
  EXPECT_THROW(characterization_residual(s, c, e2(2, 0), e2(1, 0), std::vector<Point>{}), DomainError);
}

TEST(Characterization, EuclideanDotProductOracle) {
  const auto s = euclidean(3);
  RandomStream r(3);
  for (int i = 0; i < 50; ++i) {
    const auto in = random_instance(s, r, true);
    const auto u = project_point(s, in.set, in.x);
    RandomStream ps(i);
    const auto probes = make_probes(s, in.set, 64, ps, u);
    double oracle = INFINITY;
    for (const auto& y : probes) oracle = std::min(oracle, dot(sub(u.coords(), in.x.coords()), sub(y.coords(), u.coords())));
    ASSERT_NEAR(characterization_residual(s, in.set, in.x, u, probes), oracle, 1e-9 * scale_of(s, {in.x, u}) * 10);
  }
}

TEST(Probes, AreMembersAndDeterministic) {
  for (const auto& s : all_spaces()) {
    RandomStream r(9);
    const auto in = random_instance(s, r, true);
    RandomStream a(4), b(4);
    const auto pa = make_probes(s, in.set, 100, a, in.x);
    const auto pb = make_probes(s, in.set, 100, b, in.x);
    ASSERT_EQ(pa.size(), 100u);
    for (std::size_t i = 0; i < pa.size(); ++i) {
      ASSERT_EQ(pa[i], pb[i]);
      ASSERT_TRUE(contains(s, in.set, pa[i], membership_tolerance(s, in.set, pa[i])));
    }
  }
}
