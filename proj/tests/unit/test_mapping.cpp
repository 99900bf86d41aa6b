#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "hadamard/error.hpp"
#include "hadamard/geometry.hpp"
#include "hadamard/json_io.hpp"
#include "hadamard/mapping.hpp"
#include "test_support.hpp"

using namespace hadamard;
using namespace hadamard::testing;

namespace {

constexpr double kPi = std::numbers::pi;

MappingDescriptor segment_projection(Point a, Point b) {
  return MappingDescriptor::projection({Segment{std::move(a), std::move(b)}});
}

std::vector<MappingDescriptor> catalog(const Space& s, RandomStream& r) {
  const auto region = default_region(s, 3.0);
  const auto c = random_point(s, region, r);
  std::vector<MappingDescriptor> out = {
      MappingDescriptor::identity(),
      MappingDescriptor::projection({Ball{c, 1.5}}),
      segment_projection(random_point(s, region, r), random_point(s, region, r)),
      MappingDescriptor::geodesic_average(0.3, MappingDescriptor::projection({Ball{c, 0.5}})),
  };
  if ((s.kind() == Space::Kind::Euclidean || s.kind() == Space::Kind::Hyperbolic) && s.dim() == 2) {
    out.push_back(MappingDescriptor::rotation(c, 2.0));
    out.push_back(MappingDescriptor::composition(
        {MappingDescriptor::rotation(c, 0.7), MappingDescriptor::projection({Ball{c, 2.0}})}));
  }
  return out;
}

}  // namespace

TEST(ApplyMapping, Examples) {
  const auto s = euclidean(2);
  EXPECT_EQ(apply_mapping(s, MappingDescriptor::identity(), e2(3, 4)), e2(3, 4));
  const auto r = apply_mapping(s, MappingDescriptor::rotation(e2(0.5, 0), kPi / 2), e2(1.5, 0));
  EXPECT_NEAR(r.coords()[0], 0.5, 1e-15);
  EXPECT_NEAR(r.coords()[1], 1.0, 1e-15);
  const auto inner = MappingDescriptor::rotation(e2(0, 0), 1.0);
  EXPECT_EQ(apply_mapping(s, MappingDescriptor::geodesic_average(1.0, inner), e2(2, 1)), e2(2, 1));
  const auto half = apply_mapping(s, MappingDescriptor::geodesic_average(0.5, MappingDescriptor::translation({2, 0})), e2(0, 0));
  EXPECT_NEAR(half.coords()[0], 1.0, 1e-15);
}

TEST(ApplyMapping, CompositionIsLeftToRight) {
  const auto s = euclidean(2);
  const auto t = MappingDescriptor::translation({1, 0});
  const auto p = MappingDescriptor::projection({Ball{e2(0, 0), 1}});
  const auto tp = apply_mapping(s, MappingDescriptor::composition({t, p}), e2(0.5, 0));
  EXPECT_NEAR(tp.coords()[0], 1.0, 1e-15);
  const auto pt = apply_mapping(s, MappingDescriptor::composition({p, t}), e2(0.5, 0));
  EXPECT_NEAR(pt.coords()[0], 1.5, 1e-15);
}

TEST(ApplyMapping, RotationNeedsAPlane) {
  EXPECT_THROW(validate_mapping(euclidean(3), MappingDescriptor::rotation(Point::euclidean({0, 0, 0}), 1.0)),
               DomainError);
  EXPECT_THROW(apply_mapping(star(3, 1.0), MappingDescriptor::rotation(Point::tree(0, 0), 1.0), Point::tree(0, 0.5)),
               DomainError);
  EXPECT_THROW(validate_mapping(euclidean(2), MappingDescriptor::geodesic_average(1.5, MappingDescriptor::identity())),
               DomainError);
  EXPECT_THROW(validate_mapping(hyperbolic(2), MappingDescriptor::translation({1, 0})), DomainError);
}

TEST(ApplyMapping, HyperbolicRotationFixesCenterAndIsIsometry) {
  const auto s = hyperbolic(2);
  const auto c = h2(0.4, -0.8);
  const auto rot = MappingDescriptor::rotation(c, 1.1);
  EXPECT_LE(distance(s, apply_mapping(s, rot, c), c), 1e-12);
  RandomStream r(3);
  for (int i = 0; i < 500; ++i) {
    const auto x = random_point(s, default_region(s, 4.0), r);
    const auto y = random_point(s, default_region(s, 4.0), r);
    const auto tx = apply_mapping(s, rot, x);
    ASSERT_FALSE(validate_point(s, tx).has_value());
    ASSERT_NEAR(distance(s, c, tx), distance(s, c, x), 1e-8 * (1 + distance(s, c, x)));
    const double d = distance(s, x, y);
    ASSERT_NEAR(distance(s, tx, apply_mapping(s, rot, y)), d, 1e-8 * (1 + d * d));
  }
  const auto full = apply_mapping(s, MappingDescriptor::rotation(c, 2 * kPi), h2(1, 1));
  EXPECT_LE(distance(s, full, h2(1, 1)), 1e-9);
}

TEST(ApplyMapping, CatalogIsNonexpansive) {
  const std::vector<Space> spaces = {euclidean(2), euclidean(4), hyperbolic(2), random_tree_space(10, 2),
                                     product_e2_h2()};
  for (const auto& s : spaces) {
    RandomStream r(19);
    for (const auto& t : catalog(s, r)) {
      for (int i = 0; i < 500; ++i) {
        const auto x = random_point(s, default_region(s, 5.0), r);
        const auto y = random_point(s, default_region(s, 5.0), r);
        const double d = distance(s, x, y);
        ASSERT_LE(distance(s, apply_mapping(s, t, x), apply_mapping(s, t, y)), d + 1e-8 * (1 + d * d))
            << describe(s.descriptor()) << " " << json_io::encode(t).dump();
      }
    }
  }
}

TEST(FixedPointSet, CatalogStructure) {
  const auto s = euclidean(2);
  EXPECT_EQ(fixed_point_set(s, MappingDescriptor::identity()), ConvexSetDescriptor{WholeSpace{}});
  const auto rot = fixed_point_set(s, MappingDescriptor::rotation(e2(1, 2), 0.5));
  ASSERT_TRUE(rot.has_value());
  EXPECT_EQ(*rot, (ConvexSetDescriptor{Segment{e2(1, 2), e2(1, 2)}}));
  const ConvexSetDescriptor k{Ball{e2(0, 0), 2}};
  EXPECT_EQ(fixed_point_set(s, MappingDescriptor::projection(k)), k);
  EXPECT_EQ(fixed_point_set(s, MappingDescriptor::geodesic_average(0.4, MappingDescriptor::projection(k))), k);
  EXPECT_FALSE(fixed_point_set(s, MappingDescriptor::translation({1, 0})).has_value());
  EXPECT_EQ(fixed_point_set(s, MappingDescriptor::translation({0, 0})), ConvexSetDescriptor{WholeSpace{}});
  const ConvexSetDescriptor declared{Segment{e2(0, 0), e2(0, 0)}};
  EXPECT_EQ(fixed_point_set(s, MappingDescriptor::composition({MappingDescriptor::rotation(e2(0, 0), 1.0),
                                                               MappingDescriptor::rotation(e2(0, 0), 2.0)},
                                                              declared)),
            declared);
}

TEST(FixedPointSet, DeclaredSetsAreFixed) {
  const auto s = euclidean(2);
  RandomStream r(6);
  for (const auto& t : catalog(s, r)) {
    const auto f = fixed_point_set(s, t);
    if (!f) continue;
    RandomStream ps(1);
    for (const auto& p : make_probes(s, *f, 50, ps, e2(0.1, 0.2)))
      ASSERT_LE(distance(s, apply_mapping(s, t, p), p), 1e-9) << json_io::encode(t).dump();
  }
}

TEST(MappingJson, RoundTrip) {
  const auto s = euclidean(2);
  RandomStream r(2);
  for (const auto& t : catalog(s, r)) {
    const auto j = json_io::encode(t);
    EXPECT_EQ(json_io::decode_mapping(s, nlohmann::json::parse(j.dump())), t) << j.dump();
  }
}
