#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "hadamard/random.hpp"
#include "hadamard/space.hpp"

namespace hadamard {

struct SamplingRegion;

struct EuclideanBox {
  std::vector<double> lo;
  std::vector<double> hi;
};

struct HyperbolicBall {
  Point center;
  double radius = 1.0;
};

struct TreeWhole {};

struct ProductRegion {
  std::shared_ptr<const SamplingRegion> left;
  std::shared_ptr<const SamplingRegion> right;
};

/// Where random points are drawn from.
struct SamplingRegion {
  std::variant<EuclideanBox, HyperbolicBall, TreeWhole, ProductRegion> kind;

  static SamplingRegion product(SamplingRegion left, SamplingRegion right);
};

/// Hyperbolic sampling radii above this are clamped (cosh stays well inside
/// double range).
inline constexpr double kMaxHyperbolicSamplingRadius = 20.0;

/// Tolerance on |⟨x,x⟩_M + 1|, relative to x₀².
inline constexpr double kHyperboloidTolerance = 1e-9;

/// Region of "size" `extent` around the origin: the box [−extent, extent]^n,
/// the hyperbolic ball of that radius about the apex, the whole tree, or the
/// product of the factors' default regions.
SamplingRegion default_region(const Space& space, double extent);

/// Checks every Point invariant for `space`; returns a description of the
/// first violation, or nullopt when the point is valid.
std::optional<std::string> validate_point(const Space& space, const Point& p);

/// Draws one point from `region`, advancing `stream`. Throws DomainError when
/// the region does not fit the space.
Point random_point(const Space& space, const SamplingRegion& region, RandomStream& stream);
Point random_point(const Space& space, const SamplingRegion& region, std::uint64_t seed);

/// A point at distance `r` from `center` in a random direction. Trees cannot
/// always reach every radius; there the result lies at distance min(r, reach)
/// along a uniformly drawn path.
Point point_at_distance(const Space& space, const Point& center, double r, RandomStream& stream);

/// Random tree with `edges` edges: each new vertex attaches to a uniformly
/// chosen existing vertex, lengths uniform in [min_length, max_length].
TreeTopology random_tree(int edges, std::uint64_t seed, double min_length = 0.5,
                         double max_length = 2.0);

/// Star with `rays` edges of the given length; vertex 0 is the hub.
TreeTopology star_tree(int rays, double length);

}  // namespace hadamard
