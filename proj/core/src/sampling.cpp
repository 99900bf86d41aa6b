#include "hadamard/sampling.hpp"

#include <algorithm>
#include <cmath>

#include "hadamard/error.hpp"
#include "hadamard/geometry.hpp"
#include "hadamard/tree.hpp"

namespace hadamard {

SamplingRegion SamplingRegion::product(SamplingRegion left, SamplingRegion right) {
  return {ProductRegion{std::make_shared<const SamplingRegion>(std::move(left)),
                        std::make_shared<const SamplingRegion>(std::move(right))}};
}

SamplingRegion default_region(const Space& space, double extent) {
  switch (space.kind()) {
    case Space::Kind::Euclidean:
    case Space::Kind::DistortedEuclidean: {
      const auto n = static_cast<std::size_t>(space.dim());
      return {EuclideanBox{std::vector<double>(n, -extent), std::vector<double>(n, extent)}};
    }
    case Space::Kind::Hyperbolic:
      return {HyperbolicBall{origin(space), extent}};
    case Space::Kind::Tree:
      return {TreeWhole{}};
    case Space::Kind::Product:
      return SamplingRegion::product(default_region(space.left(), extent),
                                     default_region(space.right(), extent));
  }
  throw DomainError("unknown space kind");
}

std::optional<std::string> validate_point(const Space& space, const Point& p) {
  if (!space.accepts(p)) return "point shape does not match " + describe(space.descriptor());
  switch (space.kind()) {
    case Space::Kind::Euclidean:
    case Space::Kind::DistortedEuclidean:
      return std::nullopt;
    case Space::Kind::Hyperbolic: {
      const auto x = p.coords();
      if (!(x[0] > 0.0)) return "hyperboloid point must have x0 > 0";
      const double self = hyperboloid::minkowski(x, x);
      const double residual = std::abs(self + 1.0);
      if (residual > kHyperboloidTolerance * x[0] * x[0])
        return "hyperboloid constraint violated: Minkowski self-product " + std::to_string(self) +
               " != -1 (residual " + std::to_string(residual) + ")";
      return std::nullopt;
    }
    case Space::Kind::Tree: {
      const auto& t = space.tree();
      const auto& loc = p.tree_location();
      const double len = t.edge(loc.edge).length;
      if (loc.offset < 0.0 || loc.offset > len)
        return "tree offset " + std::to_string(loc.offset) + " outside [0, " +
               std::to_string(len) + "] on edge " + std::to_string(loc.edge);
      if (!(t.canonical(loc) == loc))
        return "tree vertex location is not in canonical form";
      return std::nullopt;
    }
    case Space::Kind::Product: {
      if (auto v = validate_point(space.left(), p.first())) return "left factor: " + *v;
      if (auto v = validate_point(space.right(), p.second())) return "right factor: " + *v;
      return std::nullopt;
    }
  }
  return "unknown space kind";
}

namespace {

Point random_tree_point(const TreeIndex& t, RandomStream& stream) {
  // Uniform over total arc length.
  double s = stream.uniform() * t.total_length();
  for (int e = 0; e < t.edge_count(); ++e) {
    const double len = t.edge(e).length;
    if (s < len || e + 1 == t.edge_count()) {
      const auto loc = t.canonical({e, std::min(s, len)});
      return Point::tree(loc.edge, loc.offset);
    }
    s -= len;
  }
  throw DomainError("empty tree");
}

}  // namespace

Point random_point(const Space& space, const SamplingRegion& region, RandomStream& stream) {
  switch (space.kind()) {
    case Space::Kind::Euclidean:
    case Space::Kind::DistortedEuclidean: {
      const auto* box = std::get_if<EuclideanBox>(&region.kind);
      if (!box || static_cast<int>(box->lo.size()) != space.dim() ||
          static_cast<int>(box->hi.size()) != space.dim())
        throw DomainError("sampling region must be a box of matching dimension");
      std::vector<double> x(box->lo.size());
      for (std::size_t i = 0; i < x.size(); ++i) {
        if (box->lo[i] > box->hi[i]) throw DomainError("sampling box has lo > hi");
        x[i] = stream.uniform(box->lo[i], box->hi[i]);
      }
      return Point::euclidean(std::move(x));
    }
    case Space::Kind::Hyperbolic: {
      const auto* ball = std::get_if<HyperbolicBall>(&region.kind);
      if (!ball) throw DomainError("sampling region must be a hyperbolic ball");
      space.require(ball->center);
      if (!(ball->radius > 0.0)) throw DomainError("sampling radius must be positive");
      const double radius = std::min(ball->radius, kMaxHyperbolicSamplingRadius);
      const auto dir = stream.unit_direction(space.dim());
      const auto rim = Point::hyperboloid(hyperboloid::exp_from(ball->center.coords(), dir, radius));
      // Shrink slightly so rounding never carries a sample past the radius.
      const double rho = radius * stream.uniform() * (1.0 - 1e-9);
      return geodesic_point(space, ball->center, rim, 1.0 - rho / radius);
    }
    case Space::Kind::Tree:
      if (!std::holds_alternative<TreeWhole>(region.kind))
        throw DomainError("sampling region must be the whole tree");
      return random_tree_point(space.tree(), stream);
    case Space::Kind::Product: {
      const auto* pr = std::get_if<ProductRegion>(&region.kind);
      if (!pr) throw DomainError("sampling region must be a product region");
      auto a = random_point(space.left(), *pr->left, stream);
      auto b = random_point(space.right(), *pr->right, stream);
      return Point::product(std::move(a), std::move(b));
    }
  }
  throw DomainError("unknown space kind");
}

Point random_point(const Space& space, const SamplingRegion& region, std::uint64_t seed) {
  RandomStream stream(seed);
  return random_point(space, region, stream);
}

Point point_at_distance(const Space& space, const Point& center, double r, RandomStream& stream) {
  space.require(center);
  if (!(r >= 0.0)) throw DomainError("distance must be nonnegative");
  if (r == 0.0) return center;
  switch (space.kind()) {
    case Space::Kind::Euclidean:
    case Space::Kind::DistortedEuclidean: {
      const auto dir = stream.unit_direction(space.dim());
      const auto c = center.coords();
      // Distorted spaces measure |v|^exponent.
      const double len = space.kind() == Space::Kind::Euclidean
                             ? r
                             : std::pow(r, 1.0 / space.exponent());
      std::vector<double> x(c.size());
      for (std::size_t i = 0; i < x.size(); ++i) x[i] = c[i] + len * dir[i];
      return Point::euclidean(std::move(x));
    }
    case Space::Kind::Hyperbolic: {
      const auto dir = stream.unit_direction(space.dim());
      return Point::hyperboloid(hyperboloid::exp_from(center.coords(), dir,
                                                      std::min(r, 2 * kMaxHyperbolicSamplingRadius)));
    }
    case Space::Kind::Tree: {
      // Rejection: find a uniform tree point at least r away, then walk r
      // toward it. Fall back to the farthest candidate seen.
      Point best = center;
      double best_d = 0.0;
      for (int attempt = 0; attempt < 64; ++attempt) {
        auto w = random_tree_point(space.tree(), stream);
        const double d = distance(space, center, w);
        if (d >= r) return geodesic_point(space, center, w, 1.0 - r / d);
        if (d > best_d) {
          best_d = d;
          best = std::move(w);
        }
      }
      return best;
    }
    case Space::Kind::Product: {
      const double theta = stream.uniform() * 1.5707963267948966;
      auto a = point_at_distance(space.left(), center.first(), r * std::cos(theta), stream);
      auto b = point_at_distance(space.right(), center.second(), r * std::sin(theta), stream);
      return Point::product(std::move(a), std::move(b));
    }
  }
  throw DomainError("unknown space kind");
}

TreeTopology random_tree(int edges, std::uint64_t seed, double min_length, double max_length) {
  if (edges < 1) throw DomainError("random tree needs at least one edge");
  RandomStream stream(seed);
  TreeTopology t;
  t.vertices = edges + 1;
  for (int v = 1; v <= edges; ++v) {
    const int parent = static_cast<int>(stream.index(static_cast<std::size_t>(v)));
    t.edges.push_back({parent, v, stream.uniform(min_length, max_length)});
  }
  return t;
}

TreeTopology star_tree(int rays, double length) {
  TreeTopology t;
  t.vertices = rays + 1;
  for (int i = 0; i < rays; ++i) t.edges.push_back({0, i + 1, length});
  return t;
}

}  // namespace hadamard
