#pragma once

#include <memory>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "hadamard/tree.hpp"

namespace hadamard {

struct SpaceDescriptor;

struct EuclideanSpec {
  int dim = 1;
  bool operator==(const EuclideanSpec&) const = default;
};

/// Hyperbolic space of curvature -1 in the hyperboloid model (points carry
/// dim + 1 coordinates).
struct HyperbolicSpec {
  int dim = 1;
  bool operator==(const HyperbolicSpec&) const = default;
};

struct TreeSpec {
  TreeTopology topology;
  bool operator==(const TreeSpec&) const = default;
};

struct ProductSpec {
  std::shared_ptr<const SpaceDescriptor> left;
  std::shared_ptr<const SpaceDescriptor> right;
  bool operator==(const ProductSpec& other) const;
};

/// R^dim with the metric |x - y|^exponent. Not CAT(0) for exponent != 1;
/// exists so the property harness can be shown to fail.
struct DistortedEuclideanSpec {
  int dim = 2;
  double exponent = 1.5;
  bool operator==(const DistortedEuclideanSpec&) const = default;
};

/// Which model space a computation happens in.
struct SpaceDescriptor {
  using Kind = std::variant<EuclideanSpec, HyperbolicSpec, TreeSpec, ProductSpec,
                            DistortedEuclideanSpec>;
  Kind kind;

  static SpaceDescriptor euclidean(int dim) { return {EuclideanSpec{dim}}; }
  static SpaceDescriptor hyperbolic(int dim) { return {HyperbolicSpec{dim}}; }
  static SpaceDescriptor tree(TreeTopology topology) { return {TreeSpec{std::move(topology)}}; }
  static SpaceDescriptor product(SpaceDescriptor left, SpaceDescriptor right);
  static SpaceDescriptor distorted_euclidean(int dim, double exponent) {
    return {DistortedEuclideanSpec{dim, exponent}};
  }

  bool operator==(const SpaceDescriptor&) const = default;
};

/// Maximum nesting of Product descriptors accepted by make_space.
inline constexpr int kMaxProductDepth = 4;

class Point;

struct EuclideanCoords {
  std::vector<double> x;
  bool operator==(const EuclideanCoords&) const = default;
};

struct HyperboloidCoords {
  std::vector<double> x;
  bool operator==(const HyperboloidCoords&) const = default;
};

struct ProductPair {
  std::shared_ptr<const Point> first;
  std::shared_ptr<const Point> second;
  bool operator==(const ProductPair& other) const;
};

/// Immutable element of a model space. The payload kind must match the space
/// it is used with; operations check this and throw DomainError otherwise.
class Point {
 public:
  /// An empty point; belongs to no space until assigned.
  Point() = default;

  using Payload = std::variant<EuclideanCoords, HyperboloidCoords, TreeLocation, ProductPair>;

  static Point euclidean(std::vector<double> coords);
  static Point hyperboloid(std::vector<double> coords);
  static Point tree(int edge, double offset);
  static Point product(Point first, Point second);

  const Payload& payload() const noexcept { return payload_; }

  bool is_euclidean() const noexcept { return std::holds_alternative<EuclideanCoords>(payload_); }
  bool is_hyperboloid() const noexcept {
    return std::holds_alternative<HyperboloidCoords>(payload_);
  }
  bool is_tree() const noexcept { return std::holds_alternative<TreeLocation>(payload_); }
  bool is_product() const noexcept { return std::holds_alternative<ProductPair>(payload_); }

  /// Coordinates of a Euclidean or hyperboloid point.
  std::span<const double> coords() const;
  const TreeLocation& tree_location() const;
  const Point& first() const;
  const Point& second() const;

  bool operator==(const Point&) const = default;

 private:
  explicit Point(Payload payload) : payload_(std::move(payload)) {}
  Payload payload_;
};

/// The fixed reference point o defining the "norm" ‖x‖ = d(x, o).
struct Basepoint {
  Point o;
};

/// The "vector" from `tail` to `head` used by the quasilinearization.
struct OrientedPair {
  Point tail;
  Point head;
};

class TreeIndex;

/// Validated, immutable handle to a model space. Cheap to copy.
class Space {
 public:
  enum class Kind { Euclidean, Hyperbolic, Tree, Product, DistortedEuclidean };

  const SpaceDescriptor& descriptor() const noexcept { return descriptor_; }
  Kind kind() const noexcept { return kind_; }
  /// Manifold dimension for Euclidean/Hyperbolic/Distorted, 1 for trees,
  /// sum of factors for products.
  int dim() const noexcept { return dim_; }
  /// Only for distorted spaces.
  double exponent() const noexcept { return exponent_; }

  const TreeIndex& tree() const;
  const Space& left() const;
  const Space& right() const;

  /// Throws DomainError unless `p` has the payload shape of this space and
  /// finite coordinates. Hyperboloid/tree invariants are checked by
  /// validate_point, not here.
  void require(const Point& p) const;
  bool accepts(const Point& p) const noexcept;

  friend Space make_space(const SpaceDescriptor& descriptor);

 private:
  Space() = default;
  static Space build(const SpaceDescriptor& descriptor, int depth);

  SpaceDescriptor descriptor_;
  Kind kind_ = Kind::Euclidean;
  int dim_ = 0;
  double exponent_ = 1.0;
  std::shared_ptr<const TreeIndex> tree_;
  std::shared_ptr<const Space> left_;
  std::shared_ptr<const Space> right_;
};

/// Validates `descriptor` and builds the per-space lookup tables (tree
/// parent tables, product factors). Throws DomainError on invalid input.
Space make_space(const SpaceDescriptor& descriptor);

/// Canonical origin: zero vector, hyperboloid apex (1, 0, ..., 0), tree
/// vertex 0, or the pair of factor origins.
Point origin(const Space& space);

std::string describe(const SpaceDescriptor& descriptor);

}  // namespace hadamard
