#include "hadamard/space.hpp"

#include <cmath>

#include "hadamard/error.hpp"
#include "hadamard/tree.hpp"

namespace hadamard {

bool ProductSpec::operator==(const ProductSpec& other) const {
  return *left == *other.left && *right == *other.right;
}

SpaceDescriptor SpaceDescriptor::product(SpaceDescriptor left, SpaceDescriptor right) {
  return {ProductSpec{std::make_shared<const SpaceDescriptor>(std::move(left)),
                      std::make_shared<const SpaceDescriptor>(std::move(right))}};
}

bool ProductPair::operator==(const ProductPair& other) const {
  return *first == *other.first && *second == *other.second;
}

Point Point::euclidean(std::vector<double> coords) { return Point(EuclideanCoords{std::move(coords)}); }

Point Point::hyperboloid(std::vector<double> coords) {
  return Point(HyperboloidCoords{std::move(coords)});
}

Point Point::tree(int edge, double offset) { return Point(TreeLocation{edge, offset}); }

Point Point::product(Point first, Point second) {
  return Point(ProductPair{std::make_shared<const Point>(std::move(first)),
                           std::make_shared<const Point>(std::move(second))});
}

std::span<const double> Point::coords() const {
  if (const auto* e = std::get_if<EuclideanCoords>(&payload_)) return e->x;
  if (const auto* h = std::get_if<HyperboloidCoords>(&payload_)) return h->x;
  throw DomainError("point has no coordinate vector");
}

const TreeLocation& Point::tree_location() const {
  if (const auto* t = std::get_if<TreeLocation>(&payload_)) return *t;
  throw DomainError("point is not a tree location");
}

const Point& Point::first() const {
  if (const auto* p = std::get_if<ProductPair>(&payload_)) return *p->first;
  throw DomainError("point is not a product pair");
}

const Point& Point::second() const {
  if (const auto* p = std::get_if<ProductPair>(&payload_)) return *p->second;
  throw DomainError("point is not a product pair");
}

const TreeIndex& Space::tree() const {
  if (!tree_) throw DomainError("space is not a tree");
  return *tree_;
}

const Space& Space::left() const {
  if (!left_) throw DomainError("space is not a product");
  return *left_;
}

const Space& Space::right() const {
  if (!right_) throw DomainError("space is not a product");
  return *right_;
}

namespace {

bool finite_coords(std::span<const double> xs) {
  for (double v : xs)
    if (!std::isfinite(v)) return false;
  return true;
}

const char* kind_name(Space::Kind k) {
  switch (k) {
    case Space::Kind::Euclidean: return "euclidean";
    case Space::Kind::Hyperbolic: return "hyperbolic";
    case Space::Kind::Tree: return "tree";
    case Space::Kind::Product: return "product";
    case Space::Kind::DistortedEuclidean: return "distorted euclidean";
  }
  return "?";
}

}  // namespace

bool Space::accepts(const Point& p) const noexcept {
  switch (kind_) {
    case Kind::Euclidean:
    case Kind::DistortedEuclidean:
      return p.is_euclidean() && static_cast<int>(p.coords().size()) == dim_ &&
             finite_coords(p.coords());
    case Kind::Hyperbolic:
      return p.is_hyperboloid() && static_cast<int>(p.coords().size()) == dim_ + 1 &&
             finite_coords(p.coords());
    case Kind::Tree: {
      if (!p.is_tree()) return false;
      const auto& loc = p.tree_location();
      return loc.edge >= 0 && loc.edge < tree_->edge_count() && std::isfinite(loc.offset);
    }
    case Kind::Product:
      return p.is_product() && left_->accepts(p.first()) && right_->accepts(p.second());
  }
  return false;
}

void Space::require(const Point& p) const {
  if (!accepts(p))
    throw DomainError(std::string("point does not belong to the ") + kind_name(kind_) +
                      " space " + describe(descriptor_));
}

Space Space::build(const SpaceDescriptor& descriptor, int depth) {
  Space s;
  s.descriptor_ = descriptor;
  std::visit(
      [&](const auto& spec) {
        using T = std::decay_t<decltype(spec)>;
        if constexpr (std::is_same_v<T, EuclideanSpec>) {
          if (spec.dim < 1) throw DomainError("euclidean space needs dim >= 1");
          s.kind_ = Kind::Euclidean;
          s.dim_ = spec.dim;
        } else if constexpr (std::is_same_v<T, HyperbolicSpec>) {
          if (spec.dim < 1) throw DomainError("hyperbolic space needs dim >= 1");
          s.kind_ = Kind::Hyperbolic;
          s.dim_ = spec.dim;
        } else if constexpr (std::is_same_v<T, TreeSpec>) {
          if (spec.topology.vertices < 2) throw DomainError("tree space needs at least one edge");
          s.kind_ = Kind::Tree;
          s.dim_ = 1;
          s.tree_ = std::make_shared<const TreeIndex>(spec.topology);
        } else if constexpr (std::is_same_v<T, ProductSpec>) {
          if (depth >= kMaxProductDepth)
            throw DomainError("product nesting deeper than " + std::to_string(kMaxProductDepth));
          if (!spec.left || !spec.right) throw DomainError("product space is missing a factor");
          s.kind_ = Kind::Product;
          s.left_ = std::make_shared<const Space>(build(*spec.left, depth + 1));
          s.right_ = std::make_shared<const Space>(build(*spec.right, depth + 1));
          s.dim_ = s.left_->dim_ + s.right_->dim_;
        } else {
          if (spec.dim < 1) throw DomainError("distorted space needs dim >= 1");
          if (!(spec.exponent > 0.0) || !std::isfinite(spec.exponent))
            throw DomainError("distorted space needs a positive exponent");
          s.kind_ = Kind::DistortedEuclidean;
          s.dim_ = spec.dim;
          s.exponent_ = spec.exponent;
        }
      },
      descriptor.kind);
  return s;
}

Space make_space(const SpaceDescriptor& descriptor) { return Space::build(descriptor, 0); }

Point origin(const Space& space) {
  switch (space.kind()) {
    case Space::Kind::Euclidean:
    case Space::Kind::DistortedEuclidean:
      return Point::euclidean(std::vector<double>(static_cast<std::size_t>(space.dim()), 0.0));
    case Space::Kind::Hyperbolic: {
      std::vector<double> x(static_cast<std::size_t>(space.dim() + 1), 0.0);
      x[0] = 1.0;
      return Point::hyperboloid(std::move(x));
    }
    case Space::Kind::Tree: {
      const auto loc = space.tree().at_vertex(0);
      return Point::tree(loc.edge, loc.offset);
    }
    case Space::Kind::Product:
      return Point::product(origin(space.left()), origin(space.right()));
  }
  throw DomainError("unknown space kind");
}

std::string describe(const SpaceDescriptor& descriptor) {
  return std::visit(
      [](const auto& spec) -> std::string {
        using T = std::decay_t<decltype(spec)>;
        if constexpr (std::is_same_v<T, EuclideanSpec>) {
          return "Euclidean(" + std::to_string(spec.dim) + ")";
        } else if constexpr (std::is_same_v<T, HyperbolicSpec>) {
          return "Hyperbolic(" + std::to_string(spec.dim) + ")";
        } else if constexpr (std::is_same_v<T, TreeSpec>) {
          return "WeightedTree(" + std::to_string(spec.topology.edges.size()) + " edges)";
        } else if constexpr (std::is_same_v<T, ProductSpec>) {
          return "Product(" + describe(*spec.left) + ", " + describe(*spec.right) + ")";
        } else {
          return "DistortedEuclidean(" + std::to_string(spec.dim) + ")";
        }
      },
      descriptor.kind);
}

}  // namespace hadamard
