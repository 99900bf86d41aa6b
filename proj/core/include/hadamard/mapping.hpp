#pragma once

#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include "hadamard/convex.hpp"
#include "hadamard/space.hpp"

namespace hadamard {

struct MappingDescriptor;

struct IdentityMap {
  bool operator==(const IdentityMap&) const = default;
};

/// Rotation by `angle` radians about `center` (Euclidean(2) or Hyperbolic(2)).
struct RotationMap {
  Point center;
  double angle = 0.0;
  bool operator==(const RotationMap&) const = default;
};

struct ProjectionMap {
  ConvexSetDescriptor set;
  bool operator==(const ProjectionMap&) const = default;
};

/// x ↦ λx ⊕ (1−λ)S(x).
struct GeodesicAverageMap {
  double lambda = 0.5;
  std::shared_ptr<const MappingDescriptor> inner;
  bool operator==(const GeodesicAverageMap& other) const;
};

/// Applies `maps` left to right. `declared_fixed_set` overrides the derived
/// fixed-point set when the caller knows it.
struct CompositionMap {
  std::vector<MappingDescriptor> maps;
  std::optional<ConvexSetDescriptor> declared_fixed_set;
  bool operator==(const CompositionMap& other) const;
};

/// x ↦ x + shift (Euclidean only). An isometry without fixed points; used as
/// a negative control for the solvers.
struct TranslationMap {
  std::vector<double> shift;
  bool operator==(const TranslationMap&) const = default;
};

/// A nonexpansive self-map from the catalog, with known fixed-point structure.
struct MappingDescriptor {
  std::variant<IdentityMap, RotationMap, ProjectionMap, GeodesicAverageMap, CompositionMap,
               TranslationMap>
      kind;

  static MappingDescriptor identity() { return {IdentityMap{}}; }
  static MappingDescriptor rotation(Point center, double angle) {
    return {RotationMap{std::move(center), angle}};
  }
  static MappingDescriptor projection(ConvexSetDescriptor set) { return {ProjectionMap{std::move(set)}}; }
  static MappingDescriptor geodesic_average(double lambda, MappingDescriptor inner);
  static MappingDescriptor composition(std::vector<MappingDescriptor> maps,
                                       std::optional<ConvexSetDescriptor> fixed = std::nullopt);
  static MappingDescriptor translation(std::vector<double> shift) {
    return {TranslationMap{std::move(shift)}};
  }

  bool operator==(const MappingDescriptor&) const = default;
};

/// Throws DomainError when the mapping does not fit `space`.
void validate_mapping(const Space& space, const MappingDescriptor& map);

Point apply_mapping(const Space& space, const MappingDescriptor& map, const Point& x);

/// F(T) when it is representable as a convex set descriptor: Identity → whole
/// space; Rotation → {center} (whole space for multiples of 2π); projection
/// onto K → K; λ-average with λ < 1 → F(inner); compositions when declared or
/// when every factor shares one fixed set. Translations by a nonzero vector
/// have no fixed points and return nullopt, as do underivable compositions.
std::optional<ConvexSetDescriptor> fixed_point_set(const Space& space, const MappingDescriptor& map);

}  // namespace hadamard
