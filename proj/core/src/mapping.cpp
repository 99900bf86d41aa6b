#include "hadamard/mapping.hpp"

#include <cmath>
#include <numbers>

#include "hadamard/error.hpp"
#include "hadamard/geometry.hpp"
#include "hadamard/sampling.hpp"

namespace hadamard {

bool GeodesicAverageMap::operator==(const GeodesicAverageMap& other) const {
  return lambda == other.lambda && *inner == *other.inner;
}

bool CompositionMap::operator==(const CompositionMap& other) const {
  return maps == other.maps && declared_fixed_set == other.declared_fixed_set;
}

MappingDescriptor MappingDescriptor::geodesic_average(double lambda, MappingDescriptor inner) {
  return {GeodesicAverageMap{lambda, std::make_shared<const MappingDescriptor>(std::move(inner))}};
}

MappingDescriptor MappingDescriptor::composition(std::vector<MappingDescriptor> maps,
                                                 std::optional<ConvexSetDescriptor> fixed) {
  return {CompositionMap{std::move(maps), std::move(fixed)}};
}

namespace {

bool is_full_turn(double angle) {
  const double turns = angle / (2.0 * std::numbers::pi);
  return std::abs(turns - std::round(turns)) < 1e-15;
}

Point rotate(const Space& space, const RotationMap& r, const Point& x) {
  const double c = std::cos(r.angle);
  const double s = std::sin(r.angle);
  const auto cs = r.center.coords();
  const auto xs = x.coords();
  if (space.kind() == Space::Kind::Euclidean) {
    const double dx = xs[0] - cs[0];
    const double dy = xs[1] - cs[1];
    return Point::euclidean({cs[0] + c * dx - s * dy, cs[1] + s * dx + c * dy});
  }
  // Hyperbolic(2): move the center to the apex, rotate the spatial plane,
  // move back.
  auto v = hyperboloid::unboost(cs, xs);
  const double a = v[1], b = v[2];
  v[1] = c * a - s * b;
  v[2] = s * a + c * b;
  return Point::hyperboloid(hyperboloid::renormalize(hyperboloid::boost(cs, v)));
}

}  // namespace

void validate_mapping(const Space& space, const MappingDescriptor& map) {
  std::visit(
      [&](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, RotationMap>) {
          const bool plane = (space.kind() == Space::Kind::Euclidean ||
                              space.kind() == Space::Kind::Hyperbolic) &&
                             space.dim() == 2;
          if (!plane) throw DomainError("rotations need Euclidean(2) or Hyperbolic(2)");
          if (auto v = validate_point(space, m.center)) throw DomainError("rotation center: " + *v);
          if (!std::isfinite(m.angle)) throw DomainError("rotation angle must be finite");
        } else if constexpr (std::is_same_v<T, ProjectionMap>) {
          validate_set(space, m.set);
        } else if constexpr (std::is_same_v<T, GeodesicAverageMap>) {
          if (!(m.lambda >= 0.0 && m.lambda <= 1.0))
            throw DomainError("geodesic average weight must lie in [0, 1]");
          if (!m.inner) throw DomainError("geodesic average is missing its inner map");
          validate_mapping(space, *m.inner);
        } else if constexpr (std::is_same_v<T, CompositionMap>) {
          for (const auto& inner : m.maps) validate_mapping(space, inner);
          if (m.declared_fixed_set) validate_set(space, *m.declared_fixed_set);
        } else if constexpr (std::is_same_v<T, TranslationMap>) {
          if (space.kind() != Space::Kind::Euclidean)
            throw DomainError("translations need a Euclidean space");
          if (static_cast<int>(m.shift.size()) != space.dim())
            throw DomainError("translation vector has the wrong dimension");
        }
      },
      map.kind);
}

Point apply_mapping(const Space& space, const MappingDescriptor& map, const Point& x) {
  return std::visit(
      [&](const auto& m) -> Point {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, IdentityMap>) {
          space.require(x);
          return x;
        } else if constexpr (std::is_same_v<T, RotationMap>) {
          space.require(x);
          if (space.dim() != 2 || (space.kind() != Space::Kind::Euclidean &&
                                   space.kind() != Space::Kind::Hyperbolic))
            throw DomainError("rotations need Euclidean(2) or Hyperbolic(2)");
          return rotate(space, m, x);
        } else if constexpr (std::is_same_v<T, ProjectionMap>) {
          return project_point(space, m.set, x);
        } else if constexpr (std::is_same_v<T, GeodesicAverageMap>) {
          return geodesic_point(space, x, apply_mapping(space, *m.inner, x), m.lambda);
        } else if constexpr (std::is_same_v<T, CompositionMap>) {
          Point y = x;
          for (const auto& inner : m.maps) y = apply_mapping(space, inner, y);
          return y;
        } else {
          space.require(x);
          if (space.kind() != Space::Kind::Euclidean || m.shift.size() != x.coords().size())
            throw DomainError("translation does not fit the space");
          std::vector<double> y(x.coords().begin(), x.coords().end());
          for (std::size_t i = 0; i < y.size(); ++i) y[i] += m.shift[i];
          return Point::euclidean(std::move(y));
        }
      },
      map.kind);
}

std::optional<ConvexSetDescriptor> fixed_point_set(const Space& space, const MappingDescriptor& map) {
  return std::visit(
      [&](const auto& m) -> std::optional<ConvexSetDescriptor> {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, IdentityMap>) {
          return ConvexSetDescriptor{WholeSpace{}};
        } else if constexpr (std::is_same_v<T, RotationMap>) {
          if (is_full_turn(m.angle)) return ConvexSetDescriptor{WholeSpace{}};
          return ConvexSetDescriptor{Segment{m.center, m.center}};
        } else if constexpr (std::is_same_v<T, ProjectionMap>) {
          return m.set;
        } else if constexpr (std::is_same_v<T, GeodesicAverageMap>) {
          if (m.lambda == 1.0) return ConvexSetDescriptor{WholeSpace{}};
          return fixed_point_set(space, *m.inner);
        } else if constexpr (std::is_same_v<T, CompositionMap>) {
          if (m.declared_fixed_set) return m.declared_fixed_set;
          // Identities drop out; otherwise every factor must share one set.
          // That set is exactly F of the composition when all factors but
          // one are strictly quasi-nonexpansive (projections, proper
          // averages); two isometries can cancel, so refuse in that case.
          std::optional<ConvexSetDescriptor> common;
          int rigid = 0;
          for (const auto& inner : m.maps) {
            if (std::holds_alternative<IdentityMap>(inner.kind)) continue;
            const auto* avg = std::get_if<GeodesicAverageMap>(&inner.kind);
            const bool strict = std::holds_alternative<ProjectionMap>(inner.kind) ||
                                (avg && avg->lambda > 0.0 && avg->lambda < 1.0);
            if (!strict && ++rigid > 1) return std::nullopt;
            auto f = fixed_point_set(space, inner);
            if (!f) return std::nullopt;
            if (common && !(*common == *f)) return std::nullopt;
            common = std::move(f);
          }
          return common ? common : ConvexSetDescriptor{WholeSpace{}};
        } else {
          for (double v : m.shift)
            if (v != 0.0) return std::nullopt;
          return ConvexSetDescriptor{WholeSpace{}};
        }
      },
      map.kind);
}

}  // namespace hadamard
