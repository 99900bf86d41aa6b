#include "hadamard/json_io.hpp"

#include <cmath>

#include "hadamard/error.hpp"
#include "hadamard/geometry.hpp"

namespace hadamard::json_io {

const json& require_field(const json& j, const char* key, const std::string& path) {
  if (!j.is_object()) throw ConfigError(path.empty() ? "/" : path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw ConfigError(path + "/" + key, "missing required field");
  return *it;
}

double require_number(const json& j, const std::string& path) {
  if (!j.is_number()) throw ConfigError(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ConfigError(path, "expected a finite number");
  return v;
}

long require_integer(const json& j, const std::string& path) {
  if (!j.is_number_integer()) throw ConfigError(path, "expected an integer");
  return j.get<long>();
}

std::string require_string(const json& j, const std::string& path) {
  if (!j.is_string()) throw ConfigError(path, "expected a string");
  return j.get<std::string>();
}

namespace {

std::vector<double> require_vector(const json& j, const std::string& path) {
  if (!j.is_array()) throw ConfigError(path, "expected an array of numbers");
  std::vector<double> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(require_number(j[i], path + "/" + std::to_string(i)));
  return out;
}

std::string type_of(const json& j, const std::string& path) {
  return require_string(require_field(j, "type", path), path + "/type");
}

// Runs a descriptor validator and re-labels its DomainError with `path`.
template <class F>
void validated(const std::string& path, F&& check) {
  try {
    check();
  } catch (const ConfigError&) {
    throw;
  } catch (const DomainError& e) {
    throw ConfigError(path.empty() ? "/" : path, e.what());
  }
}

}  // namespace

json encode(const TreeTopology& topology) {
  json edges = json::array();
  for (const auto& e : topology.edges) edges.push_back(json::array({e.u, e.v, e.length}));
  return {{"vertices", topology.vertices}, {"edges", edges}};
}

TreeTopology decode_topology(const json& j, const std::string& path) {
  TreeTopology t;
  t.vertices = static_cast<int>(require_integer(require_field(j, "vertices", path), path + "/vertices"));
  const auto& edges = require_field(j, "edges", path);
  if (!edges.is_array()) throw ConfigError(path + "/edges", "expected an array");
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const std::string ep = path + "/edges/" + std::to_string(i);
    const auto& e = edges[i];
    if (!e.is_array() || e.size() != 3) throw ConfigError(ep, "expected [u, v, length]");
    t.edges.push_back({static_cast<int>(require_integer(e[0], ep + "/0")),
                       static_cast<int>(require_integer(e[1], ep + "/1")),
                       require_number(e[2], ep + "/2")});
  }
  return t;
}

json encode(const SpaceDescriptor& space) {
  return std::visit(
      [](const auto& s) -> json {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, EuclideanSpec>) {
          return {{"type", "euclidean"}, {"dim", s.dim}};
        } else if constexpr (std::is_same_v<T, HyperbolicSpec>) {
          return {{"type", "hyperbolic"}, {"dim", s.dim}};
        } else if constexpr (std::is_same_v<T, TreeSpec>) {
          return {{"type", "tree"}, {"topology", encode(s.topology)}};
        } else if constexpr (std::is_same_v<T, ProductSpec>) {
          return {{"type", "product"}, {"left", encode(*s.left)}, {"right", encode(*s.right)}};
        } else {
          return {{"type", "distorted_euclidean"}, {"dim", s.dim}, {"exponent", s.exponent}};
        }
      },
      space.kind);
}

SpaceDescriptor decode_space(const json& j, const std::string& path) {
  const auto type = type_of(j, path);
  auto dim = [&] {
    return static_cast<int>(require_integer(require_field(j, "dim", path), path + "/dim"));
  };
  SpaceDescriptor out;
  if (type == "euclidean")
    out = SpaceDescriptor::euclidean(dim());
  else if (type == "hyperbolic")
    out = SpaceDescriptor::hyperbolic(dim());
  else if (type == "tree")
    out = SpaceDescriptor::tree(decode_topology(require_field(j, "topology", path), path + "/topology"));
  else if (type == "product")
    out = SpaceDescriptor::product(decode_space(require_field(j, "left", path), path + "/left"),
                                   decode_space(require_field(j, "right", path), path + "/right"));
  else if (type == "distorted_euclidean")
    out = SpaceDescriptor::distorted_euclidean(
        dim(), require_number(require_field(j, "exponent", path), path + "/exponent"));
  else
    throw ConfigError(path + "/type", "unknown space type '" + type + "'");
  validated(path, [&] { make_space(out); });
  return out;
}

json encode(const Point& p) {
  return std::visit(
      [](const auto& payload) -> json {
        using T = std::decay_t<decltype(payload)>;
        if constexpr (std::is_same_v<T, EuclideanCoords> || std::is_same_v<T, HyperboloidCoords>) {
          return payload.x;
        } else if constexpr (std::is_same_v<T, TreeLocation>) {
          return {{"edge", payload.edge}, {"offset", payload.offset}};
        } else {
          return {{"left", encode(*payload.first)}, {"right", encode(*payload.second)}};
        }
      },
      p.payload());
}

Point decode_point(const Space& space, const json& j, const std::string& path) {
  Point p;
  switch (space.kind()) {
    case Space::Kind::Euclidean:
    case Space::Kind::DistortedEuclidean:
      p = Point::euclidean(require_vector(j, path));
      break;
    case Space::Kind::Hyperbolic:
      if (j.is_object())
        p = Point::hyperboloid(
            hyperboloid::lift(require_vector(require_field(j, "spatial", path), path + "/spatial")));
      else
        p = Point::hyperboloid(require_vector(j, path));
      break;
    case Space::Kind::Tree:
      p = Point::tree(static_cast<int>(require_integer(require_field(j, "edge", path), path + "/edge")),
                      require_number(require_field(j, "offset", path), path + "/offset"));
      {
        const auto& loc = p.tree_location();
        const auto& t = space.tree();
        if (loc.edge >= 0 && loc.edge < t.edge_count() && loc.offset >= 0.0 &&
            loc.offset <= t.edge(loc.edge).length) {
          const auto c = t.canonical(loc);
          p = Point::tree(c.edge, c.offset);
        }
      }
      break;
    case Space::Kind::Product:
      p = Point::product(decode_point(space.left(), require_field(j, "left", path), path + "/left"),
                         decode_point(space.right(), require_field(j, "right", path), path + "/right"));
      break;
  }
  if (auto v = validate_point(space, p)) throw ConfigError(path.empty() ? "/" : path, *v);
  return p;
}

json encode(const ConvexSetDescriptor& set) {
  return std::visit(
      [](const auto& s) -> json {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, WholeSpace>) {
          return {{"type", "whole"}};
        } else if constexpr (std::is_same_v<T, Ball>) {
          return {{"type", "ball"}, {"center", encode(s.center)}, {"radius", s.radius}};
        } else if constexpr (std::is_same_v<T, Segment>) {
          return {{"type", "segment"}, {"a", encode(s.a)}, {"b", encode(s.b)}};
        } else if constexpr (std::is_same_v<T, Subtree>) {
          return {{"type", "subtree"}, {"vertices", s.vertices}};
        } else {
          return {{"type", "halfspace"}, {"normal", s.normal}, {"offset", s.offset}};
        }
      },
      set.kind);
}

ConvexSetDescriptor decode_set(const Space& space, const json& j, const std::string& path) {
  const auto type = type_of(j, path);
  ConvexSetDescriptor out;
  if (type == "whole") {
    out = {WholeSpace{}};
  } else if (type == "ball") {
    out = {Ball{decode_point(space, require_field(j, "center", path), path + "/center"),
                require_number(require_field(j, "radius", path), path + "/radius")}};
  } else if (type == "segment") {
    out = {Segment{decode_point(space, require_field(j, "a", path), path + "/a"),
                   decode_point(space, require_field(j, "b", path), path + "/b")}};
  } else if (type == "subtree") {
    const auto& vs = require_field(j, "vertices", path);
    if (!vs.is_array()) throw ConfigError(path + "/vertices", "expected an array");
    Subtree s;
    for (std::size_t i = 0; i < vs.size(); ++i)
      s.vertices.push_back(
          static_cast<int>(require_integer(vs[i], path + "/vertices/" + std::to_string(i))));
    out = {std::move(s)};
  } else if (type == "halfspace") {
    out = {HalfSpace{require_vector(require_field(j, "normal", path), path + "/normal"),
                     require_number(require_field(j, "offset", path), path + "/offset")}};
  } else {
    throw ConfigError(path + "/type", "unknown convex set type '" + type + "'");
  }
  validated(path, [&] { validate_set(space, out); });
  return out;
}

json encode(const MappingDescriptor& map) {
  return std::visit(
      [](const auto& m) -> json {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, IdentityMap>) {
          return {{"type", "identity"}};
        } else if constexpr (std::is_same_v<T, RotationMap>) {
          return {{"type", "rotation"}, {"center", encode(m.center)}, {"angle", m.angle}};
        } else if constexpr (std::is_same_v<T, ProjectionMap>) {
          return {{"type", "projection"}, {"set", encode(m.set)}};
        } else if constexpr (std::is_same_v<T, GeodesicAverageMap>) {
          return {{"type", "geodesic_average"}, {"lambda", m.lambda}, {"inner", encode(*m.inner)}};
        } else if constexpr (std::is_same_v<T, CompositionMap>) {
          json maps = json::array();
          for (const auto& inner : m.maps) maps.push_back(encode(inner));
          json out = {{"type", "composition"}, {"maps", maps}};
          if (m.declared_fixed_set) out["fixed_set"] = encode(*m.declared_fixed_set);
          return out;
        } else {
          return {{"type", "translation"}, {"shift", m.shift}};
        }
      },
      map.kind);
}

MappingDescriptor decode_mapping(const Space& space, const json& j, const std::string& path) {
  const auto type = type_of(j, path);
  MappingDescriptor out;
  if (type == "identity") {
    out = MappingDescriptor::identity();
  } else if (type == "rotation") {
    out = MappingDescriptor::rotation(
        decode_point(space, require_field(j, "center", path), path + "/center"),
        require_number(require_field(j, "angle", path), path + "/angle"));
  } else if (type == "projection") {
    out = MappingDescriptor::projection(decode_set(space, require_field(j, "set", path), path + "/set"));
  } else if (type == "geodesic_average") {
    out = MappingDescriptor::geodesic_average(
        require_number(require_field(j, "lambda", path), path + "/lambda"),
        decode_mapping(space, require_field(j, "inner", path), path + "/inner"));
  } else if (type == "composition") {
    const auto& maps = require_field(j, "maps", path);
    if (!maps.is_array()) throw ConfigError(path + "/maps", "expected an array");
    std::vector<MappingDescriptor> inner;
    for (std::size_t i = 0; i < maps.size(); ++i)
      inner.push_back(decode_mapping(space, maps[i], path + "/maps/" + std::to_string(i)));
    std::optional<ConvexSetDescriptor> fixed;
    if (j.contains("fixed_set")) fixed = decode_set(space, j["fixed_set"], path + "/fixed_set");
    out = MappingDescriptor::composition(std::move(inner), std::move(fixed));
  } else if (type == "translation") {
    out = MappingDescriptor::translation(require_vector(require_field(j, "shift", path), path + "/shift"));
  } else {
    throw ConfigError(path + "/type", "unknown mapping type '" + type + "'");
  }
  validated(path, [&] { validate_mapping(space, out); });
  return out;
}

json encode(const Sequence& seq) {
  return std::visit(
      [](const auto& law) -> json {
        using T = std::decay_t<decltype(law)>;
        if constexpr (std::is_same_v<T, PowerLaw>) {
          return {{"law", "power"}, {"c", law.c}, {"p", law.p}, {"n0", law.n0}};
        } else if constexpr (std::is_same_v<T, ConstantLaw>) {
          return {{"law", "constant"}, {"value", law.value}};
        } else if constexpr (std::is_same_v<T, GeometricLaw>) {
          return {{"law", "geometric"}, {"c", law.c}, {"ratio", law.ratio}};
        } else {
          return {{"law", "table"}, {"values", law.values}};
        }
      },
      seq.law);
}

Sequence decode_sequence(const json& j, const std::string& path) {
  const auto law = require_string(require_field(j, "law", path), path + "/law");
  auto num = [&](const char* key) { return require_number(require_field(j, key, path), path + "/" + key); };
  if (law == "power") return {PowerLaw{num("c"), num("p"), num("n0")}};
  if (law == "constant") return {ConstantLaw{num("value")}};
  if (law == "geometric") return {GeometricLaw{num("c"), num("ratio")}};
  if (law == "table") {
    auto values = require_vector(require_field(j, "values", path), path + "/values");
    if (values.empty()) throw ConfigError(path + "/values", "table must not be empty");
    return {TabulatedLaw{std::move(values)}};
  }
  throw ConfigError(path + "/law", "unknown sequence law '" + law + "'");
}

json encode(const Schedule& schedule) {
  json out = {{"alpha", encode(schedule.alpha)}, {"perturbation", encode(schedule.perturbation)}};
  if (schedule.beta) out["beta"] = encode(*schedule.beta);
  if (schedule.direction_seed) out["direction_seed"] = *schedule.direction_seed;
  return out;
}

Schedule decode_schedule(const json& j, const std::string& path) {
  Schedule s;
  s.alpha = decode_sequence(require_field(j, "alpha", path), path + "/alpha");
  s.perturbation = decode_sequence(require_field(j, "perturbation", path), path + "/perturbation");
  if (j.contains("beta")) s.beta = decode_sequence(j["beta"], path + "/beta");
  if (j.contains("direction_seed")) {
    const auto& d = j["direction_seed"];
    if (!d.is_number_unsigned() && !(d.is_number_integer() && d.get<long>() >= 0))
      throw ConfigError(path + "/direction_seed", "expected a nonnegative integer");
    s.direction_seed = d.get<std::uint64_t>();
  }
  return s;
}

json encode(const SamplingRegion& region) {
  return std::visit(
      [](const auto& r) -> json {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, EuclideanBox>) {
          return {{"type", "box"}, {"lo", r.lo}, {"hi", r.hi}};
        } else if constexpr (std::is_same_v<T, HyperbolicBall>) {
          return {{"type", "hyperbolic_ball"}, {"center", encode(r.center)}, {"radius", r.radius}};
        } else if constexpr (std::is_same_v<T, TreeWhole>) {
          return {{"type", "tree_whole"}};
        } else {
          return {{"type", "product"}, {"left", encode(*r.left)}, {"right", encode(*r.right)}};
        }
      },
      region.kind);
}

SamplingRegion decode_region(const Space& space, const json& j, const std::string& path) {
  const auto type = type_of(j, path);
  if (type == "box") {
    EuclideanBox box{require_vector(require_field(j, "lo", path), path + "/lo"),
                     require_vector(require_field(j, "hi", path), path + "/hi")};
    if (box.lo.size() != box.hi.size()) throw ConfigError(path, "lo and hi differ in length");
    for (std::size_t i = 0; i < box.lo.size(); ++i)
      if (box.lo[i] > box.hi[i]) throw ConfigError(path, "lo must not exceed hi");
    return {std::move(box)};
  }
  if (type == "hyperbolic_ball") {
    HyperbolicBall ball{decode_point(space, require_field(j, "center", path), path + "/center"),
                        require_number(require_field(j, "radius", path), path + "/radius")};
    if (!(ball.radius > 0.0)) throw ConfigError(path + "/radius", "radius must be positive");
    return {std::move(ball)};
  }
  if (type == "tree_whole") return {TreeWhole{}};
  if (type == "product") {
    if (space.kind() != Space::Kind::Product) throw ConfigError(path, "product region needs a product space");
    return SamplingRegion::product(decode_region(space.left(), require_field(j, "left", path), path + "/left"),
                                   decode_region(space.right(), require_field(j, "right", path), path + "/right"));
  }
  throw ConfigError(path + "/type", "unknown region type '" + type + "'");
}

json encode(const ConditionResult& c) {
  return {{"pass", c.pass}, {"heuristic", c.heuristic}, {"evidence", c.evidence}};
}

json encode(const ScheduleReport& report) {
  return {{"condition_i", encode(report.condition_i)},
          {"condition_ii", encode(report.condition_ii)},
          {"condition_iii", encode(report.condition_iii)},
          {"ok", report.ok()}};
}

}  // namespace hadamard::json_io
