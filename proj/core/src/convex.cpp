#include "hadamard/convex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "hadamard/error.hpp"
#include "hadamard/geometry.hpp"
#include "hadamard/sampling.hpp"
#include "hadamard/tree.hpp"

namespace hadamard {

namespace {

template <class... Fs>
struct Overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
Overloaded(Fs...) -> Overloaded<Fs...>;

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

bool in_subtree(const Subtree& sub, int v) {
  return std::find(sub.vertices.begin(), sub.vertices.end(), v) != sub.vertices.end();
}

Point project_subtree(const Space& space, const Subtree& sub, const Point& x) {
  const auto& t = space.tree();
  const auto& loc = x.tree_location();
  const auto& e = t.edge(loc.edge);
  const int v = t.vertex_of(loc);
  if (v >= 0 ? in_subtree(sub, v) : (in_subtree(sub, e.u) && in_subtree(sub, e.v)))
    return x;
  // Outside the subtree the nearest point is its gate vertex.
  double best = std::numeric_limits<double>::infinity();
  TreeLocation gate{};
  for (int w : sub.vertices) {
    const auto at = t.at_vertex(w);
    const double d = distance(space, x, Point::tree(at.edge, at.offset));
    if (d < best) {
      best = d;
      gate = at;
    }
  }
  return Point::tree(gate.edge, gate.offset);
}

// Closed-form nearest point on [a, b]; returns the parameter t ∈ [0, D] as
// arc length from a, or nullopt when the space has no closed form.
std::optional<double> segment_arclength(const Space& space, const Point& a, const Point& b,
                                        const Point& x, double length) {
  switch (space.kind()) {
    case Space::Kind::Euclidean: {
      const auto as = a.coords(), bs = b.coords(), xs = x.coords();
      double num = 0.0, den = 0.0;
      for (std::size_t i = 0; i < as.size(); ++i) {
        const double ab = bs[i] - as[i];
        num += (xs[i] - as[i]) * ab;
        den += ab * ab;
      }
      return std::clamp(num / den, 0.0, 1.0) * length;
    }
    case Space::Kind::Hyperbolic: {
      if (length < 1e-7) return std::nullopt;
      const auto as = a.coords(), bs = b.coords(), xs = x.coords();
      const double ab = hyperboloid::minkowski(as, bs);
      std::vector<double> w(as.size());
      for (std::size_t i = 0; i < w.size(); ++i) w[i] = bs[i] + ab * as[i];
      const double wn = std::sqrt(hyperboloid::minkowski(w, w));
      // cosh d(x, γ(t)) = A cosh t + B sinh t along γ(t) = cosh t·a + sinh t·v.
      const double A = -hyperboloid::minkowski(xs, as);
      const double B = -hyperboloid::minkowski(xs, w) / wn;
      const double ratio = std::clamp(-B / A, -1.0, 1.0);
      if (ratio >= 1.0) return length;
      if (ratio <= -1.0) return 0.0;
      return std::clamp(std::atanh(ratio), 0.0, length);
    }
    case Space::Kind::Tree: {
      // Gate of x on the path: Gromov product (x | b)_a.
      const double t = 0.5 * (distance(space, a, x) + length - distance(space, b, x));
      return std::clamp(t, 0.0, length);
    }
    default:
      return std::nullopt;
  }
}

Point project_on_segment(const Space& space, const Segment& seg, const Point& x, int* iterations) {
  const double len = distance(space, seg.a, seg.b);
  if (len == 0.0) return seg.a;
  if (auto t = segment_arclength(space, seg.a, seg.b, x, len)) {
    if (iterations) *iterations = 0;
    return geodesic_point(space, seg.a, seg.b, 1.0 - *t / len);
  }
  auto r = project_segment(space, seg.a, seg.b, x, 1e-12);
  if (iterations) *iterations = r.iterations;
  return r.u;
}

Point project_impl(const Space& space, const ConvexSetDescriptor& set, const Point& x,
                   int* iterations) {
  if (iterations) *iterations = 0;
  return std::visit(
      Overloaded{
          [&](const WholeSpace&) { return x; },
          [&](const Ball& b) {
            const double d = distance(space, b.center, x);
            if (d <= b.radius) return x;
            return geodesic_point(space, b.center, x, 1.0 - b.radius / d);
          },
          [&](const Segment& s) { return project_on_segment(space, s, x, iterations); },
          [&](const Subtree& s) { return project_subtree(space, s, x); },
          [&](const HalfSpace& h) {
            const auto xs = x.coords();
            const double gap = h.offset - dot(h.normal, xs);
            if (gap <= 0.0) return x;
            const double k = gap / dot(h.normal, h.normal);
            std::vector<double> u(xs.begin(), xs.end());
            for (std::size_t i = 0; i < u.size(); ++i) u[i] += k * h.normal[i];
            return Point::euclidean(std::move(u));
          },
      },
      set.kind);
}

// Anchor of a set used for tolerance scaling and probe placement.
const Point* set_anchor(const ConvexSetDescriptor& set) {
  if (const auto* b = std::get_if<Ball>(&set.kind)) return &b->center;
  if (const auto* s = std::get_if<Segment>(&set.kind)) return &s->a;
  return nullptr;
}

// A point of `set`, spread over the set at scale `extent` around `near`.
Point random_member(const Space& space, const ConvexSetDescriptor& set, RandomStream& stream,
                    const Point& near, double extent) {
  if (const auto* b = std::get_if<Ball>(&set.kind)) {
    const double rho = stream.uniform() < 0.5 ? b->radius : b->radius * stream.uniform();
    return project_impl(space, set, point_at_distance(space, b->center, rho, stream), nullptr);
  }
  if (const auto* s = std::get_if<Segment>(&set.kind))
    return geodesic_point(space, s->a, s->b, stream.uniform());
  if (space.kind() == Space::Kind::Tree)
    return project_impl(space, set, random_point(space, SamplingRegion{TreeWhole{}}, stream),
                        nullptr);
  const auto p = point_at_distance(space, near, extent * stream.uniform(), stream);
  return project_impl(space, set, p, nullptr);
}

}  // namespace

void validate_set(const Space& space, const ConvexSetDescriptor& set) {
  std::visit(
      Overloaded{
          [](const WholeSpace&) {},
          [&](const Ball& b) {
            if (auto v = validate_point(space, b.center)) throw DomainError("ball center: " + *v);
            if (!(b.radius > 0.0) || !std::isfinite(b.radius))
              throw DomainError("ball radius must be positive and finite");
          },
          [&](const Segment& s) {
            if (auto v = validate_point(space, s.a)) throw DomainError("segment endpoint a: " + *v);
            if (auto v = validate_point(space, s.b)) throw DomainError("segment endpoint b: " + *v);
          },
          [&](const Subtree& s) {
            if (space.kind() != Space::Kind::Tree)
              throw DomainError("subtree sets require a tree space");
            const auto& t = space.tree();
            if (s.vertices.empty()) throw DomainError("subtree vertex set is empty");
            std::vector<char> member(static_cast<std::size_t>(t.vertex_count()), 0);
            for (int v : s.vertices) {
              if (v < 0 || v >= t.vertex_count())
                throw DomainError("subtree vertex " + std::to_string(v) + " out of range");
              if (member[static_cast<std::size_t>(v)])
                throw DomainError("subtree vertex " + std::to_string(v) + " repeated");
              member[static_cast<std::size_t>(v)] = 1;
            }
            // Connected iff the induced edges number |V| - 1 (a forest otherwise).
            int induced = 0;
            for (int e = 0; e < t.edge_count(); ++e)
              if (member[static_cast<std::size_t>(t.edge(e).u)] &&
                  member[static_cast<std::size_t>(t.edge(e).v)])
                ++induced;
            if (induced != static_cast<int>(s.vertices.size()) - 1)
              throw DomainError("subtree vertex set is not connected");
          },
          [&](const HalfSpace& h) {
            if (space.kind() != Space::Kind::Euclidean)
              throw DomainError("half-spaces require a Euclidean space");
            if (static_cast<int>(h.normal.size()) != space.dim())
              throw DomainError("half-space normal has the wrong dimension");
            if (!(dot(h.normal, h.normal) > 0.0)) throw DomainError("half-space normal is zero");
            if (!std::isfinite(h.offset)) throw DomainError("half-space offset must be finite");
          },
      },
      set.kind);
}

bool contains(const Space& space, const ConvexSetDescriptor& set, const Point& p, double tol) {
  validate_set(space, set);
  space.require(p);
  return std::visit(
      Overloaded{
          [](const WholeSpace&) { return true; },
          [&](const Ball& b) { return distance(space, b.center, p) <= b.radius + tol; },
          [&](const HalfSpace& h) { return dot(h.normal, p.coords()) >= h.offset - tol; },
          [&](const auto&) { return distance(space, p, project_impl(space, set, p, nullptr)) <= tol; },
      },
      set.kind);
}

double membership_tolerance(const Space& space, const ConvexSetDescriptor& set, const Point& p) {
  const Point* anchor = set_anchor(set);
  const double d = anchor ? distance(space, p, *anchor) : 0.0;
  return 1e-9 * (1.0 + d * d);
}

Point project_point(const Space& space, const ConvexSetDescriptor& set, const Point& x) {
  space.require(x);
  return project_impl(space, set, x, nullptr);
}

ProjectionResult project(const Space& space, const ConvexSetDescriptor& set, const Point& x,
                         int probes, std::uint64_t seed) {
  validate_set(space, set);
  space.require(x);
  ProjectionResult r{x, 0.0, 0};
  if (!contains(space, set, x, membership_tolerance(space, set, x)))
    r.u = project_impl(space, set, x, &r.iterations_used);
  if (probes > 0) {
    RandomStream stream = RandomStream(seed).split("certificate");
    const auto ys = make_probes(space, set, probes, stream, r.u);
    r.certificate_residual = characterization_residual(space, set, x, r.u, ys);
  }
  return r;
}

SegmentProjection project_segment(const Space& space, const Point& a, const Point& b,
                                  const Point& x, double lambda_tol) {
  if (!(lambda_tol > 0.0)) throw DomainError("lambda_tol must be positive");
  space.require(a);
  space.require(b);
  space.require(x);
  auto g = [&](double lambda) {
    const double d = distance(space, x, geodesic_point(space, a, b, lambda));
    return d * d;
  };
  double lo = 0.0, hi = 1.0;
  int it = 0;
  while (hi - lo > lambda_tol && it < kMaxTernaryIterations) {
    const double m1 = lo + (hi - lo) / 3.0;
    const double m2 = hi - (hi - lo) / 3.0;
    if (g(m1) < g(m2))
      hi = m2;
    else
      lo = m1;
    ++it;
  }
  const double lambda = 0.5 * (lo + hi);
  return {lambda, geodesic_point(space, a, b, lambda), it};
}

std::vector<Point> make_probes(const Space& space, const ConvexSetDescriptor& set, int count,
                               RandomStream& stream, const Point& anchor) {
  std::vector<Point> out;
  if (count <= 0) return out;
  out.reserve(static_cast<std::size_t>(count));
  const Point base = project_impl(space, set, anchor, nullptr);
  const double extent = 1.0 + distance(space, base, origin(space));

  const int local = std::max(1, count / 4);
  for (int i = 0; i < local && static_cast<int>(out.size()) < count; ++i) {
    const auto w = random_member(space, set, stream, base, extent);
    const double step = std::pow(10.0, -1.0 - 6.0 * (i + 0.5) / local);
    out.push_back(geodesic_point(space, base, w, 1.0 - step));
  }

  const int rest = count - static_cast<int>(out.size());
  if (const auto* s = std::get_if<Segment>(&set.kind)) {
    for (int j = 0; j < rest; ++j) {
      const double lambda = rest == 1 ? 0.5 : static_cast<double>(j) / (rest - 1);
      out.push_back(geodesic_point(space, s->a, s->b, lambda));
    }
  } else if (const auto* b = std::get_if<Ball>(&set.kind)) {
    // Alternating boundary points and interior shells.
    for (int j = 0; j < rest; ++j) {
      const double rho = j % 2 == 0 ? b->radius : b->radius * ((j / 2) % 4 + 1) / 5.0;
      const auto p = point_at_distance(space, b->center, rho, stream);
      out.push_back(project_impl(space, set, p, nullptr));
    }
  } else {
    for (int j = 0; j < rest; ++j) out.push_back(random_member(space, set, stream, base, extent));
  }
  return out;
}

double characterization_residual(const Space& space, const ConvexSetDescriptor& set,
                                 const Point& x, const Point& u, std::span<const Point> probes) {
  if (probes.empty()) throw DomainError("characterization residual needs at least one probe");
  if (!contains(space, set, u, membership_tolerance(space, set, u)))
    throw DomainError("candidate projection is not a member of the set");
  double worst = std::numeric_limits<double>::infinity();
  for (const auto& y : probes) worst = std::min(worst, quasilin(space, x, u, u, y));
  return worst;
}

double characterization_residual(const Space& space, const ConvexSetDescriptor& set,
                                 const Point& x, const Point& u, int probe_count,
                                 std::uint64_t seed) {
  RandomStream stream = RandomStream(seed).split("certificate");
  const auto ys = make_probes(space, set, probe_count, stream, u);
  return characterization_residual(space, set, x, u, ys);
}

}  // namespace hadamard
