#include "hadamard/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hadamard/error.hpp"
#include "hadamard/tree.hpp"

namespace hadamard {

namespace hyperboloid {

double minkowski(std::span<const double> x, std::span<const double> y) {
  double s = -x[0] * y[0];
  for (std::size_t i = 1; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

std::vector<double> renormalize(std::vector<double> x) {
  double spatial = 0.0;
  for (std::size_t i = 1; i < x.size(); ++i) spatial += x[i] * x[i];
  const double q = -minkowski(x, x);
  const double magnitude = x[0] * x[0] + spatial;
  if (!std::isfinite(q) || q < -1e-9 * magnitude)
    throw DomainError("hyperboloid renormalization of a non-timelike vector");
  if (x[0] < 0.0)
    for (auto& v : x) v = -v;
  // Far from the apex q is lost to cancellation; the spatial part alone then
  // fixes the point.
  if (q > 1e-9 * magnitude) {
    const double inv = 1.0 / std::sqrt(q);
    for (std::size_t i = 1; i < x.size(); ++i) x[i] *= inv;
    spatial *= inv * inv;
  }
  if (!(x[0] > 0.0) && spatial == 0.0)
    throw DomainError("hyperboloid renormalization of a non-timelike vector");
  x[0] = std::sqrt(1.0 + spatial);
  return x;
}

std::vector<double> lift(std::span<const double> spatial) {
  std::vector<double> x(spatial.size() + 1);
  double sq = 0.0;
  for (std::size_t i = 0; i < spatial.size(); ++i) {
    x[i + 1] = spatial[i];
    sq += spatial[i] * spatial[i];
  }
  x[0] = std::sqrt(1.0 + sq);
  return x;
}

namespace {

// B = [[c0, cᵀ], [c, I + c cᵀ/(1 + c0)]] with sign s on the off-diagonal
// blocks (s = -1 gives the inverse boost).
std::vector<double> apply_boost(std::span<const double> c, std::span<const double> v, double s) {
  const std::size_t n = c.size();
  double cv = 0.0;
  for (std::size_t i = 1; i < n; ++i) cv += c[i] * v[i];
  std::vector<double> out(n);
  out[0] = c[0] * v[0] + s * cv;
  const double k = cv / (1.0 + c[0]);
  for (std::size_t i = 1; i < n; ++i) out[i] = s * c[i] * v[0] + v[i] + c[i] * k;
  return out;
}

}  // namespace

std::vector<double> boost(std::span<const double> center, std::span<const double> v) {
  return apply_boost(center, v, 1.0);
}

std::vector<double> unboost(std::span<const double> center, std::span<const double> v) {
  return apply_boost(center, v, -1.0);
}

std::vector<double> exp_from(std::span<const double> center, std::span<const double> dir, double t) {
  std::vector<double> at_apex(dir.size() + 1);
  at_apex[0] = std::cosh(t);
  const double sh = std::sinh(t);
  for (std::size_t i = 0; i < dir.size(); ++i) at_apex[i + 1] = sh * dir[i];
  return renormalize(boost(center, at_apex));
}

}  // namespace hyperboloid

namespace {

void require_pair(const Space& space, const Point& a, const Point& b) {
  space.require(a);
  space.require(b);
}

double euclidean_distance(std::span<const double> a, std::span<const double> b) {
  double sq = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    sq += d * d;
  }
  return std::sqrt(sq);
}

// d = 2·asinh(½·sqrt(⟨a−b, a−b⟩_M)); algebraically arcosh(−⟨a,b⟩_M) on the
// hyperboloid but without the catastrophic cancellation of arcosh near 1.
double hyperbolic_distance(std::span<const double> a, std::span<const double> b) {
  const double d0 = a[0] - b[0];
  double sq = -d0 * d0;
  for (std::size_t i = 1; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    sq += d * d;
  }
  // Clamping here is the chord-form counterpart of clamping ⟨a,b⟩_M ≤ −1.
  if (sq <= 0.0) return 0.0;
  return 2.0 * std::asinh(0.5 * std::sqrt(sq));
}

double tree_distance(const TreeIndex& t, const TreeLocation& p, const TreeLocation& q) {
  if (p.edge == q.edge) return std::abs(p.offset - q.offset);
  const auto& ep = t.edge(p.edge);
  const auto& eq = t.edge(q.edge);
  double best = INFINITY;
  for (int a : {ep.u, ep.v})
    for (int b : {eq.u, eq.v}) {
      const double d = t.distance_to_endpoint(p, a) + t.vertex_distance(a, b) +
                       t.distance_to_endpoint(q, b);
      best = std::min(best, d);
    }
  return best;
}

// Point at arc length `s` from p along the unique path p -> q.
TreeLocation tree_walk(const TreeIndex& t, const TreeLocation& p, const TreeLocation& q, double s) {
  if (s <= 0.0) return t.canonical(p);
  if (p.edge == q.edge) {
    const double dir = q.offset >= p.offset ? 1.0 : -1.0;
    return t.canonical({p.edge, p.offset + dir * s});
  }
  const auto& ep = t.edge(p.edge);
  const auto& eq = t.edge(q.edge);
  double best = INFINITY;
  int va = ep.u, vb = eq.u;
  for (int a : {ep.u, ep.v})
    for (int b : {eq.u, eq.v}) {
      const double d = t.distance_to_endpoint(p, a) + t.vertex_distance(a, b) +
                       t.distance_to_endpoint(q, b);
      if (d < best) {
        best = d;
        va = a;
        vb = b;
      }
    }
  const double leg = t.distance_to_endpoint(p, va);
  if (s <= leg) return t.canonical({p.edge, va == ep.v ? p.offset + s : p.offset - s});
  s -= leg;
  for (const auto& hop : t.vertex_path(va, vb)) {
    const double len = t.edge(hop.edge).length;
    if (s <= len) return t.along_edge(hop.edge, hop.from, s);
    s -= len;
  }
  // Remaining distance lies on q's edge, entered from vb.
  return t.along_edge(q.edge, vb, std::min(s, t.distance_to_endpoint(q, vb)));
}

}  // namespace

double distance(const Space& space, const Point& a, const Point& b) {
  require_pair(space, a, b);
  switch (space.kind()) {
    case Space::Kind::Euclidean:
      return euclidean_distance(a.coords(), b.coords());
    case Space::Kind::Hyperbolic:
      return hyperbolic_distance(a.coords(), b.coords());
    case Space::Kind::Tree:
      return tree_distance(space.tree(), a.tree_location(), b.tree_location());
    case Space::Kind::Product: {
      const double l = distance(space.left(), a.first(), b.first());
      const double r = distance(space.right(), a.second(), b.second());
      return std::sqrt(l * l + r * r);
    }
    case Space::Kind::DistortedEuclidean:
      return std::pow(euclidean_distance(a.coords(), b.coords()), space.exponent());
  }
  throw DomainError("unknown space kind");
}

Point geodesic_point(const Space& space, const Point& x, const Point& y, double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0))
    throw DomainError("geodesic weight must lie in [0, 1], got " + std::to_string(lambda));
  require_pair(space, x, y);
  if (lambda == 1.0) return x;
  if (lambda == 0.0) return y;
  const double mu = 1.0 - lambda;
  switch (space.kind()) {
    case Space::Kind::Euclidean:
    case Space::Kind::DistortedEuclidean: {
      const auto xs = x.coords();
      const auto ys = y.coords();
      std::vector<double> z(xs.size());
      for (std::size_t i = 0; i < z.size(); ++i) z[i] = lambda * xs[i] + mu * ys[i];
      return Point::euclidean(std::move(z));
    }
    case Space::Kind::Hyperbolic: {
      const auto xs = x.coords();
      const auto ys = y.coords();
      const double d = hyperbolic_distance(xs, ys);
      double wx = lambda, wy = mu;
      if (d > 1e-9) {
        const double sh = std::sinh(d);
        wx = std::sinh(lambda * d) / sh;
        wy = std::sinh(mu * d) / sh;
      }
      std::vector<double> z(xs.size());
      for (std::size_t i = 0; i < z.size(); ++i) z[i] = wx * xs[i] + wy * ys[i];
      return Point::hyperboloid(hyperboloid::renormalize(std::move(z)));
    }
    case Space::Kind::Tree: {
      const auto& t = space.tree();
      const auto& p = x.tree_location();
      const auto& q = y.tree_location();
      const auto loc = tree_walk(t, p, q, mu * tree_distance(t, p, q));
      return Point::tree(loc.edge, loc.offset);
    }
    case Space::Kind::Product:
      return Point::product(geodesic_point(space.left(), x.first(), y.first(), lambda),
                            geodesic_point(space.right(), x.second(), y.second(), lambda));
  }
  throw DomainError("unknown space kind");
}

double quasilin(const Space& space, const Point& a, const Point& b, const Point& c, const Point& d) {
  const double ad = distance(space, a, d);
  const double bc = distance(space, b, c);
  const double ac = distance(space, a, c);
  const double bd = distance(space, b, d);
  return 0.5 * ((ad * ad + bc * bc) - (ac * ac + bd * bd));
}

double quasilin(const Space& space, const OrientedPair& ab, const OrientedPair& cd) {
  return quasilin(space, ab.tail, ab.head, cd.tail, cd.head);
}

double norm(const Space& space, const Point& x, const Basepoint& base) {
  return distance(space, x, base.o);
}

double cauchy_schwarz_gap(const Space& space, const Point& a, const Point& b, const Point& c,
                          const Point& d) {
  return distance(space, a, b) * distance(space, c, d) - quasilin(space, a, b, c, d);
}

}  // namespace hadamard
