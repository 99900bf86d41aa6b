#pragma once

#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "hadamard/random.hpp"
#include "hadamard/space.hpp"

namespace hadamard {

struct WholeSpace {
  bool operator==(const WholeSpace&) const = default;
};

struct Ball {
  Point center;
  double radius = 1.0;
  bool operator==(const Ball&) const = default;
};

/// The geodesic segment [a, b]. a == b is allowed and denotes a single point.
struct Segment {
  Point a;
  Point b;
  bool operator==(const Segment&) const = default;
};

/// Subtree spanned by a connected vertex set (tree spaces only).
struct Subtree {
  std::vector<int> vertices;
  bool operator==(const Subtree&) const = default;
};

/// {x : normal·x ≥ offset} (Euclidean only).
struct HalfSpace {
  std::vector<double> normal;
  double offset = 0.0;
  bool operator==(const HalfSpace&) const = default;
};

/// A closed convex subset of a model space.
struct ConvexSetDescriptor {
  std::variant<WholeSpace, Ball, Segment, Subtree, HalfSpace> kind;
  bool operator==(const ConvexSetDescriptor&) const = default;
};

/// Default number of probes used by `project` to certify its answer.
inline constexpr int kDefaultCertificateProbes = 256;
/// Ternary search iteration cap.
inline constexpr int kMaxTernaryIterations = 200;

struct ProjectionResult {
  Point u;
  /// Minimum of ⟨xu, uy⟩ over the probe points y ∈ C.
  double certificate_residual = 0.0;
  int iterations_used = 0;
};

struct SegmentProjection {
  /// Weight on `a`: u = λ*a ⊕ (1−λ*)b.
  double lambda = 0.0;
  Point u;
  int iterations = 0;
};

/// Throws DomainError when `set` is malformed or incompatible with `space`.
void validate_set(const Space& space, const ConvexSetDescriptor& set);

/// Membership within an additive tolerance on the defining inequality or on
/// the distance to the set.
bool contains(const Space& space, const ConvexSetDescriptor& set, const Point& p, double tol);

/// Default membership tolerance for `p`: 1e-9 · (1 + d²(p, anchor of C)).
double membership_tolerance(const Space& space, const ConvexSetDescriptor& set, const Point& p);

/// Nearest point of `set` to `x`, without a certificate. This is the path the
/// solvers use. Segments use the exact closed form where the space has one
/// (Euclidean, hyperbolic, tree) and fall back to `project_segment` otherwise.
Point project_point(const Space& space, const ConvexSetDescriptor& set, const Point& x);

/// Metric projection with a certificate residual computed from `probes`
/// points (anchored near the answer), drawn from a stream seeded by `seed`.
ProjectionResult project(const Space& space, const ConvexSetDescriptor& set, const Point& x,
                         int probes = kDefaultCertificateProbes, std::uint64_t seed = 0);

/// Minimizes g(λ) = d²(x, λa ⊕ (1−λ)b) by ternary search down to an interval
/// of width `lambda_tol` (at most kMaxTernaryIterations iterations). g is
/// convex along geodesics in a CAT(0) space, so no derivatives are needed.
SegmentProjection project_segment(const Space& space, const Point& a, const Point& b,
                                  const Point& x, double lambda_tol);

/// Probe points of `set`. A quarter are placed close to `anchor` (geodesic
/// steps from the anchor toward other set points at log-spaced lengths), the
/// rest cover the set: a λ-grid on segments, boundary and interior shells on
/// balls, projected random points elsewhere.
std::vector<Point> make_probes(const Space& space, const ConvexSetDescriptor& set, int count,
                               RandomStream& stream, const Point& anchor);

/// min over probes y of ⟨xu, uy⟩. Nonnegative (up to rounding) when u is the
/// projection of x; some probe goes negative when u is far enough from it.
/// Throws DomainError if u ∉ set or there are no probes.
double characterization_residual(const Space& space, const ConvexSetDescriptor& set,
                                 const Point& x, const Point& u, std::span<const Point> probes);
double characterization_residual(const Space& space, const ConvexSetDescriptor& set,
                                 const Point& x, const Point& u, int probe_count,
                                 std::uint64_t seed);

}  // namespace hadamard
