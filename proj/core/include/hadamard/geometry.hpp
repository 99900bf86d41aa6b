#pragma once

#include <span>
#include <vector>

#include "hadamard/space.hpp"

namespace hadamard {

/// Geodesic distance. Throws DomainError for points that do not belong to
/// `space` or carry non-finite coordinates.
double distance(const Space& space, const Point& a, const Point& b);

/// The point λx ⊕ (1−λ)y: on the geodesic from x to y at distance
/// (1−λ)d(x,y) from x and λ·d(x,y) from y. λ is the weight on `x`.
Point geodesic_point(const Space& space, const Point& x, const Point& y, double lambda);

/// Quasilinearization ⟨ab, cd⟩ = ½(d²(a,d) + d²(b,c) − d²(a,c) − d²(b,d)).
double quasilin(const Space& space, const Point& a, const Point& b, const Point& c, const Point& d);
double quasilin(const Space& space, const OrientedPair& ab, const OrientedPair& cd);

/// ‖x‖ = d(x, o).
double norm(const Space& space, const Point& x, const Basepoint& base);

/// d(a,b)·d(c,d) − ⟨ab, cd⟩; nonnegative (up to rounding) exactly when the
/// space satisfies the Cauchy–Schwarz inequality on this quadruple.
double cauchy_schwarz_gap(const Space& space, const Point& a, const Point& b, const Point& c,
                          const Point& d);

/// Helpers for the hyperboloid model {x : ⟨x,x⟩_M = −1, x₀ > 0}.
namespace hyperboloid {

/// Minkowski product −x₀y₀ + Σ xᵢyᵢ.
double minkowski(std::span<const double> x, std::span<const double> y);

/// Rescales x onto the upper sheet of the hyperboloid, then recomputes x₀
/// from the spatial part so the constraint holds to rounding.
std::vector<double> renormalize(std::vector<double> x);

/// Point with spatial part `spatial` (x₀ = sqrt(1 + |spatial|²)).
std::vector<double> lift(std::span<const double> spatial);

/// Lorentz boost taking the apex (1,0,…,0) to `center`, applied to v.
std::vector<double> boost(std::span<const double> center, std::span<const double> v);
/// Inverse of `boost(center, ·)`.
std::vector<double> unboost(std::span<const double> center, std::span<const double> v);

/// exp_center(t·dir) for a unit tangent direction at the apex given by its
/// spatial components `dir` (transported to `center` by the boost).
std::vector<double> exp_from(std::span<const double> center, std::span<const double> dir, double t);

}  // namespace hyperboloid

}  // namespace hadamard
