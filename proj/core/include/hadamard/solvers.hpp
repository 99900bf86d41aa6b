#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "hadamard/convex.hpp"
#include "hadamard/error.hpp"
#include "hadamard/mapping.hpp"
#include "hadamard/schedule.hpp"
#include "hadamard/space.hpp"

namespace hadamard {

/// One solver step. Optional columns are empty when they do not apply.
struct TraceRow {
  long n = 0;
  Point x;
  /// d(x_n, T x_n)
  double fixed_residual = 0.0;
  /// Explicit: d(x_{n+1}, x_n). Implicit: d(x_m, x_{m−1}).
  double step = 0.0;
  /// d(P_C y_n, x_n), explicit algorithm only.
  std::optional<double> z_residual;
  /// d(x_n, q_ref) when a reference point was supplied.
  std::optional<double> ref_distance;
  /// ⟨q o, q x_n⟩ against the reference point, or the final iterate.
  std::optional<double> qx_inner;

  // Not part of the CSV; kept for bound checks.
  double alpha = 0.0;
  double perturbation_norm = 0.0;
  int inner_iterations = 0;
};

enum class TerminalStatus { Converged, BudgetExhausted, InnerBudgetExhausted };

const char* to_string(TerminalStatus status);

struct IterationTrace {
  std::vector<TraceRow> rows;
  TerminalStatus status = TerminalStatus::BudgetExhausted;
  /// Last point handed to P_C and its image, for the projection certificate.
  std::optional<Point> last_projection_input;
  std::optional<Point> last_projection_output;

  const Point& final_point() const { return rows.back().x; }
  bool converged() const { return status == TerminalStatus::Converged; }
};

/// Raised by implicit_step when the inner iteration runs out of budget.
class InnerBudgetExhausted : public Error {
 public:
  InnerBudgetExhausted(Point best, int iterations)
      : Error("implicit step: inner iteration budget exhausted"),
        best_(std::move(best)),
        iterations_(iterations) {}

  const Point& best() const noexcept { return best_; }
  int iterations() const noexcept { return iterations_; }

 private:
  Point best_;
  int iterations_;
};

struct ImplicitStepResult {
  Point x;
  int iterations = 0;
};

/// Solves x = P_C(αu ⊕ (1−α)Tx) by Picard iteration of the (1−α)-contraction
/// Φ(x) = P_C(αu ⊕ (1−α)Tx), starting at `x_start`. Stops once
/// d(x_{k+1}, x_k)·(1−α)/α ≤ inner_tol, which bounds the distance to the true
/// solution by inner_tol. Throws InnerBudgetExhausted after `max_inner` steps.
ImplicitStepResult implicit_step(const Space& space, const ConvexSetDescriptor& c,
                                 const MappingDescriptor& t, double alpha, const Point& u,
                                 const Point& x_start, double inner_tol, int max_inner);

struct SolverOptions {
  long budget = 10000;
  /// Stop once d(x_n, T x_n) ≤ outer_tol.
  double outer_tol = 1e-6;
  double inner_tol = 1e-10;
  int max_inner = 50'000'000;
  /// Optional q_ref for the ref_distance / qx_inner columns.
  std::optional<Point> reference;
  /// Master seed; the perturbation stream is split from it unless the
  /// schedule carries its own direction seed.
  std::uint64_t seed = 0;
};

/// Implicit algorithm: x_m = P_C(α_m u_m ⊕ (1−α_m) T x_m), m = 1..budget,
/// each step warm-started at x_{m−1} (x_0 = `x_start`, or P_C o if absent).
/// Throws DomainError when α_m ↛ 0 or ‖u_m‖ ↛ 0, or on out-of-range values.
IterationTrace run_implicit(const Space& space, const ConvexSetDescriptor& c,
                            const MappingDescriptor& t, const Schedule& schedule,
                            const Basepoint& base, const std::optional<Point>& x_start,
                            const SolverOptions& options);

/// Explicit algorithm:
///   y_n = α_n u_n ⊕ (1−α_n) T x_n,  x_{n+1} = (1−β_n) x_n ⊕ β_n P_C y_n.
/// Throws DomainError when x0 ∉ C or the schedule fails its conditions.
IterationTrace run_explicit(const Space& space, const ConvexSetDescriptor& c,
                            const MappingDescriptor& t, const Schedule& schedule,
                            const Basepoint& base, const Point& x0, const SolverOptions& options);

/// max over p ∈ F(T) of ⟨q o, q p⟩. At most ~0 exactly when q is the point of
/// F(T) nearest to o (up to probe resolution).
double nearest_fixed_point_residual(const Space& space, const Point& q, const Basepoint& base,
                                    std::span<const Point> fixed_samples);
double nearest_fixed_point_residual(const Space& space, const Point& q, const Basepoint& base,
                                    const ConvexSetDescriptor& fixed_set, int probes,
                                    std::uint64_t seed);

/// Perturbation point u_n: a point at distance `norm` from o in a direction
/// drawn from `stream`.
Point perturbation_point(const Space& space, const Basepoint& base, double norm,
                         RandomStream& stream);

}  // namespace hadamard
