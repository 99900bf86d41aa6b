#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "hadamard/sampling.hpp"
#include "hadamard/schedule.hpp"
#include "hadamard/solvers.hpp"
#include "hadamard/space.hpp"

namespace hadamard {

/// Aggregated outcome of one randomized property check.
struct PropertyReport {
  std::string name;
  long trials = 0;
  long violations = 0;
  /// Smallest slack/scale seen over all trials.
  double worst_margin = 0.0;
  /// Input tuple of the worst trial; feed to replay_witness.
  nlohmann::json worst_witness;
  double tolerance = 0.0;

  bool passed() const { return violations == 0; }
};

/// One evaluation of a property on a concrete tuple. The property holds when
/// slack ≥ −ε·scale, where scale = 1 + Σ d²(p_i, p_j) over the input points.
struct Evaluation {
  double lhs = 0.0;
  double rhs = 0.0;
  /// rhs − lhs for inequalities lhs ≤ rhs; −|lhs − rhs| for identities.
  double slack = 0.0;
  double scale = 1.0;
};

/// Names of the properties run by check_space_axioms and check_inequalities.
std::span<const std::string_view> axiom_properties();
std::span<const std::string_view> inequality_properties();

/// Number of points the named property consumes. Throws DomainError for an
/// unknown name.
int property_arity(std::string_view name);

/// Evaluates the named property on `points` (exactly property_arity of them)
/// and weight `lambda` ∈ [0, 1].
Evaluation evaluate_property(const Space& space, std::string_view name,
                             std::span<const Point> points, double lambda);

/// Re-evaluates a witness produced by a report.
Evaluation replay_witness(const Space& space, const nlohmann::json& witness);

/// Metric symmetry, triangle inequality, geodesic distances, Cauchy–Schwarz
/// and the quasilinearization identities.
std::vector<PropertyReport> check_space_axioms(const Space& space, long trials, double eps,
                                               std::uint64_t seed);
std::vector<PropertyReport> check_space_axioms(const Space& space, long trials, double eps,
                                               std::uint64_t seed, const SamplingRegion& region);

/// Convexity of the metric along geodesics, the CN inequality and the two
/// quasilinearization bounds for geodesic points.
std::vector<PropertyReport> check_inequalities(const Space& space, long trials, double eps,
                                         std::uint64_t seed);
std::vector<PropertyReport> check_inequalities(const Space& space, long trials, double eps,
                                         std::uint64_t seed, const SamplingRegion& region);

/// Sampling region used by the checks when none is given: a box of
/// half-width 5, a hyperbolic ball of radius 5, or the whole tree.
SamplingRegion harness_region(const Space& space);

struct RecursionResult {
  /// a_0 … a_N.
  std::vector<double> values;
  bool consistent = false;
  double threshold = 0.0;
  /// Hypotheses on γ, δ, σ; power laws are decided analytically.
  ConditionResult gamma_condition;
  ConditionResult delta_condition;
  ConditionResult sigma_condition;

  double final_value() const { return values.back(); }
};

/// Simulates a_{n+1} = max(0, (1−γ_n)a_n + γ_nδ_n + σ_n) for n = 0..N−1.
/// Consistent iff a_N ≤ threshold. Throws DomainError when some γ_n ∉ (0, 1),
/// a0 < 0 or σ_n < 0.
RecursionResult simulate_recursion(double a0, const Sequence& gamma, const Sequence& delta,
                        const Sequence& sigma, long steps, double threshold);

struct DiagnosticThresholds {
  double fixed_residual = 1e-3;
  double z_residual = 1e-3;
  /// Relative to 1 + d²(q, o).
  double qx_inner = 1e-3;
};

struct TraceDiagnostics {
  long tail_rows = 0;
  double max_fixed_residual = 0.0;
  std::optional<double> max_z_residual;
  double max_qx_inner = 0.0;
  double qx_scale = 1.0;
  bool fixed_residual_ok = false;
  bool z_residual_ok = false;
  bool qx_inner_ok = false;

  bool ok() const { return fixed_residual_ok && z_residual_ok && qx_inner_ok; }
};

/// Maxima over the trailing `tail_fraction` of rows of d(x_n, Tx_n),
/// d(z_n, x_n) and ⟨q o, q x_n⟩, each compared with its threshold.
TraceDiagnostics trace_diagnostics(const Space& space, const IterationTrace& trace, const Point& q,
                                   const Basepoint& base, double tail_fraction,
                                   const DiagnosticThresholds& thresholds = {});

nlohmann::json to_json(const PropertyReport& report);
nlohmann::json to_json(const TraceDiagnostics& diagnostics);

}  // namespace hadamard
