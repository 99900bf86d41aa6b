#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace hadamard {

/// c · (n + n0)^(−p).
struct PowerLaw {
  double c = 1.0;
  double p = 1.0;
  double n0 = 1.0;
  bool operator==(const PowerLaw&) const = default;
};

struct ConstantLaw {
  double value = 0.5;
  bool operator==(const ConstantLaw&) const = default;
};

/// c · ratio^n.
struct GeometricLaw {
  double c = 1.0;
  double ratio = 0.5;
  bool operator==(const GeometricLaw&) const = default;
};

/// Explicit values; indices past the end repeat the last value.
struct TabulatedLaw {
  std::vector<double> values;
  bool operator==(const TabulatedLaw&) const = default;
};

/// A real sequence indexed by n ≥ 0.
struct Sequence {
  std::variant<PowerLaw, ConstantLaw, GeometricLaw, TabulatedLaw> law;

  static Sequence power(double c, double p, double n0) { return {PowerLaw{c, p, n0}}; }
  static Sequence constant(double value) { return {ConstantLaw{value}}; }

  double at(long n) const;
  /// Power laws and constants (p = 0) are decided analytically.
  std::optional<PowerLaw> as_power_law() const;

  bool operator==(const Sequence&) const = default;
};

/// Step sizes and perturbation norms for the solvers.
struct Schedule {
  Sequence alpha = Sequence::power(1.0, 1.0, 1.0);
  /// Explicit algorithm only.
  std::optional<Sequence> beta;
  /// ‖u_n‖ = d(u_n, o).
  Sequence perturbation = Sequence::power(1.0, 2.0, 1.0);
  /// Seed of the perturbation direction stream; derived from the run seed
  /// when absent.
  std::optional<std::uint64_t> direction_seed;

  bool operator==(const Schedule&) const = default;
};

/// α_m = 1/(m+1), ‖u_m‖ = 1/(m+1)² for m ≥ 1.
Schedule default_implicit_schedule();
/// α_n = (n+2)^(−0.7), β_n = 0.5, ‖u_n‖ = (n+2)^(−1) for n ≥ 0.
Schedule default_explicit_schedule();

struct ConditionResult {
  bool pass = false;
  /// True when decided from a finite horizon rather than analytically.
  bool heuristic = false;
  std::string evidence;
};

/// The three convergence conditions of the explicit algorithm:
/// (i) α_n → 0 and Σα_n = ∞; (ii) 0 < liminf β_n ≤ limsup β_n < 1;
/// (iii) Σ α_n‖u_n‖ < ∞.
struct ScheduleReport {
  ConditionResult condition_i;
  ConditionResult condition_ii;
  ConditionResult condition_iii;

  bool ok() const { return condition_i.pass && condition_ii.pass && condition_iii.pass; }
};

/// Power-law sequences are decided analytically; anything else is judged
/// over `horizon` terms from partial sums and the tail log-log slope
/// between n = horizon/10 and n = horizon, and flagged heuristic.
/// Without β, condition (ii) is reported as not applicable (pass).
ScheduleReport validate_schedules(const Schedule& schedule, long horizon = 100000);

/// Weaker requirement of the implicit algorithm: α_m → 0 and ‖u_m‖ → 0.
ConditionResult validate_implicit_schedule(const Schedule& schedule, long horizon = 100000);

/// Checks 0 < α_n < 1 (and 0 < β_n < 1 when present) and ‖u_n‖ ≥ 0 for
/// first ≤ n ≤ last. Returns a description of the first violation.
std::optional<std::string> check_schedule_ranges(const Schedule& schedule, long first, long last);

}  // namespace hadamard
