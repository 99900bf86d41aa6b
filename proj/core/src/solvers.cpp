#include "hadamard/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "hadamard/geometry.hpp"
#include "hadamard/sampling.hpp"

namespace hadamard {

const char* to_string(TerminalStatus status) {
  switch (status) {
    case TerminalStatus::Converged: return "converged";
    case TerminalStatus::BudgetExhausted: return "budget_exhausted";
    case TerminalStatus::InnerBudgetExhausted: return "inner_budget_exhausted";
  }
  return "unknown";
}

Point perturbation_point(const Space& space, const Basepoint& base, double norm,
                         RandomStream& stream) {
  return point_at_distance(space, base.o, norm, stream);
}

ImplicitStepResult implicit_step(const Space& space, const ConvexSetDescriptor& c,
                                 const MappingDescriptor& t, double alpha, const Point& u,
                                 const Point& x_start, double inner_tol, int max_inner) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw DomainError(fmt::format("implicit step needs alpha in (0, 1), got {}", alpha));
  if (!(inner_tol > 0.0)) throw DomainError("implicit step needs a positive inner tolerance");
  const double bound_factor = (1.0 - alpha) / alpha;
  Point x = x_start;
  for (int k = 1; k <= max_inner; ++k) {
    const Point y = geodesic_point(space, u, apply_mapping(space, t, x), alpha);
    Point next = project_point(space, c, y);
    const double moved = distance(space, next, x);
    x = std::move(next);
    if (moved * bound_factor <= inner_tol) return {std::move(x), k};
  }
  throw InnerBudgetExhausted(std::move(x), max_inner);
}

namespace {

RandomStream perturbation_stream(const Schedule& schedule, const SolverOptions& options) {
  if (schedule.direction_seed) return RandomStream(*schedule.direction_seed);
  return RandomStream(options.seed).split("perturbation");
}

void validate_problem(const Space& space, const ConvexSetDescriptor& c, const MappingDescriptor& t,
                      const Basepoint& base, const SolverOptions& options) {
  validate_set(space, c);
  validate_mapping(space, t);
  if (auto v = validate_point(space, base.o)) throw DomainError("basepoint: " + *v);
  if (options.reference)
    if (auto v = validate_point(space, *options.reference))
      throw DomainError("reference point: " + *v);
  if (options.budget < 1) throw DomainError("solver budget must be at least 1");
  if (!(options.outer_tol >= 0.0)) throw DomainError("outer tolerance must be nonnegative");
}

void fill_reference_columns(const Space& space, const Basepoint& base, const SolverOptions& options,
                            IterationTrace& trace) {
  if (trace.rows.empty()) return;
  const Point q = options.reference ? *options.reference : trace.final_point();
  for (auto& row : trace.rows) {
    if (options.reference) row.ref_distance = distance(space, row.x, q);
    row.qx_inner = quasilin(space, q, base.o, q, row.x);
  }
}

}  // namespace

IterationTrace run_implicit(const Space& space, const ConvexSetDescriptor& c,
                            const MappingDescriptor& t, const Schedule& schedule,
                            const Basepoint& base, const std::optional<Point>& x_start,
                            const SolverOptions& options) {
  validate_problem(space, c, t, base, options);
  const auto cond = validate_implicit_schedule(schedule);
  if (!cond.pass) throw DomainError("implicit schedule rejected: " + cond.evidence);
  Schedule ranges = schedule;
  ranges.beta.reset();
  if (auto bad = check_schedule_ranges(ranges, 1, options.budget))
    throw DomainError("implicit schedule rejected: " + *bad);

  Point x = x_start ? *x_start : project_point(space, c, base.o);
  if (x_start)
    if (auto v = validate_point(space, x)) throw DomainError("starting point: " + *v);

  RandomStream stream = perturbation_stream(schedule, options);
  IterationTrace trace;
  trace.status = TerminalStatus::BudgetExhausted;
  for (long m = 1; m <= options.budget; ++m) {
    const double alpha = schedule.alpha.at(m);
    const double unorm = schedule.perturbation.at(m);
    const Point u = perturbation_point(space, base, unorm, stream);

    TraceRow row;
    row.n = m;
    row.alpha = alpha;
    row.perturbation_norm = unorm;
    bool exhausted = false;
    try {
      auto step = implicit_step(space, c, t, alpha, u, x, options.inner_tol, options.max_inner);
      row.x = std::move(step.x);
      row.inner_iterations = step.iterations;
    } catch (const InnerBudgetExhausted& e) {
      row.x = e.best();
      row.inner_iterations = e.iterations();
      exhausted = true;
    }
    const Point tx = apply_mapping(space, t, row.x);
    row.fixed_residual = distance(space, row.x, tx);
    row.step = distance(space, row.x, x);
    const Point y = geodesic_point(space, u, tx, alpha);
    trace.last_projection_input = y;
    trace.last_projection_output = project_point(space, c, y);
    x = row.x;
    trace.rows.push_back(std::move(row));

    if (exhausted) {
      trace.status = TerminalStatus::InnerBudgetExhausted;
      break;
    }
    if (trace.rows.back().fixed_residual <= options.outer_tol) {
      trace.status = TerminalStatus::Converged;
      break;
    }
  }
  fill_reference_columns(space, base, options, trace);
  return trace;
}

IterationTrace run_explicit(const Space& space, const ConvexSetDescriptor& c,
                            const MappingDescriptor& t, const Schedule& schedule,
                            const Basepoint& base, const Point& x0, const SolverOptions& options) {
  validate_problem(space, c, t, base, options);
  if (auto v = validate_point(space, x0)) throw DomainError("x0: " + *v);
  if (!contains(space, c, x0, membership_tolerance(space, c, x0)))
    throw DomainError("x0 must lie in the convex set C");
  if (!schedule.beta) throw DomainError("explicit schedule needs a beta sequence");
  const auto report = validate_schedules(schedule, std::max(options.budget, 1000L));
  if (!report.condition_i.pass)
    throw DomainError("explicit schedule fails condition (i): " + report.condition_i.evidence);
  if (!report.condition_ii.pass)
    throw DomainError("explicit schedule fails condition (ii): " + report.condition_ii.evidence);
  if (!report.condition_iii.pass)
    throw DomainError("explicit schedule fails condition (iii): " + report.condition_iii.evidence);
  if (auto bad = check_schedule_ranges(schedule, 0, options.budget))
    throw DomainError("explicit schedule rejected: " + *bad);

  RandomStream stream = perturbation_stream(schedule, options);
  IterationTrace trace;
  Point x = x0;
  for (long n = 0;; ++n) {
    const double alpha = schedule.alpha.at(n);
    const double beta = schedule.beta->at(n);
    const double unorm = schedule.perturbation.at(n);
    const Point u = perturbation_point(space, base, unorm, stream);
    const Point tx = apply_mapping(space, t, x);
    const Point y = geodesic_point(space, u, tx, alpha);
    const Point z = project_point(space, c, y);
    Point next = geodesic_point(space, x, z, 1.0 - beta);

    TraceRow row;
    row.n = n;
    row.x = x;
    row.fixed_residual = distance(space, x, tx);
    row.step = distance(space, next, x);
    row.z_residual = distance(space, z, x);
    row.alpha = alpha;
    row.perturbation_norm = unorm;
    trace.last_projection_input = y;
    trace.last_projection_output = z;
    trace.rows.push_back(std::move(row));

    if (trace.rows.back().fixed_residual <= options.outer_tol) {
      trace.status = TerminalStatus::Converged;
      break;
    }
    if (n >= options.budget) {
      trace.status = TerminalStatus::BudgetExhausted;
      break;
    }
    x = std::move(next);
  }
  fill_reference_columns(space, base, options, trace);
  return trace;
}

double nearest_fixed_point_residual(const Space& space, const Point& q, const Basepoint& base,
                                    std::span<const Point> fixed_samples) {
  if (fixed_samples.empty()) throw DomainError("fixed-point set sample is empty");
  double worst = -std::numeric_limits<double>::infinity();
  for (const auto& p : fixed_samples) worst = std::max(worst, quasilin(space, q, base.o, q, p));
  return worst;
}

double nearest_fixed_point_residual(const Space& space, const Point& q, const Basepoint& base,
                                    const ConvexSetDescriptor& fixed_set, int probes,
                                    std::uint64_t seed) {
  validate_set(space, fixed_set);
  if (probes < 1) throw DomainError("need at least one fixed-set probe");
  RandomStream stream = RandomStream(seed).split("fixed-set");
  const auto samples = make_probes(space, fixed_set, probes, stream, q);
  return nearest_fixed_point_residual(space, q, base, samples);
}

}  // namespace hadamard
