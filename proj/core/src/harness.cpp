#include "hadamard/harness.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "hadamard/error.hpp"
#include "hadamard/geometry.hpp"
#include "hadamard/json_io.hpp"
#include "hadamard/random.hpp"

namespace hadamard {

namespace {

constexpr std::array<std::string_view, 7> kAxioms = {
    "metric_symmetry",   "triangle_inequality",   "geodesic_distances",  "cauchy_schwarz",
    "quasilin_symmetry", "quasilin_antisymmetry", "quasilin_additivity",
};

constexpr std::array<std::string_view, 5> kInequalities = {
    "busemann_convexity",       "distance_convexity", "cn_inequality",
    "quasilin_geodesic_scaling", "quasilin_expansion",
};

double sq(double v) { return v * v; }

Evaluation inequality(double lhs, double rhs) { return {lhs, rhs, rhs - lhs, 1.0}; }
Evaluation identity(double lhs, double rhs) { return {lhs, rhs, -std::abs(lhs - rhs), 1.0}; }

double tuple_scale(const Space& space, std::span<const Point> pts) {
  double s = 1.0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) s += sq(distance(space, pts[i], pts[j]));
  return s;
}

Evaluation evaluate_raw(const Space& space, std::string_view name, std::span<const Point> p,
                        double l) {
  auto d = [&](const Point& a, const Point& b) { return distance(space, a, b); };
  auto q = [&](const Point& a, const Point& b, const Point& c, const Point& e) {
    return quasilin(space, a, b, c, e);
  };
  auto mix = [&](const Point& a, const Point& b) { return geodesic_point(space, a, b, l); };

  if (name == "metric_symmetry") return identity(d(p[0], p[1]), d(p[1], p[0]));
  if (name == "triangle_inequality") return inequality(d(p[0], p[2]), d(p[0], p[1]) + d(p[1], p[2]));
  if (name == "geodesic_distances") {
    const Point z = mix(p[0], p[1]);
    const double dxy = d(p[0], p[1]);
    const double dev = std::max(std::abs(d(z, p[0]) - (1.0 - l) * dxy), std::abs(d(z, p[1]) - l * dxy));
    return inequality(dev, 0.0);
  }
  if (name == "cauchy_schwarz")
    return inequality(q(p[0], p[1], p[2], p[3]), d(p[0], p[1]) * d(p[2], p[3]));
  if (name == "quasilin_symmetry") return identity(q(p[0], p[1], p[2], p[3]), q(p[2], p[3], p[0], p[1]));
  if (name == "quasilin_antisymmetry")
    return identity(q(p[0], p[1], p[2], p[3]), -q(p[1], p[0], p[2], p[3]));
  if (name == "quasilin_additivity")
    return identity(q(p[0], p[1], p[3], p[4]) + q(p[1], p[2], p[3], p[4]), q(p[0], p[2], p[3], p[4]));
  if (name == "busemann_convexity")
    return inequality(d(mix(p[0], p[1]), mix(p[2], p[3])), l * d(p[0], p[2]) + (1.0 - l) * d(p[1], p[3]));
  if (name == "distance_convexity")
    return inequality(d(mix(p[0], p[1]), p[2]), l * d(p[0], p[2]) + (1.0 - l) * d(p[1], p[2]));
  if (name == "cn_inequality")
    return inequality(sq(d(mix(p[0], p[1]), p[2])),
                      l * sq(d(p[0], p[2])) + (1.0 - l) * sq(d(p[1], p[2])) -
                          l * (1.0 - l) * sq(d(p[0], p[1])));
  if (name == "quasilin_geodesic_scaling") {
    const Point z = mix(p[0], p[1]);
    return inequality(q(z, p[1], z, p[2]), l * q(p[0], p[1], z, p[2]));
  }
  if (name == "quasilin_expansion")
    return inequality(sq(d(mix(p[0], p[1]), p[2])),
                      sq(l) * sq(d(p[0], p[2])) + sq(1.0 - l) * sq(d(p[1], p[2])) +
                          2.0 * l * (1.0 - l) * q(p[0], p[2], p[1], p[2]));
  throw DomainError("unknown property '" + std::string(name) + "'");
}

// Occasionally collapses λ to an endpoint and points onto each other so the
// degenerate cases are exercised too.
double draw_lambda(RandomStream& s) {
  const double u = s.uniform();
  if (u < 0.05) return 0.0;
  if (u < 0.10) return 1.0;
  return s.uniform();
}

std::vector<Point> draw_points(const Space& space, const SamplingRegion& region, int count,
                               RandomStream& s) {
  std::vector<Point> pts;
  pts.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) pts.push_back(random_point(space, region, s));
  if (count >= 2 && s.uniform() < 0.05) {
    const auto i = s.index(static_cast<std::size_t>(count));
    const auto j = s.index(static_cast<std::size_t>(count));
    pts[i] = pts[j];
  }
  return pts;
}

nlohmann::json witness_json(std::string_view name, std::span<const Point> pts, double lambda,
                            const Evaluation& ev) {
  nlohmann::json points = nlohmann::json::array();
  for (const auto& p : pts) points.push_back(json_io::encode(p));
  return {{"property", name}, {"points", points}, {"lambda", lambda},
          {"slack", ev.slack}, {"scale", ev.scale}};
}

PropertyReport run_property(const Space& space, std::string_view name, long trials, double eps,
                            const SamplingRegion& region, const RandomStream& root) {
  PropertyReport report;
  report.name = std::string(name);
  report.trials = trials;
  report.tolerance = eps;
  report.worst_margin = std::numeric_limits<double>::infinity();
  const int arity = property_arity(name);
  const RandomStream stream = root.split(name);
  for (long t = 0; t < trials; ++t) {
    RandomStream s = stream.split(static_cast<std::uint64_t>(t));
    const auto pts = draw_points(space, region, arity, s);
    const double lambda = draw_lambda(s);
    const Evaluation ev = evaluate_property(space, name, pts, lambda);
    const double margin = ev.slack / ev.scale;
    if (!(ev.slack >= -eps * ev.scale)) ++report.violations;
    if (!(margin >= report.worst_margin)) {
      report.worst_margin = margin;
      report.worst_witness = witness_json(name, pts, lambda, ev);
    }
  }
  return report;
}

std::vector<PropertyReport> run_all(const Space& space, std::span<const std::string_view> names,
                                    long trials, double eps, std::uint64_t seed,
                                    const SamplingRegion& region) {
  if (trials < 1) throw DomainError("trials must be at least 1");
  if (!(eps >= 0.0)) throw DomainError("eps must be nonnegative");
  const RandomStream root(seed);
  std::vector<PropertyReport> out;
  for (auto name : names) out.push_back(run_property(space, name, trials, eps, region, root));
  return out;
}

ConditionResult analytic(bool pass, std::string evidence) { return {pass, false, std::move(evidence)}; }

ConditionResult undecided(std::string what) {
  return {true, true, what + ": not a power law, assumed"};
}

}  // namespace

std::span<const std::string_view> axiom_properties() { return kAxioms; }
std::span<const std::string_view> inequality_properties() { return kInequalities; }

int property_arity(std::string_view name) {
  if (name == "metric_symmetry" || name == "geodesic_distances") return 2;
  if (name == "triangle_inequality" || name == "distance_convexity" || name == "cn_inequality" ||
      name == "quasilin_geodesic_scaling" || name == "quasilin_expansion")
    return 3;
  if (name == "cauchy_schwarz" || name == "quasilin_symmetry" || name == "quasilin_antisymmetry" ||
      name == "busemann_convexity")
    return 4;
  if (name == "quasilin_additivity") return 5;
  throw DomainError("unknown property '" + std::string(name) + "'");
}

Evaluation evaluate_property(const Space& space, std::string_view name,
                             std::span<const Point> points, double lambda) {
  if (static_cast<int>(points.size()) != property_arity(name))
    throw DomainError("property '" + std::string(name) + "' expects " +
                      std::to_string(property_arity(name)) + " points");
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw DomainError("lambda must lie in [0, 1]");
  Evaluation ev = evaluate_raw(space, name, points, lambda);
  ev.scale = tuple_scale(space, points);
  return ev;
}

Evaluation replay_witness(const Space& space, const nlohmann::json& witness) {
  const auto name = json_io::require_string(json_io::require_field(witness, "property", ""), "/property");
  const auto& pts_json = json_io::require_field(witness, "points", "");
  if (!pts_json.is_array()) throw ConfigError("/points", "expected an array");
  std::vector<Point> pts;
  for (std::size_t i = 0; i < pts_json.size(); ++i) {
    Point p = json_io::decode_point(space, pts_json[i], "/points/" + std::to_string(i));
    pts.push_back(std::move(p));
  }
  const double lambda = json_io::require_number(json_io::require_field(witness, "lambda", ""), "/lambda");
  return evaluate_property(space, name, pts, lambda);
}

SamplingRegion harness_region(const Space& space) { return default_region(space, 5.0); }

std::vector<PropertyReport> check_space_axioms(const Space& space, long trials, double eps,
                                               std::uint64_t seed) {
  return check_space_axioms(space, trials, eps, seed, harness_region(space));
}

std::vector<PropertyReport> check_space_axioms(const Space& space, long trials, double eps,
                                               std::uint64_t seed, const SamplingRegion& region) {
  return run_all(space, kAxioms, trials, eps, seed, region);
}

std::vector<PropertyReport> check_inequalities(const Space& space, long trials, double eps,
                                         std::uint64_t seed) {
  return check_inequalities(space, trials, eps, seed, harness_region(space));
}

std::vector<PropertyReport> check_inequalities(const Space& space, long trials, double eps,
                                         std::uint64_t seed, const SamplingRegion& region) {
  return run_all(space, kInequalities, trials, eps, seed, region);
}

RecursionResult simulate_recursion(double a0, const Sequence& gamma, const Sequence& delta,
                        const Sequence& sigma, long steps, double threshold) {
  if (!(a0 >= 0.0) || !std::isfinite(a0)) throw DomainError("a0 must be a finite nonnegative number");
  if (steps < 0) throw DomainError("step count must be nonnegative");
  RecursionResult out;
  out.threshold = threshold;
  out.values.reserve(static_cast<std::size_t>(steps) + 1);
  out.values.push_back(a0);
  double a = a0;
  for (long n = 0; n < steps; ++n) {
    const double g = gamma.at(n);
    if (!(g > 0.0 && g < 1.0))
      throw DomainError("gamma_" + std::to_string(n) + " = " + std::to_string(g) + " is outside (0, 1)");
    const double s = sigma.at(n);
    if (!(s >= 0.0)) throw DomainError("sigma_" + std::to_string(n) + " is negative");
    a = std::max(0.0, (1.0 - g) * a + g * delta.at(n) + s);
    out.values.push_back(a);
  }
  out.consistent = a <= threshold;

  const auto pg = gamma.as_power_law();
  const auto pd = delta.as_power_law();
  const auto ps = sigma.as_power_law();
  if (pg)
    out.gamma_condition = analytic(pg->p > 0.0 && pg->p <= 1.0,
                                   "gamma ~ n^-" + std::to_string(pg->p) + ": needs 0 < p <= 1");
  else
    out.gamma_condition = undecided("gamma");
  if (pd) {
    const bool limsup = pd->c <= 0.0 || pd->p > 0.0;
    const bool summable = pg && pg->p + pd->p > 1.0;
    out.delta_condition = analytic(limsup || summable, limsup ? "limsup delta_n <= 0"
                                                     : summable ? "sum gamma_n |delta_n| < inf"
                                                                : "delta_n stays positive");
  } else {
    out.delta_condition = undecided("delta");
  }
  if (ps)
    out.sigma_condition =
        analytic(ps->c == 0.0 || ps->p > 1.0, "sigma ~ n^-" + std::to_string(ps->p) + ": needs p > 1");
  else
    out.sigma_condition = undecided("sigma");
  return out;
}

TraceDiagnostics trace_diagnostics(const Space& space, const IterationTrace& trace, const Point& q,
                                   const Basepoint& base, double tail_fraction,
                                   const DiagnosticThresholds& thresholds) {
  if (trace.rows.empty()) throw DomainError("trace is empty");
  if (!(tail_fraction > 0.0 && tail_fraction <= 1.0)) throw DomainError("tail_fraction must lie in (0, 1]");
  const auto total = static_cast<long>(trace.rows.size());
  const long tail = std::max(1L, static_cast<long>(std::ceil(tail_fraction * static_cast<double>(total))));
  TraceDiagnostics out;
  out.tail_rows = tail;
  out.max_fixed_residual = -std::numeric_limits<double>::infinity();
  out.max_qx_inner = -std::numeric_limits<double>::infinity();
  for (long i = total - tail; i < total; ++i) {
    const auto& row = trace.rows[static_cast<std::size_t>(i)];
    out.max_fixed_residual = std::max(out.max_fixed_residual, row.fixed_residual);
    if (row.z_residual) out.max_z_residual = std::max(out.max_z_residual.value_or(0.0), *row.z_residual);
    out.max_qx_inner = std::max(out.max_qx_inner, quasilin(space, q, base.o, q, row.x));
  }
  out.qx_scale = 1.0 + sq(distance(space, q, base.o));
  out.fixed_residual_ok = out.max_fixed_residual <= thresholds.fixed_residual;
  out.z_residual_ok = !out.max_z_residual || *out.max_z_residual <= thresholds.z_residual;
  out.qx_inner_ok = out.max_qx_inner <= thresholds.qx_inner * out.qx_scale;
  return out;
}

nlohmann::json to_json(const PropertyReport& report) {
  return {{"name", report.name},
          {"trials", report.trials},
          {"violations", report.violations},
          {"worst_margin", report.worst_margin},
          {"tolerance", report.tolerance},
          {"worst_witness", report.worst_witness}};
}

nlohmann::json to_json(const TraceDiagnostics& d) {
  nlohmann::json out = {{"tail_rows", d.tail_rows},
                        {"max_fixed_residual", d.max_fixed_residual},
                        {"max_qx_inner", d.max_qx_inner},
                        {"qx_scale", d.qx_scale},
                        {"fixed_residual_ok", d.fixed_residual_ok},
                        {"z_residual_ok", d.z_residual_ok},
                        {"qx_inner_ok", d.qx_inner_ok}};
  out["max_z_residual"] = d.max_z_residual ? nlohmann::json(*d.max_z_residual) : nlohmann::json(nullptr);
  return out;
}

}  // namespace hadamard
