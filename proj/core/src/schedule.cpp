#include "hadamard/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include <fmt/format.h>

namespace hadamard {

double Sequence::at(long n) const {
  const double x = static_cast<double>(n);
  return std::visit(
      [x, n](const auto& law) -> double {
        using T = std::decay_t<decltype(law)>;
        if constexpr (std::is_same_v<T, PowerLaw>) {
          return law.p == 0.0 ? law.c : law.c * std::pow(x + law.n0, -law.p);
        } else if constexpr (std::is_same_v<T, ConstantLaw>) {
          return law.value;
        } else if constexpr (std::is_same_v<T, GeometricLaw>) {
          return law.c * std::pow(law.ratio, x);
        } else {
          if (law.values.empty()) return 0.0;
          const auto i = std::min<std::size_t>(static_cast<std::size_t>(std::max(0L, n)),
                                               law.values.size() - 1);
          return law.values[i];
        }
      },
      law);
}

std::optional<PowerLaw> Sequence::as_power_law() const {
  if (const auto* p = std::get_if<PowerLaw>(&law)) return *p;
  if (const auto* c = std::get_if<ConstantLaw>(&law)) return PowerLaw{c->value, 0.0, 1.0};
  return std::nullopt;
}

Schedule default_implicit_schedule() {
  Schedule s;
  s.alpha = Sequence::power(1.0, 1.0, 1.0);
  s.perturbation = Sequence::power(1.0, 2.0, 1.0);
  return s;
}

Schedule default_explicit_schedule() {
  Schedule s;
  s.alpha = Sequence::power(1.0, 0.7, 2.0);
  s.beta = Sequence::constant(0.5);
  s.perturbation = Sequence::power(1.0, 1.0, 2.0);
  return s;
}

namespace {

struct TailStats {
  double slope = 0.0;  // estimated decay exponent p̂
  double partial_sum = 0.0;
  double last = 0.0;
  double tail_min = 0.0;
  double tail_max = 0.0;
};

TailStats tail_stats(const std::function<double(long)>& f, long horizon) {
  TailStats s;
  s.tail_min = INFINITY;
  s.tail_max = -INFINITY;
  for (long n = 0; n <= horizon; ++n) {
    const double v = f(n);
    s.partial_sum += v;
    if (n >= horizon / 2) {
      s.tail_min = std::min(s.tail_min, v);
      s.tail_max = std::max(s.tail_max, v);
    }
  }
  s.last = f(horizon);
  const double early = std::abs(f(std::max(1L, horizon / 10)));
  const double late = std::abs(s.last);
  if (late == 0.0)
    s.slope = INFINITY;
  else if (early == 0.0)
    s.slope = -INFINITY;
  else
    s.slope = std::log(early / late) / std::log(static_cast<double>(horizon) /
                                                 static_cast<double>(std::max(1L, horizon / 10)));
  return s;
}

// Slopes within this band of a threshold are treated as on the threshold.
constexpr double kSlopeBand = 1e-3;

}  // namespace

ScheduleReport validate_schedules(const Schedule& schedule, long horizon) {
  horizon = std::max(horizon, 1000L);
  ScheduleReport r;
  const auto pa = schedule.alpha.as_power_law();
  const auto pu = schedule.perturbation.as_power_law();

  // (i)
  if (pa) {
    const bool to_zero = pa->p > 0.0 || pa->c == 0.0;
    const bool diverges = pa->c > 0.0 && pa->p <= 1.0;
    r.condition_i.pass = to_zero && diverges;
    r.condition_i.evidence =
        !to_zero ? fmt::format("alpha exponent p = {} does not tend to 0", pa->p)
        : !diverges ? fmt::format("sum of alpha_n converges (p = {} > 1)", pa->p)
                    : fmt::format("alpha_n -> 0 and sum diverges (0 < p = {} <= 1)", pa->p);
  } else {
    const auto s = tail_stats([&](long n) { return schedule.alpha.at(n); }, horizon);
    const bool to_zero = s.slope > kSlopeBand;
    const bool diverges = s.slope <= 1.0 + kSlopeBand;
    r.condition_i.pass = to_zero && diverges;
    r.condition_i.heuristic = true;
    r.condition_i.evidence = fmt::format(
        "heuristic: tail slope {:.4g}, partial sum {:.6g} over {} terms", s.slope, s.partial_sum,
        horizon + 1);
  }

  // (ii)
  if (!schedule.beta) {
    r.condition_ii.pass = true;
    r.condition_ii.evidence = "no beta sequence (not applicable)";
  } else if (const auto pb = schedule.beta->as_power_law(); pb && pb->p == 0.0) {
    r.condition_ii.pass = pb->c > 0.0 && pb->c < 1.0;
    r.condition_ii.evidence = fmt::format("constant beta = {}", pb->c);
  } else if (pb) {
    r.condition_ii.pass = false;
    r.condition_ii.evidence =
        pb->p > 0.0 ? fmt::format("beta_n -> 0 (p = {}), liminf is 0", pb->p)
                    : fmt::format("beta_n grows without bound (p = {})", pb->p);
  } else {
    const auto s = tail_stats([&](long n) { return schedule.beta->at(n); }, horizon);
    r.condition_ii.heuristic = true;
    r.condition_ii.pass = s.tail_min > 1e-3 && s.tail_max < 1.0 - 1e-3;
    r.condition_ii.evidence =
        fmt::format("heuristic: tail range [{:.6g}, {:.6g}]", s.tail_min, s.tail_max);
  }

  // (iii)
  if (pa && pu) {
    const bool trivial = pu->c == 0.0 || pa->c == 0.0;
    r.condition_iii.pass = trivial || pa->p + pu->p > 1.0;
    r.condition_iii.evidence =
        trivial ? std::string("perturbation vanishes identically")
                : fmt::format("alpha_n*|u_n| decays with exponent {} ({} 1)", pa->p + pu->p,
                              pa->p + pu->p > 1.0 ? ">" : "<=");
  } else {
    const auto s = tail_stats(
        [&](long n) { return schedule.alpha.at(n) * schedule.perturbation.at(n); }, horizon);
    r.condition_iii.heuristic = true;
    r.condition_iii.pass = s.last == 0.0 || s.slope > 1.0 + kSlopeBand;
    r.condition_iii.evidence = fmt::format(
        "heuristic: tail slope {:.4g}, partial sum {:.6g} over {} terms", s.slope, s.partial_sum,
        horizon + 1);
  }
  return r;
}

ConditionResult validate_implicit_schedule(const Schedule& schedule, long horizon) {
  horizon = std::max(horizon, 1000L);
  ConditionResult r;
  auto decays = [&](const Sequence& seq, bool& heuristic) {
    if (auto p = seq.as_power_law()) return p->c == 0.0 || p->p > 0.0;
    heuristic = true;
    const auto s = tail_stats([&](long n) { return seq.at(n); }, horizon);
    return s.last == 0.0 || s.slope > kSlopeBand;
  };
  const bool alpha_ok = decays(schedule.alpha, r.heuristic);
  const bool u_ok = decays(schedule.perturbation, r.heuristic);
  r.pass = alpha_ok && u_ok;
  r.evidence = !alpha_ok ? "alpha_m does not tend to 0"
               : !u_ok   ? "perturbation norm |u_m| does not tend to 0"
                         : "alpha_m -> 0 and |u_m| -> 0";
  if (r.heuristic) r.evidence = "heuristic: " + r.evidence;
  return r;
}

std::optional<std::string> check_schedule_ranges(const Schedule& schedule, long first, long last) {
  for (long n = first; n <= last; ++n) {
    const double a = schedule.alpha.at(n);
    if (!(a > 0.0 && a < 1.0)) return fmt::format("alpha_{} = {} is outside (0, 1)", n, a);
    if (schedule.beta) {
      const double b = schedule.beta->at(n);
      if (!(b > 0.0 && b < 1.0)) return fmt::format("beta_{} = {} is outside (0, 1)", n, b);
    }
    const double u = schedule.perturbation.at(n);
    if (!(u >= 0.0) || !std::isfinite(u))
      return fmt::format("perturbation norm at n = {} is {} (must be >= 0)", n, u);
  }
  return std::nullopt;
}

}  // namespace hadamard
