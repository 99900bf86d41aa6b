#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "hadamard/error.hpp"
#include "hadamard/geometry.hpp"
#include "hadamard/solvers.hpp"
#include "test_support.hpp"

using namespace hadamard;
using namespace hadamard::testing;

namespace {

const ConvexSetDescriptor kBall3{Ball{Point::euclidean({0, 0}), 3}};
const ConvexSetDescriptor kSegment{Segment{Point::euclidean({-2, 1}), Point::euclidean({2, 1})}};
const MappingDescriptor kProjSegment = MappingDescriptor::projection(kSegment);

// x = (1−α)(c + Q(x − c)) solved directly: (I − (1−α)Q)x = (1−α)(I − Q)c.
std::array<double, 2> rotation_fixed_point(double alpha, double angle, std::array<double, 2> c) {
  const double cs = std::cos(angle), sn = std::sin(angle);
  const double w = 1 - alpha;
  const double qc0 = cs * c[0] - sn * c[1], qc1 = sn * c[0] + cs * c[1];
  const double r0 = w * (c[0] - qc0), r1 = w * (c[1] - qc1);
  const double a = 1 - w * cs, b = w * sn, cc = -w * sn, d = 1 - w * cs;
  const double det = a * d - b * cc;
  return {(r0 * d - b * r1) / det, (a * r1 - cc * r0) / det};
}

}  // namespace

TEST(ImplicitStep, IdentityOnWholeSpaceReturnsPerturbation) {
  const auto s = euclidean(2);
  const auto u = e2(0.7, -1.3);
  for (double alpha : {0.01, 0.5, 0.99}) {
    const auto r = implicit_step(s, {WholeSpace{}}, MappingDescriptor::identity(), alpha, u, e2(5, 5), 1e-10, 10'000'000);
    EXPECT_LE(distance(s, r.x, u), 1e-10);
  }
}

TEST(ImplicitStep, AlphaNearOneConvergesImmediately) {
  const auto s = euclidean(2);
  const auto r = implicit_step(s, kBall3, kProjSegment, 1 - 1e-12, e2(10, 0), e2(0, 0), 1e-10, 100);
  EXPECT_LE(r.iterations, 2);
  EXPECT_LE(distance(s, r.x, e2(3, 0)), 1e-9);
}

TEST(ImplicitStep, RotationMatchesLinearSolve) {
  const auto s = euclidean(2);
  const double angle = 2 * std::numbers::pi / 3;
  const auto t = MappingDescriptor::rotation(e2(0.5, 0), angle);
  const ConvexSetDescriptor c{Ball{e2(0, 0), 2}};
  const auto r = implicit_step(s, c, t, 0.5, e2(0, 0), e2(0, 0), 1e-12, 1000000);
  const auto oracle = rotation_fixed_point(0.5, angle, {0.5, 0});
  EXPECT_NEAR(r.x.coords()[0], oracle[0], 1e-8);
  EXPECT_NEAR(r.x.coords()[1], oracle[1], 1e-8);
}

TEST(ImplicitStep, ContractionOfTheStepMap) {
  const std::vector<Space> spaces = {euclidean(2), hyperbolic(2), random_tree_space(8, 3)};
  for (const auto& s : spaces) {
    RandomStream r(12);
    const auto region = default_region(s, 3.0);
    const ConvexSetDescriptor c{Ball{random_point(s, region, r), 2.0}};
    const auto t = MappingDescriptor::projection({Segment{random_point(s, region, r), random_point(s, region, r)}});
    for (int i = 0; i < 300; ++i) {
      const double alpha = r.uniform(0.01, 0.99);
      const auto u = random_point(s, region, r);
      const auto x = random_point(s, region, r);
      const auto y = random_point(s, region, r);
      auto phi = [&](const Point& p) { return project_point(s, c, geodesic_point(s, u, apply_mapping(s, t, p), alpha)); };
      const double d = distance(s, x, y);
      ASSERT_LE(distance(s, phi(x), phi(y)), (1 - alpha) * d + 1e-8 * (1 + d * d));
    }
  }
}

TEST(ImplicitStep, ErrorsAndBudget) {
  const auto s = euclidean(2);
  EXPECT_THROW(implicit_step(s, kBall3, kProjSegment, 0.0, e2(0, 0), e2(0, 0), 1e-10, 10), DomainError);
  EXPECT_THROW(implicit_step(s, kBall3, kProjSegment, 1.0, e2(0, 0), e2(0, 0), 1e-10, 10), DomainError);
  try {
    implicit_step(s, {WholeSpace{}}, MappingDescriptor::identity(), 1e-3, e2(0, 0), e2(100, 0), 1e-12, 5);
    FAIL() << "expected InnerBudgetExhausted";
  } catch (const InnerBudgetExhausted& e) {
    EXPECT_EQ(e.iterations(), 5);
    EXPECT_LT(e.best().coords()[0], 100.0);
  }
}

TEST(RunImplicit, ProjectionOntoCIsFixedEverywhere) {
  const auto s = euclidean(2);
  SolverOptions o;
  o.budget = 20;
  o.outer_tol = 0;
  const auto trace = run_implicit(s, kBall3, MappingDescriptor::projection(kBall3), default_implicit_schedule(),
                                  Basepoint{e2(0, 0)}, e2(1, 1), o);
  for (const auto& row : trace.rows) EXPECT_EQ(row.fixed_residual, 0.0);
}

TEST(RunImplicit, SegmentScenarioReachesNearestFixedPoint) {
  const auto s = euclidean(2);
  const Basepoint o{e2(0, 0)};
  SolverOptions opt;
  opt.budget = 10000;
  opt.outer_tol = 5e-3;
  opt.reference = e2(0, 1);
  const auto trace = run_implicit(s, kBall3, kProjSegment, default_implicit_schedule(), o, std::nullopt, opt);
  ASSERT_TRUE(trace.converged());
  EXPECT_LE(distance(s, trace.final_point(), e2(0, 1)), 1e-2);
  EXPECT_EQ(trace.rows.front().n, 1);

  double m_bound = 0.0;
  for (const auto& row : trace.rows) {
    const auto tx = apply_mapping(s, kProjSegment, row.x);
    m_bound = std::max({m_bound, row.perturbation_norm, norm(s, row.x, o), norm(s, tx, o)});
  }
  for (const auto& row : trace.rows) {
    ASSERT_LE(row.fixed_residual, 2 * row.alpha * m_bound + 1e-6) << "m=" << row.n;
    for (double t : {-2.0, -0.5, 0.0, 1.0, 2.0}) {
      const auto p = e2(t, 1);
      ASSERT_LE(distance(s, row.x, p), row.perturbation_norm + norm(s, p, o) + 1e-6);
    }
    ASSERT_TRUE(row.ref_distance.has_value());
    ASSERT_TRUE(row.qx_inner.has_value());
    ASSERT_FALSE(row.z_residual.has_value());
  }
}

TEST(RunImplicit, RejectsNonVanishingSchedules) {
  Schedule bad = default_implicit_schedule();
  bad.alpha = Sequence::constant(0.5);
  EXPECT_THROW(run_implicit(euclidean(2), kBall3, kProjSegment, bad, Basepoint{e2(0, 0)}, std::nullopt, {}),
               DomainError);
  bad = default_implicit_schedule();
  bad.perturbation = Sequence::constant(1.0);
  EXPECT_THROW(run_implicit(euclidean(2), kBall3, kProjSegment, bad, Basepoint{e2(0, 0)}, std::nullopt, {}),
               DomainError);
}

TEST(RunImplicit, InnerBudgetStopsTheRun) {
  SolverOptions o;
  o.max_inner = 1;
  o.inner_tol = 1e-15;
  const auto trace = run_implicit(euclidean(2), kBall3, kProjSegment, default_implicit_schedule(),
                                  Basepoint{e2(0, 0)}, e2(3, 0), o);
  EXPECT_EQ(trace.status, TerminalStatus::InnerBudgetExhausted);
  EXPECT_EQ(trace.rows.size(), 1u);
}

TEST(RunExplicit, IdentityStopsAtTheStartingPoint) {
  const auto s = euclidean(2);
  SolverOptions o;
  o.budget = 20000;
  o.outer_tol = 0;
  const auto trace =
      run_explicit(s, kBall3, MappingDescriptor::identity(), default_explicit_schedule(), Basepoint{e2(0.5, 0.5)}, e2(2, -1), o);
  ASSERT_EQ(trace.rows.size(), 1u);
  EXPECT_EQ(trace.rows.front().n, 0);
  EXPECT_EQ(trace.final_point(), e2(2, -1));
  EXPECT_TRUE(trace.converged());
}

TEST(RunExplicit, RotationDriftsToItsCenter) {
  const auto s = euclidean(2);
  auto schedule = default_explicit_schedule();
  schedule.perturbation = Sequence::constant(0.0);
  SolverOptions o;
  o.budget = 20000;
  o.outer_tol = 0;
  const auto t = MappingDescriptor::rotation(e2(0.5, 0.5), 1.0);
  const auto trace = run_explicit(s, kBall3, t, schedule, Basepoint{e2(0, 0)}, e2(2, -1), o);
  EXPECT_LE(distance(s, trace.final_point(), e2(0.5, 0.5)), 1e-3);
  EXPECT_EQ(trace.rows.size(), 20001u);
  EXPECT_EQ(trace.status, TerminalStatus::BudgetExhausted);
}

TEST(RunExplicit, SegmentScenarioTail) {
  const auto s = euclidean(2);
  SolverOptions o;
  o.budget = 100000;
  o.outer_tol = 5e-4;
  o.reference = e2(0, 1);
  const auto trace = run_explicit(s, kBall3, kProjSegment, default_explicit_schedule(), Basepoint{e2(0, 0)},
                                  e2(1.5, -2), o);
  ASSERT_TRUE(trace.converged());
  EXPECT_LE(distance(s, trace.final_point(), e2(0, 1)), 5e-2);
  const auto tail = trace.rows.size() / 10;
  for (std::size_t i = trace.rows.size() - tail; i < trace.rows.size(); ++i) {
    ASSERT_LE(trace.rows[i].fixed_residual, 1e-3);
    ASSERT_LE(*trace.rows[i].z_residual, 1e-3);
  }
}

TEST(RunExplicit, RejectsInvalidInputs) {
  const auto s = euclidean(2);
  const Basepoint o{e2(0, 0)};
  EXPECT_THROW(run_explicit(s, kBall3, kProjSegment, default_explicit_schedule(), o, e2(5, 5), {}), DomainError);
  auto frozen = default_explicit_schedule();
  frozen.beta = Sequence::constant(0.0);
  EXPECT_THROW(run_explicit(s, kBall3, kProjSegment, frozen, o, e2(0, 0), {}), DomainError);
  auto no_beta = default_explicit_schedule();
  no_beta.beta.reset();
  EXPECT_THROW(run_explicit(s, kBall3, kProjSegment, no_beta, o, e2(0, 0), {}), DomainError);
  auto fast = default_explicit_schedule();
  fast.alpha = Sequence::power(1, 2, 1);
  try {
    run_explicit(s, kBall3, kProjSegment, fast, o, e2(0, 0), {});
    FAIL() << "expected DomainError";
  } catch (const DomainError& e) {
    EXPECT_NE(std::string(e.what()).find("condition (i)"), std::string::npos) << e.what();
  }
}

TEST(Solvers, TracesAreDeterministic) {
  const auto s = hyperbolic(2);
  const ConvexSetDescriptor c{Ball{origin(s), 3}};
  const auto t = MappingDescriptor::projection({Segment{h2(-1, 0), h2(2, 0.5)}});
  SolverOptions o;
  o.budget = 500;
  o.seed = 99;
  const auto a = run_explicit(s, c, t, default_explicit_schedule(), Basepoint{origin(s)}, h2(0.3, 0.3), o);
  const auto b = run_explicit(s, c, t, default_explicit_schedule(), Basepoint{origin(s)}, h2(0.3, 0.3), o);
  ASSERT_EQ(a.rows.size(), b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    ASSERT_EQ(a.rows[i].x, b.rows[i].x);
    ASSERT_EQ(a.rows[i].fixed_residual, b.rows[i].fixed_residual);
  }
  o.seed = 100;
  const auto c2 = run_explicit(s, c, t, default_explicit_schedule(), Basepoint{origin(s)}, h2(0.3, 0.3), o);
  EXPECT_NE(a.rows[5].x, c2.rows[5].x);
}

TEST(NearestFixedPoint, Examples) {
  const auto s = euclidean(2);
  const Basepoint o{e2(0, 0)};
  std::vector<Point> samples;
  for (int i = 0; i <= 40; ++i) samples.push_back(e2(-2 + 0.1 * i, 1));
  EXPECT_LE(nearest_fixed_point_residual(s, e2(0, 1), o, samples), 1e-15);
  EXPECT_GT(nearest_fixed_point_residual(s, e2(1, 1), o, samples), 0.5);
  EXPECT_LE(nearest_fixed_point_residual(s, e2(0, 1), o, kSegment, 1000, 1), 1e-12);
  EXPECT_EQ(nearest_fixed_point_residual(s, e2(0, 0), o, {WholeSpace{}}, 100, 1), 0.0);
  EXPECT_THROW(nearest_fixed_point_residual(s, e2(0, 1), o, std::vector<Point>{}), DomainError);
}

TEST(PerturbationPoint, HasRequestedNorm) {
  for (const auto& s : {euclidean(3), hyperbolic(2), product_e2_h2()}) {
    RandomStream r(1);
    const Basepoint o{origin(s)};
    for (double n : {0.0, 1e-8, 0.25, 2.0})
      EXPECT_NEAR(norm(s, perturbation_point(s, o, n, r), o), n, 1e-9 * (1 + n));
  }
}
