#include <gtest/gtest.h>

#include <cmath>

#include "conegrad/direction_oracle.hpp"
#include "support.hpp"

using namespace conegrad;
using conegrad::testing::vec;

namespace {

const Problem& registry(const char* name) { return find_builtin(name).problem; }

DirectionParams exact() {
  DirectionParams p;
  p.sigma = 0.0;
  p.fw_gap_tol = 1e-12;
  p.fw_max_iters = 5000;
  return p;
}

}  // namespace

TEST(HValue, Examples) {
  const auto& pq = registry("pareto_quad2");
  EXPECT_EQ(h_value(pq.cone, pq.f, pq.set, vec({3}), vec({0}), 1.0), 0.0);
  EXPECT_EQ(h_value(pq.cone, pq.f, pq.set, vec({3}), vec({-2}), 1.0), -2.0);
  const auto& sq = registry("scalar_quad");
  EXPECT_EQ(h_value(sq.cone, sq.f, sq.set, vec({1}), vec({-2}), 1.0), -2.0);

  const auto& ex = registry("example41");
  try {
    h_value(ex.cone, ex.f, ex.set, vec({3}), vec({1}), 1.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InfeasibleDirection);
  }
}

TEST(DualValue, Examples) {
  const auto& pq = registry("pareto_quad2");
  auto d = dual_value(pq.cone, pq.f, pq.set, vec({3}), vec({0, 1}), 1.0);
  EXPECT_EQ(d.v, vec({-2}));
  EXPECT_EQ(d.q, -2.0);
  d = dual_value(pq.cone, pq.f, pq.set, vec({3}), vec({1, 0}), 1.0);
  EXPECT_EQ(d.v, vec({-6}));
  EXPECT_EQ(d.q, -18.0);
  d = dual_value(pq.cone, pq.f, pq.set, vec({1}), vec({0.5, 0.5}), 1.0);
  EXPECT_EQ(d.v, vec({0}));
  EXPECT_EQ(d.q, 0.0);
  EXPECT_THROW(dual_value(pq.cone, pq.f, pq.set, vec({3}), vec({0.5, 0.6}), 1.0), Error);
}

TEST(SolveDirection, ParetoQuadExact) {
  const auto& pq = registry("pareto_quad2");
  const auto out = solve_direction(pq.cone, pq.f, pq.set, vec({3}), exact());
  ASSERT_TRUE(std::holds_alternative<Descent>(out));
  const auto& c = certificate_of(out);
  EXPECT_NEAR(c.primal, -2.0, 1e-6);
  EXPECT_NEAR(c.v(0), -2.0, 1e-6);
}

TEST(SolveDirection, ParetoQuadStationary) {
  const auto& pq = registry("pareto_quad2");
  const auto out = solve_direction(pq.cone, pq.f, pq.set, vec({1}), exact());
  ASSERT_TRUE(std::holds_alternative<Stationary>(out));
  EXPECT_LE(std::abs(std::get<Stationary>(out).residual), 1e-8);
}

TEST(SolveDirection, ScalarIsClassicalDirection) {
  const auto& sq = registry("scalar_quad");
  DirectionParams p = exact();
  p.beta_hat = 0.3;
  const auto out = solve_direction(sq.cone, sq.f, sq.set, vec({5}), p);
  ASSERT_TRUE(std::holds_alternative<Descent>(out));
  EXPECT_EQ(certificate_of(out).v, vec({-3}));
}

TEST(SolveDirection, BudgetExceeded) {
  const auto& ex = registry("example41");
  DirectionParams p;
  p.sigma = 0.0;
  p.fw_gap_tol = 0.0;
  p.fw_max_iters = 1;
  const auto out = solve_direction(ex.cone, ex.f, ex.set, vec({0.7}), p);
  EXPECT_TRUE(std::holds_alternative<OracleBudgetExceeded>(out));
}

TEST(ThetaBruteforce, Examples) {
  const auto& pq = registry("pareto_quad2");
  EXPECT_NEAR(theta_bruteforce(pq.cone, pq.f, pq.set, vec({3}), 1.0), -2.0, 1e-6);
  EXPECT_NEAR(theta_bruteforce(pq.cone, pq.f, pq.set, vec({1}), 1.0), 0.0, 1e-6);
  const auto pinned = FeasibleSet::box(vec({2}), vec({2}));
  EXPECT_EQ(theta_bruteforce(pq.cone, pq.f, pinned, vec({2}), 1.0), 0.0);
  const auto k3 = ConeOrder::pareto(4);
  const auto f4 = VectorFunction::from_expressions({"x"}, {"x", "x", "x", "x"});
  EXPECT_THROW(theta_bruteforce(k3, f4, pq.set, vec({0}), 1.0), Error);
}

// Weak duality, theta <= 0, s-compatibility and the monotone tracker, all
// read off the Frank-Wolfe observer.
TEST(SolveDirection, InvariantsAlongTheDualPath) {
  std::mt19937_64 rng(3);
  for (const auto& e : builtin_registry()) {
    const auto& p = e.problem;
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int trial = 0; trial < 20; ++trial) {
      const Vec x = p.set.project(vec({u(rng)}));
      for (double sigma : {0.0, 0.3}) {
        DirectionParams params;
        params.sigma = sigma;
        params.beta_hat = 0.7;
        const auto model = LocalModel::at(p.f, x);
        double last_best_dual = -std::numeric_limits<double>::infinity();
        double last_best_primal = std::numeric_limits<double>::infinity();
        const auto out = solve_direction(p.cone, model, p.set, params, [&](const FwStep& s) {
          const double h = h_value(p.cone, p.f, p.set, x, s.point.v, params.beta_hat);
          EXPECT_LE(s.point.q, h + 1e-9);
          EXPECT_GE(s.best_dual, last_best_dual - 1e-12);
          EXPECT_LE(s.best_primal, last_best_primal + 1e-12);
          last_best_dual = s.best_dual;
          last_best_primal = s.best_primal;
        });
        const auto& c = certificate_of(out);
        EXPECT_LE(c.dual, c.primal + 1e-9);
        if (std::holds_alternative<Descent>(out)) {
          EXPECT_LE(c.primal, 1e-12);
          const Vec g = -params.beta_hat * model.jacobian.transpose() * c.omega;
          EXPECT_LE((p.set.project_shifted(x, g) - c.v).norm(), 1e-10) << e.name;
          if (sigma > 0) EXPECT_LE(c.primal, (1 - sigma) * c.dual + 1e-12);
        }
      }
    }
  }
}

TEST(SolveDirection, ExactModeAgreesWithBruteforce) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (const auto& e : builtin_registry()) {
    const auto& p = e.problem;
    for (int trial = 0; trial < 10; ++trial) {
      const Vec x = p.set.project(vec({u(rng)}));
      DirectionParams params;
      params.sigma = 0.0;
      params.fw_gap_tol = 1e-10;
      params.fw_max_iters = 5000;
      const auto out = solve_direction(p.cone, p.f, p.set, x, params);
      const double theta = theta_bruteforce(p.cone, p.f, p.set, x, params.beta_hat);
      EXPECT_NEAR(certificate_of(out).primal, theta, 1e-4) << e.name << " x=" << x(0);
    }
  }
}
