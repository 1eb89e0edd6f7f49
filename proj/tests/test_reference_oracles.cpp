#include <gtest/gtest.h>

#include <cmath>

#include "conegrad/reference_oracles.hpp"
#include "conegrad/solver.hpp"
#include "support.hpp"

using namespace conegrad;
using conegrad::testing::vec;

namespace {

const Problem& registry(const char* name) { return find_builtin(name).problem; }

GridSpec interval(double lo, double hi) {
  GridSpec g;
  g.lower = vec({lo});
  g.upper = vec({hi});
  return g;
}

}  // namespace

TEST(SampledStationarity, Examples) {
  const auto& ex = registry("example41");
  EXPECT_TRUE(sampled_stationarity(ex.cone, ex.f, ex.set, vec({0}), 10000, 1));
  EXPECT_FALSE(sampled_stationarity(ex.cone, ex.f, ex.set, vec({1}), 10000, 1));
  const auto& pq = registry("pareto_quad2");
  EXPECT_TRUE(sampled_stationarity(pq.cone, pq.f, pq.set, vec({1}), 10000, 1));
  EXPECT_FALSE(sampled_stationarity(pq.cone, pq.f, pq.set, vec({3}), 10000, 1));
}

TEST(SampledStationarity, SolverEndpointsPassAcrossSeeds) {
  for (const auto& e : builtin_registry()) {
    SolverConfig cfg;
    const auto r = solve(e.problem, cfg);
    ASSERT_EQ(r.status, SolveStatus::Stationary) << e.name;
    const double slope = 1.01 * std::sqrt(2.0 * cfg.eps_stat) / cfg.beta_hat;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      EXPECT_TRUE(sampled_stationarity(e.problem.cone, e.problem.f, e.problem.set, r.x_final, 10000, seed, slope))
          << e.name << " seed " << seed;
    }
  }
}

TEST(SamplePoint, StaysInsideEachVariant) {
  std::mt19937_64 rng(1);
  const double inf = std::numeric_limits<double>::infinity();
  for (const auto& c : {FeasibleSet::whole_space(2), FeasibleSet::box(vec({0, -inf}), vec({1, 2})),
                        FeasibleSet::ball(vec({1, 1}), 0.5), FeasibleSet::simplex(3, 2.0)}) {
    for (int i = 0; i < 1000; ++i) EXPECT_TRUE(c.contains(sample_point(c, rng))) << c.kind();
  }
}

TEST(Quasiconvexity, Example41Generators) {
  const auto& ex = registry("example41");
  for (const auto& w : ex.cone.generators()) EXPECT_TRUE(quasiconvexity_grid_check(ex.f, w, interval(-3, 3)));
  EXPECT_FALSE(quasiconvexity_grid_check(ex.f, vec({0, 1}), interval(-3, 3)));
}

TEST(Quasiconvexity, Sequences) {
  EXPECT_TRUE(is_quasiconvex_sequence({3, 2, 1, 1, 2, 5}));
  EXPECT_TRUE(is_quasiconvex_sequence({1, 2, 3}));
  EXPECT_TRUE(is_quasiconvex_sequence({}));
  EXPECT_FALSE(is_quasiconvex_sequence({1, 2, 1}));
  EXPECT_FALSE(is_quasiconvex_sequence({2, 0, 1, 0, 2}));
}

TEST(Quasiconvexity, TwoDimensional) {
  const auto bowl = VectorFunction::from_expressions({"x", "y"}, {"x^2 + y^2"});
  const auto wave = VectorFunction::from_expressions({"x", "y"}, {"sin(3*x) + y^2"});
  GridSpec g;
  g.lower = vec({-2, -2});
  g.upper = vec({2, 2});
  g.points_per_dim = 100;
  EXPECT_TRUE(quasiconvexity_grid_check(bowl, vec({1}), g));
  EXPECT_FALSE(quasiconvexity_grid_check(wave, vec({1}), g));
  const auto f3 = VectorFunction::from_expressions({"x", "y", "z"}, {"x"});
  GridSpec g3;
  g3.lower = vec({0, 0, 0});
  g3.upper = vec({1, 1, 1});
  EXPECT_THROW(quasiconvexity_grid_check(f3, vec({1}), g3), Error);
}

TEST(FdJacobian, Examples) {
  const auto& ex = registry("example41");
  const Mat j = fd_jacobian(ex.f, vec({1}));
  EXPECT_NEAR(j(0, 0), 8.0, 1e-6);
  EXPECT_NEAR(j(1, 0), -4.0, 1e-6);
  const auto c = VectorFunction::from_expressions({"x", "y"}, {"3", "-1"});
  EXPECT_TRUE(fd_jacobian(c, vec({0.2, 5})).isZero(0.0));
  EXPECT_NEAR(fd_jacobian(registry("scalar_quad").f, vec({0}))(0, 0), 0.0, 1e-9);
}
