#include <gtest/gtest.h>

#include <cmath>

#include "conegrad/cone_order.hpp"
#include "support.hpp"

using namespace conegrad;
using conegrad::testing::example41_cone;
using conegrad::testing::random_vec;
using conegrad::testing::vec;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::InternalInconsistency;
}

}  // namespace

TEST(ConeOrder, ParetoKeepsStandardBasis) {
  ConeOrder k(2, {vec({1, 0}), vec({0, 1})});
  ASSERT_EQ(k.num_generators(), 2u);
  EXPECT_EQ(k.generators()[0], vec({1, 0}));
  EXPECT_EQ(k.generators()[1], vec({0, 1}));
}

TEST(ConeOrder, NormalizesGenerators) {
  const ConeOrder k = example41_cone();
  EXPECT_EQ(k.generators()[0], vec({1, 0}));
  EXPECT_NEAR(k.generators()[1](0), 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(k.generators()[1](1), 1.0 / std::sqrt(2.0), 1e-15);
}

TEST(ConeOrder, ConstructionErrors) {
  EXPECT_EQ(code_of([] { ConeOrder(2, {vec({1, 0}), vec({-1, 0})}); }), ErrorCode::DualNotPointed);
  EXPECT_EQ(code_of([] { ConeOrder(2, {}); }), ErrorCode::EmptyGeneratorList);
  EXPECT_EQ(code_of([] { ConeOrder(2, {vec({1, 0}), vec({0, 0})}); }), ErrorCode::ZeroGenerator);
  EXPECT_EQ(code_of([] { ConeOrder(2, {vec({1, 0}), vec({2, 0})}); }), ErrorCode::NotFullDimensionalDual);
  EXPECT_EQ(code_of([] { ConeOrder(2, {vec({1, 0, 0})}); }), ErrorCode::DimensionMismatch);
}

TEST(ConeOrder, ZeroGeneratorReportsIndex) {
  try {
    ConeOrder(2, {vec({1, 0}), vec({0, 1}), vec({0, 0})});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ZeroGenerator);
    ASSERT_TRUE(e.index().has_value());
    EXPECT_EQ(*e.index(), 2u);
  }
}

TEST(ConeOrder, Phi) {
  const auto pareto = ConeOrder::pareto(2);
  EXPECT_DOUBLE_EQ(pareto.phi(vec({-1, -2})), -1.0);
  EXPECT_DOUBLE_EQ(pareto.phi(vec({0, 0})), 0.0);
  EXPECT_DOUBLE_EQ(example41_cone().phi(vec({1, -9.0 / 16})), 1.0);
  EXPECT_THROW(pareto.phi(vec({1, 2, 3})), Error);
}

TEST(ConeOrder, PhiArgmaxTieBreak) {
  const auto pareto = ConeOrder::pareto(2);
  auto r = pareto.phi_argmax(vec({3, 3}));
  EXPECT_EQ(r.value, 3.0);
  EXPECT_EQ(r.index, 0u);
  r = pareto.phi_argmax(vec({3, -5}));
  EXPECT_EQ(r.index, 0u);
  r = pareto.phi_argmax(vec({-5, 3}));
  EXPECT_EQ(r.value, 3.0);
  EXPECT_EQ(r.index, 1u);
}

TEST(ConeOrder, KLeq) {
  const auto pareto = ConeOrder::pareto(2);
  EXPECT_TRUE(pareto.k_leq(vec({1, 1}), vec({2, 3})));
  EXPECT_FALSE(pareto.k_leq(vec({2, 3}), vec({1, 1})));
  EXPECT_TRUE(example41_cone().k_leq(vec({0, 0}), vec({1, -9.0 / 16})));
  const Vec u = vec({0.3, -7.0});
  EXPECT_TRUE(example41_cone().k_leq(u, u));
  EXPECT_TRUE(pareto.k_leq(vec({1, 1}), vec({1 - 1e-11, 1}), 1e-10));
}

TEST(ConeOrder, InMinusIntK) {
  const auto pareto = ConeOrder::pareto(2);
  EXPECT_TRUE(pareto.in_minus_int_k(vec({-1, -1}), 1e-12));
  EXPECT_FALSE(pareto.in_minus_int_k(vec({0, -1}), 1e-12));
  EXPECT_FALSE(pareto.in_minus_int_k(vec({1, -5}), 1e-12));
}

TEST(MinNormInHull, Examples) {
  auto r = min_norm_in_hull({vec({1, 0}), vec({0, 1})});
  EXPECT_NEAR(r.distance, 1.0 / std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(r.weights(0), 0.5, 1e-12);
  EXPECT_NEAR(r.weights(1), 0.5, 1e-12);
  EXPECT_NEAR(min_norm_in_hull({vec({1, 0}), vec({-1, 0})}).distance, 0.0, 1e-14);
  EXPECT_NEAR(min_norm_in_hull({vec({1, 0})}).distance, 1.0, 1e-15);
  EXPECT_EQ(code_of([] { min_norm_in_hull({}); }), ErrorCode::EmptyList);
}

TEST(MinNormInHull, MatchesSegmentClosedForm) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const Vec a = random_vec(rng, 3), b = random_vec(rng, 3);
    const double s = std::clamp(-a.dot(b - a) / (b - a).squaredNorm(), 0.0, 1.0);
    const double expected = (a + s * (b - a)).norm();
    EXPECT_NEAR(min_norm_in_hull({a, b}).distance, expected, 1e-9);
  }
}

TEST(ConeDiagnostics, ReportsWithoutThrowing) {
  const auto ok = diagnose_cone(2, {vec({1, 0}), vec({1, 1})});
  EXPECT_FALSE(ok.failure);
  EXPECT_EQ(ok.rank, 2u);
  const auto bad = diagnose_cone(2, {vec({1, 0}), vec({-1, 0})});
  ASSERT_TRUE(bad.failure);
  EXPECT_EQ(*bad.failure, ErrorCode::DualNotPointed);
}

// Properties over random inputs.

class PhiProperties : public ::testing::TestWithParam<int> {
 protected:
  ConeOrder cone() const {
    switch (GetParam()) {
      case 0: return ConeOrder::pareto(2);
      case 1: return ConeOrder::pareto(3);
      default: return example41_cone();
    }
  }
};

TEST_P(PhiProperties, HomogeneousSubadditiveLipschitz) {
  const ConeOrder k = cone();
  const auto m = static_cast<Eigen::Index>(k.dim());
  std::mt19937_64 rng(100 + GetParam());
  std::uniform_real_distribution<double> scale(0.0, 10.0);
  for (int i = 0; i < 1000; ++i) {
    const Vec y = random_vec(rng, m), z = random_vec(rng, m);
    const double s = scale(rng);
    EXPECT_NEAR(k.phi(s * y), s * k.phi(y), 1e-10 * std::max(1.0, std::abs(s * k.phi(y))));
    EXPECT_LE(k.phi(y + z), k.phi(y) + k.phi(z) + 1e-10);
    EXPECT_LE(std::abs(k.phi(y) - k.phi(z)), (y - z).norm() + 1e-10);
  }
}

TEST_P(PhiProperties, OrderConsistencyAndMembershipDuality) {
  const ConeOrder k = cone();
  const auto m = static_cast<Eigen::Index>(k.dim());
  std::mt19937_64 rng(200 + GetParam());
  for (int i = 0; i < 1000; ++i) {
    const Vec u = random_vec(rng, m), v = random_vec(rng, m);
    if (k.k_leq(u, v)) EXPECT_LE(k.phi(u - v), 0.0);
    if (k.in_minus_int_k(u - v, 0.0)) EXPECT_LT(k.phi(u - v), 0.0);
    EXPECT_EQ(k.k_leq(Vec::Zero(m), u), k.phi(-u) <= 0.0);
  }
}

TEST_P(PhiProperties, PredicatesIgnoreGeneratorScaling) {
  const ConeOrder k = cone();
  std::vector<Vec> scaled;
  std::mt19937_64 rng(300 + GetParam());
  std::uniform_real_distribution<double> s(0.1, 50.0);
  for (const auto& w : k.generators()) scaled.push_back(s(rng) * w);
  const ConeOrder k2(k.dim(), scaled);
  const auto m = static_cast<Eigen::Index>(k.dim());
  for (int i = 0; i < 1000; ++i) {
    const Vec u = random_vec(rng, m), v = random_vec(rng, m);
    EXPECT_EQ(k.k_leq(u, v), k2.k_leq(u, v));
    EXPECT_EQ(k.in_minus_int_k(u - v, 0.0), k2.in_minus_int_k(u - v, 0.0));
  }
}

INSTANTIATE_TEST_SUITE_P(Cones, PhiProperties, ::testing::Values(0, 1, 2));
