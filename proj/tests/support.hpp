#pragma once

#include <random>

#include "conegrad/cone_order.hpp"

namespace conegrad::testing {

inline Vec random_vec(std::mt19937_64& rng, Eigen::Index n, double scale = 5.0) {
  std::normal_distribution<double> g(0.0, scale);
  Vec v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = g(rng);
  return v;
}

inline Vec vec(std::initializer_list<double> xs) {
  Vec v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

inline ConeOrder example41_cone() { return ConeOrder(2, {vec({1, 0}), vec({1, 1})}); }

}  // namespace conegrad::testing
