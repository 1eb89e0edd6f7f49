#include "conegrad/reference_oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace conegrad {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

Vec gaussian(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vec z(static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < z.size(); ++i) z(i) = normal(rng);
  return z;
}

}  // namespace

Vec sample_point(const FeasibleSet& set, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::exponential_distribution<double> tail(0.1);
  return std::visit(
      overloaded{
          [&](const WholeSpace& s) -> Vec { return 10.0 * gaussian(s.dim, rng); },
          [&](const Box& b) -> Vec {
            Vec c(b.lower.size());
            std::normal_distribution<double> normal(0.0, 10.0);
            for (Eigen::Index i = 0; i < c.size(); ++i) {
              const bool lo = std::isfinite(b.lower(i));
              const bool hi = std::isfinite(b.upper(i));
              if (lo && hi) {
                c(i) = b.lower(i) + unit(rng) * (b.upper(i) - b.lower(i));
              } else if (lo) {
                c(i) = b.lower(i) + tail(rng);
              } else if (hi) {
                c(i) = b.upper(i) - tail(rng);
              } else {
                c(i) = normal(rng);
              }
            }
            return c;
          },
          [&](const Ball& b) -> Vec {
            const auto n = static_cast<std::size_t>(b.center.size());
            Vec dir = gaussian(n, rng);
            while (dir.norm() == 0.0) dir = gaussian(n, rng);
            const double r = b.radius * std::pow(unit(rng), 1.0 / static_cast<double>(n));
            return b.center + (r / dir.norm()) * dir;
          },
          [&](const Simplex& s) -> Vec {
            Vec e(static_cast<Eigen::Index>(s.dim));
            for (Eigen::Index i = 0; i < e.size(); ++i) e(i) = -std::log1p(-unit(rng));
            return s.scale * e / e.sum();
          },
      },
      set.variant());
}

bool sampled_stationarity(const ConeOrder& cone, const VectorFunction& f, const FeasibleSet& set, const Vec& x,
                          int samples, std::uint64_t seed, double strict_tol) {
  if (!set.contains(x)) throw Error(ErrorCode::InfeasibleBasePoint, "x is not in C");
  const Mat jac = f.jacobian(x);
  std::mt19937_64 rng(seed);
  for (int s = 0; s < samples; ++s) {
    const Vec u = sample_point(set, rng) - x;
    const double norm = u.norm();
    if (norm == 0.0) continue;
    if (cone.in_minus_int_k(jac * (u / norm), strict_tol)) return false;
  }
  return true;
}

bool is_quasiconvex_sequence(const std::vector<double>& values, double rel_tol) {
  const std::size_t n = values.size();
  if (n < 3) return true;
  double scale = 1.0;
  for (double v : values) scale = std::max(scale, std::abs(v));
  const double tol = rel_tol * scale;

  std::vector<double> suffix_min(n);
  suffix_min[n - 1] = values[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) suffix_min[i] = std::min(values[i], suffix_min[i + 1]);

  double prefix_min = values[0];
  for (std::size_t j = 1; j + 1 < n; ++j) {
    if (values[j] > prefix_min + tol && values[j] > suffix_min[j + 1] + tol) return false;
    prefix_min = std::min(prefix_min, values[j]);
  }
  return true;
}

bool quasiconvexity_grid_check(const VectorFunction& f, const Vec& d, const GridSpec& grid, double rel_tol) {
  const std::size_t n = f.n();
  if (n > 2) throw Error(ErrorCode::ScaleTooLarge, "quasiconvexity grid check supports n <= 2");
  if (static_cast<std::size_t>(d.size()) != f.m()) throw Error(ErrorCode::DimensionMismatch, "direction d must be in R^m");
  if (static_cast<std::size_t>(grid.lower.size()) != n || static_cast<std::size_t>(grid.upper.size()) != n) {
    throw Error(ErrorCode::DimensionMismatch, "grid bounds must be in R^n");
  }
  if (!grid.lower.allFinite() || !grid.upper.allFinite() || ((grid.upper - grid.lower).array() < 0.0).any()) {
    throw Error(ErrorCode::InvalidArgument, "grid bounds must be finite with lower <= upper");
  }
  const int N = grid.points_per_dim;
  if (N < 3) throw Error(ErrorCode::InvalidArgument, "grid needs at least 3 points per axis");
  if (std::pow(static_cast<double>(N), static_cast<double>(n)) > 4e6) {
    throw Error(ErrorCode::ScaleTooLarge, "grid has more than 4e6 points");
  }

  auto value = [&](const Vec& x) { return d.dot(f.eval(x)); };
  auto coord = [&](Eigen::Index axis, int i) {
    return grid.lower(axis) + (grid.upper(axis) - grid.lower(axis)) * i / (N - 1);
  };

  if (n == 1) {
    std::vector<double> vals(static_cast<std::size_t>(N));
    for (int i = 0; i < N; ++i) vals[static_cast<std::size_t>(i)] = value(Vec::Constant(1, coord(0, i)));
    return is_quasiconvex_sequence(vals, rel_tol);
  }

  std::vector<double> table(static_cast<std::size_t>(N) * static_cast<std::size_t>(N));
  auto at = [&](int i, int j) -> double& { return table[static_cast<std::size_t>(i) * N + static_cast<std::size_t>(j)]; };
  for (int i = 0; i < N; ++i) {
    for (int j = 0; j < N; ++j) {
      Vec x(2);
      x << coord(0, i), coord(1, j);
      at(i, j) = value(x);
    }
  }
  std::vector<double> line;
  line.reserve(static_cast<std::size_t>(N));
  for (int i = 0; i < N; ++i) {
    line.clear();
    for (int j = 0; j < N; ++j) line.push_back(at(i, j));
    if (!is_quasiconvex_sequence(line, rel_tol)) return false;
    line.clear();
    for (int j = 0; j < N; ++j) line.push_back(at(j, i));
    if (!is_quasiconvex_sequence(line, rel_tol)) return false;
  }
  for (int offset = -(N - 1); offset <= N - 1; ++offset) {
    line.clear();
    for (int i = 0; i < N; ++i) {
      const int j = i + offset;
      if (j >= 0 && j < N) line.push_back(at(i, j));
    }
    if (!is_quasiconvex_sequence(line, rel_tol)) return false;
  }
  for (int sum = 0; sum <= 2 * (N - 1); ++sum) {
    line.clear();
    for (int i = 0; i < N; ++i) {
      const int j = sum - i;
      if (j >= 0 && j < N) line.push_back(at(i, j));
    }
    if (!is_quasiconvex_sequence(line, rel_tol)) return false;
  }

  std::mt19937_64 rng(grid.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const Vec width = grid.upper - grid.lower;
  for (int s = 0; s < grid.random_segments; ++s) {
    Vec a(2), b(2);
    a << grid.lower(0) + unit(rng) * width(0), grid.lower(1) + unit(rng) * width(1);
    b << grid.lower(0) + unit(rng) * width(0), grid.lower(1) + unit(rng) * width(1);
    line.clear();
    for (int k = 0; k < 200; ++k) line.push_back(value(a + (b - a) * (k / 199.0)));
    if (!is_quasiconvex_sequence(line, rel_tol)) return false;
  }
  return true;
}

Mat fd_jacobian(const VectorFunction& f, const Vec& x, double h) {
  if (!(h > 0.0)) throw Error(ErrorCode::InvalidArgument, "step h must be positive");
  Mat jac(static_cast<Eigen::Index>(f.m()), static_cast<Eigen::Index>(f.n()));
  for (Eigen::Index j = 0; j < jac.cols(); ++j) {
    Vec plus = x, minus = x;
    plus(j) += h;
    minus(j) -= h;
    jac.col(j) = (f.eval(plus) - f.eval(minus)) / (2.0 * h);
  }
  return jac;
}

}  // namespace conegrad
