#include "conegrad/feasible_set.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

namespace conegrad {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

Vec project_onto_simplex(const Vec& z, double scale) {
  const Eigen::Index n = z.size();
  std::vector<double> sorted(z.data(), z.data() + n);
  std::sort(sorted.begin(), sorted.end(), std::greater<>());

  // largest k with sorted[k-1] - (prefix_k - scale) / k > 0
  double prefix = 0.0;
  double threshold = 0.0;
  for (Eigen::Index k = 0; k < n; ++k) {
    prefix += sorted[static_cast<std::size_t>(k)];
    const double t = (prefix - scale) / static_cast<double>(k + 1);
    if (sorted[static_cast<std::size_t>(k)] - t > 0.0) threshold = t;
  }
  return (z.array() - threshold).max(0.0).matrix();
}

FeasibleSet FeasibleSet::whole_space(std::size_t dim) {
  if (dim == 0) throw Error(ErrorCode::InvalidSet, "dimension must be positive");
  return FeasibleSet(WholeSpace{dim});
}

FeasibleSet FeasibleSet::box(Vec lower, Vec upper) {
  if (lower.size() == 0 || lower.size() != upper.size()) {
    throw Error(ErrorCode::InvalidSet, "box bounds must be nonempty and of equal length");
  }
  for (Eigen::Index i = 0; i < lower.size(); ++i) {
    if (std::isnan(lower(i)) || std::isnan(upper(i)) || lower(i) > upper(i) ||
        lower(i) == std::numeric_limits<double>::infinity() ||
        upper(i) == -std::numeric_limits<double>::infinity()) {
      throw Error(ErrorCode::InvalidSet, "box bounds violate lower <= upper at index " + std::to_string(i),
                  static_cast<std::size_t>(i));
    }
  }
  return FeasibleSet(Box{std::move(lower), std::move(upper)});
}

FeasibleSet FeasibleSet::ball(Vec center, double radius) {
  if (center.size() == 0 || !center.allFinite()) throw Error(ErrorCode::InvalidSet, "ball center must be finite");
  if (!(radius > 0.0) || !std::isfinite(radius)) throw Error(ErrorCode::InvalidSet, "ball radius must be positive");
  return FeasibleSet(Ball{std::move(center), radius});
}

FeasibleSet FeasibleSet::simplex(std::size_t dim, double scale) {
  if (dim == 0) throw Error(ErrorCode::InvalidSet, "dimension must be positive");
  if (!(scale > 0.0) || !std::isfinite(scale)) throw Error(ErrorCode::InvalidSet, "simplex scale must be positive");
  return FeasibleSet(Simplex{dim, scale});
}

std::size_t FeasibleSet::dim() const noexcept {
  return std::visit(overloaded{
                        [](const WholeSpace& s) { return s.dim; },
                        [](const Box& s) { return static_cast<std::size_t>(s.lower.size()); },
                        [](const Ball& s) { return static_cast<std::size_t>(s.center.size()); },
                        [](const Simplex& s) { return s.dim; },
                    },
                    set_);
}

std::string FeasibleSet::kind() const {
  return std::visit(overloaded{
                        [](const WholeSpace&) { return std::string("whole_space"); },
                        [](const Box&) { return std::string("box"); },
                        [](const Ball&) { return std::string("ball"); },
                        [](const Simplex&) { return std::string("simplex"); },
                    },
                    set_);
}

void FeasibleSet::check_dim(const Vec& z) const {
  if (static_cast<std::size_t>(z.size()) != dim()) {
    throw Error(ErrorCode::DimensionMismatch,
                "vector of dimension " + std::to_string(z.size()) + " for set in R^" + std::to_string(dim()));
  }
}

Vec FeasibleSet::project(const Vec& z) const {
  check_dim(z);
  return std::visit(overloaded{
                        [&](const WholeSpace&) -> Vec { return z; },
                        [&](const Box& b) -> Vec { return z.cwiseMax(b.lower).cwiseMin(b.upper); },
                        [&](const Ball& b) -> Vec {
                          const Vec d = z - b.center;
                          const double r = d.norm();
                          if (r <= b.radius) return z;
                          return b.center + (b.radius / r) * d;
                        },
                        [&](const Simplex& s) -> Vec { return project_onto_simplex(z, s.scale); },
                    },
                    set_);
}

Vec FeasibleSet::project_shifted(const Vec& x, const Vec& g) const {
  check_dim(x);
  check_dim(g);
  if (!contains(x)) throw Error(ErrorCode::InfeasibleBasePoint, "base point of shifted projection is not in C");
  return project(x + g) - x;
}

bool FeasibleSet::contains(const Vec& x, double tol) const {
  check_dim(x);
  if (!x.allFinite()) return false;
  return std::visit(overloaded{
                        [&](const WholeSpace&) { return true; },
                        [&](const Box& b) {
                          return ((x - b.lower).array() >= -tol).all() && ((b.upper - x).array() >= -tol).all();
                        },
                        [&](const Ball& b) { return (x - b.center).norm() <= b.radius + tol; },
                        [&](const Simplex& s) {
                          return (x.array() >= -tol).all() && std::abs(x.sum() - s.scale) <= tol;
                        },
                    },
                    set_);
}

}  // namespace conegrad
