#pragma once

#include <cstddef>
#include <string>
#include <variant>

#include "conegrad/cone_order.hpp"

namespace conegrad {

inline constexpr double kFeasibilityTol = 1e-9;

struct WholeSpace {
  std::size_t dim;
};

/// Componentwise bounds; -inf / +inf entries leave a side open.
struct Box {
  Vec lower;
  Vec upper;
};

struct Ball {
  Vec center;
  double radius;
};

/// {x >= 0, sum x = scale}.
struct Simplex {
  std::size_t dim;
  double scale;
};

/// Closed convex constraint set with an exact Euclidean projection.
class FeasibleSet {
 public:
  using Variant = std::variant<WholeSpace, Box, Ball, Simplex>;

  static FeasibleSet whole_space(std::size_t dim);
  static FeasibleSet box(Vec lower, Vec upper);
  static FeasibleSet ball(Vec center, double radius);
  static FeasibleSet simplex(std::size_t dim, double scale = 1.0);

  std::size_t dim() const noexcept;
  const Variant& variant() const noexcept { return set_; }
  std::string kind() const;

  /// Euclidean nearest point of the set to z.
  Vec project(const Vec& z) const;

  /// P_{C - x}(g), computed as project(x + g) - x. Requires x in C.
  Vec project_shifted(const Vec& x, const Vec& g) const;

  bool contains(const Vec& x, double tol = kFeasibilityTol) const;

 private:
  explicit FeasibleSet(Variant v) : set_(std::move(v)) {}
  void check_dim(const Vec& z) const;

  Variant set_;
};

/// Sort-based projection onto {x >= 0, sum x = scale}.
Vec project_onto_simplex(const Vec& z, double scale);

}  // namespace conegrad
