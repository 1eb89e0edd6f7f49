#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "conegrad/cone_order.hpp"
#include "conegrad/expr.hpp"
#include "conegrad/feasible_set.hpp"

namespace conegrad {

/// Objective F : R^n -> R^m with an exact Jacobian.
///
/// Either built from one expression per component (derivatives are taken
/// symbolically once and cached) or from a native evaluator pair. There is
/// no finite-difference fallback.
class VectorFunction {
 public:
  using EvalFn = std::function<Vec(const Vec&)>;
  using JacobianFn = std::function<Mat(const Vec&)>;

  static VectorFunction from_expressions(std::vector<std::string> variables, std::vector<std::string> components);
  static VectorFunction native(std::size_t n, std::size_t m, EvalFn eval, JacobianFn jacobian);

  std::size_t n() const noexcept { return n_; }
  std::size_t m() const noexcept { return m_; }
  bool is_symbolic() const noexcept { return !components_.empty(); }

  const std::vector<std::string>& variables() const noexcept { return variables_; }
  /// Source text of each component (empty for native functions).
  const std::vector<std::string>& sources() const noexcept { return sources_; }
  const std::vector<ExprPtr>& components() const noexcept { return components_; }
  /// d F_i / d x_j, row-major (i * n + j).
  const std::vector<ExprPtr>& derivative_asts() const noexcept { return derivatives_; }

  Vec eval(const Vec& x) const;
  Mat jacobian(const Vec& x) const;

 private:
  VectorFunction() = default;
  void check_input(const Vec& x) const;

  std::size_t n_ = 0;
  std::size_t m_ = 0;
  std::vector<std::string> variables_;
  std::vector<std::string> sources_;
  std::vector<ExprPtr> components_;
  std::vector<ExprPtr> derivatives_;
  EvalFn native_eval_;
  JacobianFn native_jacobian_;
};

/// A complete instance of min_K F(x) s.t. x in C.
struct Problem {
  std::string name;
  VectorFunction f;
  ConeOrder cone;
  FeasibleSet set;
  Vec x0;
};

struct RegistryEntry {
  std::string name;
  std::string description;
  /// Raw (unnormalized) dual generators, as written.
  std::vector<Vec> raw_generators;
  /// Analytic stationary set, human readable.
  std::string stationary_set;
  Problem problem;
};

/// Built-in desk-scale problems: example41, pareto_quad2, scalar_quad.
const std::vector<RegistryEntry>& builtin_registry();
/// Throws NotFound for unknown names.
const RegistryEntry& find_builtin(const std::string& name);

}  // namespace conegrad
