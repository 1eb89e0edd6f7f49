#include "conegrad/vector_function.hpp"

#include <cmath>
#include <limits>

namespace conegrad {

VectorFunction VectorFunction::from_expressions(std::vector<std::string> variables,
                                                std::vector<std::string> components) {
  if (variables.empty()) throw Error(ErrorCode::InvalidArgument, "at least one variable is required");
  if (components.empty()) throw Error(ErrorCode::InvalidArgument, "at least one objective is required");
  for (std::size_t i = 0; i < variables.size(); ++i) {
    for (std::size_t j = i + 1; j < variables.size(); ++j) {
      if (variables[i] == variables[j]) {
        throw Error(ErrorCode::InvalidArgument, "duplicate variable name '" + variables[i] + "'");
      }
    }
  }
  VectorFunction f;
  f.n_ = variables.size();
  f.m_ = components.size();
  f.variables_ = std::move(variables);
  f.sources_ = std::move(components);
  for (const auto& text : f.sources_) f.components_.push_back(parse_expr(text, f.variables_));
  f.derivatives_.reserve(f.m_ * f.n_);
  for (const auto& c : f.components_) {
    for (std::size_t j = 0; j < f.n_; ++j) f.derivatives_.push_back(differentiate(c, j));
  }
  return f;
}

VectorFunction VectorFunction::native(std::size_t n, std::size_t m, EvalFn eval, JacobianFn jacobian) {
  if (n == 0 || m == 0) throw Error(ErrorCode::InvalidArgument, "native function needs n, m > 0");
  if (!eval || !jacobian) throw Error(ErrorCode::InvalidArgument, "native function needs both evaluator and Jacobian");
  VectorFunction f;
  f.n_ = n;
  f.m_ = m;
  for (std::size_t j = 0; j < n; ++j) f.variables_.push_back("x" + std::to_string(j));
  f.native_eval_ = std::move(eval);
  f.native_jacobian_ = std::move(jacobian);
  return f;
}

void VectorFunction::check_input(const Vec& x) const {
  if (static_cast<std::size_t>(x.size()) != n_) {
    throw Error(ErrorCode::DimensionMismatch,
                "input of dimension " + std::to_string(x.size()) + ", function expects " + std::to_string(n_));
  }
  if (!x.allFinite()) throw Error(ErrorCode::NonFiniteResult, "non-finite input");
}

Vec VectorFunction::eval(const Vec& x) const {
  check_input(x);
  Vec out;
  if (is_symbolic()) {
    out.resize(static_cast<Eigen::Index>(m_));
    const std::span<const double> xs(x.data(), n_);
    for (std::size_t i = 0; i < m_; ++i) out(static_cast<Eigen::Index>(i)) = evaluate(*components_[i], xs);
  } else {
    out = native_eval_(x);
    if (static_cast<std::size_t>(out.size()) != m_) throw Error(ErrorCode::DimensionMismatch, "native evaluator returned wrong size");
  }
  if (!out.allFinite()) throw Error(ErrorCode::NonFiniteResult, "F(x) is not finite");
  return out;
}

Mat VectorFunction::jacobian(const Vec& x) const {
  check_input(x);
  Mat jac;
  if (is_symbolic()) {
    jac.resize(static_cast<Eigen::Index>(m_), static_cast<Eigen::Index>(n_));
    const std::span<const double> xs(x.data(), n_);
    for (std::size_t i = 0; i < m_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) {
        jac(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = evaluate(*derivatives_[i * n_ + j], xs);
      }
    }
  } else {
    jac = native_jacobian_(x);
    if (static_cast<std::size_t>(jac.rows()) != m_ || static_cast<std::size_t>(jac.cols()) != n_) {
      throw Error(ErrorCode::DimensionMismatch, "native Jacobian has wrong shape");
    }
  }
  if (!jac.allFinite()) throw Error(ErrorCode::NonFiniteResult, "J_F(x) is not finite");
  return jac;
}

namespace {

Vec vec(std::initializer_list<double> v) {
  Vec out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double d : v) out(i++) = d;
  return out;
}

RegistryEntry make_entry(std::string name, std::string description, std::string stationary,
                         std::vector<std::string> vars, std::vector<std::string> objectives,
                         std::vector<Vec> gens, FeasibleSet set, Vec x0) {
  VectorFunction f = VectorFunction::from_expressions(std::move(vars), std::move(objectives));
  ConeOrder cone(f.m(), gens);
  Problem p{name, std::move(f), std::move(cone), std::move(set), std::move(x0)};
  return RegistryEntry{std::move(name), std::move(description), std::move(gens), std::move(stationary), std::move(p)};
}

std::vector<RegistryEntry> build_registry() {
  std::vector<RegistryEntry> r;
  r.push_back(make_entry(
      "example41",
      "F(t) = (4t^2, t^4 - 4t^2 + 2), dual generators {(1,0),(1,1)}, C = [-3,3]; "
      "K-quasiconvex but not K-convex",
      "{0}", {"t"}, {"4*t^2", "t^4 - 4*t^2 + 2"}, {vec({1, 0}), vec({1, 1})},
      FeasibleSet::box(vec({-3}), vec({3})), vec({3})));
  r.push_back(make_entry("pareto_quad2", "F(x) = (x^2, (x-2)^2) under the Pareto order on R^2, C = R",
                         "[0, 2]", {"x"}, {"x^2", "(x - 2)^2"}, {vec({1, 0}), vec({0, 1})},
                         FeasibleSet::whole_space(1), vec({3})));
  r.push_back(make_entry("scalar_quad", "F(x) = x^2 with the order of R (m = 1), C = R", "{0}", {"x"},
                         {"x^2"}, {vec({1})}, FeasibleSet::whole_space(1), vec({1})));
  return r;
}

}  // namespace

const std::vector<RegistryEntry>& builtin_registry() {
  static const std::vector<RegistryEntry> registry = build_registry();
  return registry;
}

const RegistryEntry& find_builtin(const std::string& name) {
  for (const auto& e : builtin_registry()) {
    if (e.name == name) return e;
  }
  throw Error(ErrorCode::NotFound, "no built-in problem named '" + name + "'");
}

}  // namespace conegrad
