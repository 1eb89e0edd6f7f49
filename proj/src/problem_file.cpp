#include "conegrad/problem_file.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>

namespace conegrad {

using nlohmann::json;

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::ProblemFormat, what); }

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field '") + key + "'");
  return j.at(key);
}

Vec to_vec(const json& j, const std::string& what) {
  if (!j.is_array()) bad(what + " must be an array of numbers");
  Vec v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) bad(what + " must contain numbers only");
    v(static_cast<Eigen::Index>(i)) = j[i].get<double>();
  }
  return v;
}

// Box bounds: null marks an infinite side.
Vec to_bounds(const json& j, double open_value, const std::string& what) {
  if (!j.is_array()) bad(what + " must be an array");
  Vec v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (j[i].is_null()) {
      v(static_cast<Eigen::Index>(i)) = open_value;
    } else if (j[i].is_number()) {
      v(static_cast<Eigen::Index>(i)) = j[i].get<double>();
    } else {
      bad(what + " entries must be numbers or null");
    }
  }
  return v;
}

json from_vec(const Vec& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

json from_bounds(const Vec& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::isfinite(v(i))) {
      a.push_back(v(i));
    } else {
      a.push_back(nullptr);
    }
  }
  return a;
}

std::vector<std::string> to_strings(const json& j, const std::string& what) {
  if (!j.is_array() || j.empty()) bad(what + " must be a nonempty array of strings");
  std::vector<std::string> out;
  for (const auto& s : j) {
    if (!s.is_string()) bad(what + " must contain strings only");
    out.push_back(s.get<std::string>());
  }
  return out;
}

FeasibleSet set_from_json(const json& j, std::size_t n) {
  const std::string type = field(j, "type").get<std::string>();
  auto dim_or = [&](std::size_t fallback) {
    return j.contains("dim") ? j.at("dim").get<std::size_t>() : fallback;
  };
  if (type == "whole_space") return FeasibleSet::whole_space(dim_or(n));
  if (type == "box") {
    return FeasibleSet::box(to_bounds(field(j, "lower"), -std::numeric_limits<double>::infinity(), "box.lower"),
                            to_bounds(field(j, "upper"), std::numeric_limits<double>::infinity(), "box.upper"));
  }
  if (type == "ball") return FeasibleSet::ball(to_vec(field(j, "center"), "ball.center"), field(j, "radius").get<double>());
  if (type == "simplex") return FeasibleSet::simplex(dim_or(n), j.value("scale", 1.0));
  bad("unknown feasible_set type '" + type + "'");
}

json set_to_json(const FeasibleSet& set) {
  return std::visit(overloaded{
                        [](const WholeSpace& s) { return json{{"type", "whole_space"}, {"dim", s.dim}}; },
                        [](const Box& b) {
                          return json{{"type", "box"}, {"lower", from_bounds(b.lower)}, {"upper", from_bounds(b.upper)}};
                        },
                        [](const Ball& b) {
                          return json{{"type", "ball"}, {"center", from_vec(b.center)}, {"radius", b.radius}};
                        },
                        [](const Simplex& s) { return json{{"type", "simplex"}, {"dim", s.dim}, {"scale", s.scale}}; },
                    },
                    set.variant());
}

template <class T>
void read_opt(const json& j, const char* key, std::optional<T>& out) {
  if (!j.contains(key)) return;
  if (!j.at(key).is_number()) bad(std::string("params.") + key + " must be a number");
  out = j.at(key).get<T>();
}

template <class T>
void write_opt(json& j, const char* key, const std::optional<T>& v) {
  if (v) j[key] = *v;
}

bool same_set(const FeasibleSet& a, const FeasibleSet& b) {
  if (a.variant().index() != b.variant().index()) return false;
  auto eq = [](const Vec& x, const Vec& y) {
    if (x.size() != y.size()) return false;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      if (!(x(i) == y(i))) return false;
    }
    return true;
  };
  return std::visit(overloaded{
                        [&](const WholeSpace& s) { return s.dim == std::get<WholeSpace>(b.variant()).dim; },
                        [&](const Box& s) {
                          const auto& o = std::get<Box>(b.variant());
                          return eq(s.lower, o.lower) && eq(s.upper, o.upper);
                        },
                        [&](const Ball& s) {
                          const auto& o = std::get<Ball>(b.variant());
                          return eq(s.center, o.center) && s.radius == o.radius;
                        },
                        [&](const Simplex& s) {
                          const auto& o = std::get<Simplex>(b.variant());
                          return s.dim == o.dim && s.scale == o.scale;
                        },
                    },
                    a.variant());
}

}  // namespace

SolverConfig ProblemParams::apply(SolverConfig base) const {
  if (beta_hat) base.beta_hat = *beta_hat;
  if (delta) base.delta = *delta;
  if (tau) base.tau = *tau;
  if (sigma) base.sigma = *sigma;
  if (eps_stat) base.eps_stat = *eps_stat;
  if (max_iter) base.max_iter = *max_iter;
  if (max_backtracks) base.max_backtracks = *max_backtracks;
  if (fw_max_iters) base.fw_max_iters = *fw_max_iters;
  if (fw_gap_tol) base.fw_gap_tol = *fw_gap_tol;
  if (order_tol) base.order_tol = *order_tol;
  return base;
}

Problem ProblemFile::build() const {
  VectorFunction f = VectorFunction::from_expressions(variables, objectives);
  if (cone_dual_generators.empty()) bad("cone_dual_generators must not be empty");
  ConeOrder cone(f.m(), cone_dual_generators);
  if (feasible_set.dim() != f.n()) {
    throw Error(ErrorCode::DimensionMismatch, "feasible_set dimension differs from the number of variables");
  }
  if (static_cast<std::size_t>(x0.size()) != f.n()) {
    throw Error(ErrorCode::DimensionMismatch, "x0 has " + std::to_string(x0.size()) + " entries, expected " +
                                                  std::to_string(f.n()));
  }
  return Problem{name, std::move(f), std::move(cone), feasible_set, x0};
}

bool same_problem(const ProblemFile& a, const ProblemFile& b) {
  if (a.name != b.name || a.variables != b.variables || a.objectives != b.objectives || !(a.params == b.params)) {
    return false;
  }
  if (a.cone_dual_generators.size() != b.cone_dual_generators.size()) return false;
  for (std::size_t i = 0; i < a.cone_dual_generators.size(); ++i) {
    if (a.cone_dual_generators[i].size() != b.cone_dual_generators[i].size() ||
        a.cone_dual_generators[i] != b.cone_dual_generators[i]) {
      return false;
    }
  }
  if (a.x0.size() != b.x0.size() || a.x0 != b.x0) return false;
  return same_set(a.feasible_set, b.feasible_set);
}

ProblemFile problem_from_json(const json& j) {
  try {
    if (!j.is_object()) bad("problem file must hold a JSON object");
    ProblemFile p;
    p.name = j.value("name", std::string("unnamed"));
    p.variables = to_strings(field(j, "variables"), "variables");
    p.objectives = to_strings(field(j, "objectives"), "objectives");
    const json& gens = field(j, "cone_dual_generators");
    if (!gens.is_array()) bad("cone_dual_generators must be an array of vectors");
    for (const auto& g : gens) p.cone_dual_generators.push_back(to_vec(g, "cone_dual_generators entry"));
    p.feasible_set = set_from_json(field(j, "feasible_set"), p.variables.size());
    p.x0 = to_vec(field(j, "x0"), "x0");
    if (j.contains("params")) {
      const json& pj = j.at("params");
      if (!pj.is_object()) bad("params must be an object");
      read_opt(pj, "beta_hat", p.params.beta_hat);
      read_opt(pj, "delta", p.params.delta);
      read_opt(pj, "tau", p.params.tau);
      read_opt(pj, "sigma", p.params.sigma);
      read_opt(pj, "eps_stat", p.params.eps_stat);
      read_opt(pj, "max_iter", p.params.max_iter);
      read_opt(pj, "max_backtracks", p.params.max_backtracks);
      read_opt(pj, "fw_max_iters", p.params.fw_max_iters);
      read_opt(pj, "fw_gap_tol", p.params.fw_gap_tol);
      read_opt(pj, "order_tol", p.params.order_tol);
    }
    return p;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ProblemFormat, e.what());
  }
}

json to_json(const ProblemFile& p) {
  json j;
  j["name"] = p.name;
  j["variables"] = p.variables;
  j["objectives"] = p.objectives;
  j["cone_dual_generators"] = json::array();
  for (const auto& g : p.cone_dual_generators) j["cone_dual_generators"].push_back(from_vec(g));
  j["feasible_set"] = set_to_json(p.feasible_set);
  j["x0"] = from_vec(p.x0);
  json params = json::object();
  write_opt(params, "beta_hat", p.params.beta_hat);
  write_opt(params, "delta", p.params.delta);
  write_opt(params, "tau", p.params.tau);
  write_opt(params, "sigma", p.params.sigma);
  write_opt(params, "eps_stat", p.params.eps_stat);
  write_opt(params, "max_iter", p.params.max_iter);
  write_opt(params, "max_backtracks", p.params.max_backtracks);
  write_opt(params, "fw_max_iters", p.params.fw_max_iters);
  write_opt(params, "fw_gap_tol", p.params.fw_gap_tol);
  write_opt(params, "order_tol", p.params.order_tol);
  if (!params.empty()) j["params"] = params;
  return j;
}

ProblemFile read_problem_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open '" + path.string() + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ProblemFormat, path.string() + ": " + e.what());
  }
  return problem_from_json(j);
}

void write_problem_file(const std::filesystem::path& path, const ProblemFile& p) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::Io, "cannot write '" + path.string() + "'");
  out << to_json(p).dump(2) << '\n';
}

ProblemFile problem_file_from_registry(const RegistryEntry& entry) {
  ProblemFile p;
  p.name = entry.name;
  p.variables = entry.problem.f.variables();
  p.objectives = entry.problem.f.sources();
  p.cone_dual_generators = entry.raw_generators;
  p.feasible_set = entry.problem.set;
  p.x0 = entry.problem.x0;
  return p;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_trace_csv(std::ostream& out, const SolveResult& result, std::size_t n, std::size_t m) {
  out << "k";
  for (std::size_t i = 0; i < n; ++i) out << ",x_" << i;
  for (std::size_t i = 0; i < m; ++i) out << ",F_" << i;
  out << ",h,q,achieved_sigma,j,t,step_norm,fejer_delta,fejer_cumsum\n";
  for (const auto& r : result.iterations) {
    out << r.k;
    for (Eigen::Index i = 0; i < r.x.size(); ++i) out << ',' << format_double(r.x(i));
    for (Eigen::Index i = 0; i < r.fx.size(); ++i) out << ',' << format_double(r.fx(i));
    out << ',' << format_double(r.primal) << ',' << format_double(r.dual) << ',' << format_double(r.achieved_sigma)
        << ',' << r.j << ',' << format_double(r.t) << ',' << format_double(r.step_norm) << ','
        << format_double(r.fejer_increment) << ',' << format_double(r.fejer_cumsum) << '\n';
  }
}

}  // namespace conegrad
