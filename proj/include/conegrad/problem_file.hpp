#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "conegrad/solver.hpp"

namespace conegrad {

/// Partial SolverConfig; unset fields keep the defaults.
struct ProblemParams {
  std::optional<double> beta_hat;
  std::optional<double> delta;
  std::optional<double> tau;
  std::optional<double> sigma;
  std::optional<double> eps_stat;
  std::optional<int> max_iter;
  std::optional<int> max_backtracks;
  std::optional<int> fw_max_iters;
  std::optional<double> fw_gap_tol;
  std::optional<double> order_tol;

  SolverConfig apply(SolverConfig base = {}) const;
  bool operator==(const ProblemParams&) const = default;
};

/// On-disk description of a problem (JSON).
///
///   { "name": "...", "variables": ["t"], "objectives": ["4*t^2", ...],
///     "cone_dual_generators": [[1, 0], [1, 1]],
///     "feasible_set": {"type": "box", "lower": [-3], "upper": [3]},
///     "x0": [3], "params": {"sigma": 0.1} }
///
/// feasible_set types: whole_space {dim}, box {lower, upper} with null for
/// an open side, ball {center, radius}, simplex {dim, scale}.
struct ProblemFile {
  std::string name;
  std::vector<std::string> variables;
  std::vector<std::string> objectives;
  std::vector<Vec> cone_dual_generators;
  FeasibleSet feasible_set = FeasibleSet::whole_space(1);
  Vec x0;
  ProblemParams params;

  /// Parses the objectives and validates the cone; throws on any mismatch.
  Problem build() const;
  SolverConfig config(const SolverConfig& base = {}) const { return params.apply(base); }
};

bool same_problem(const ProblemFile& a, const ProblemFile& b);

ProblemFile problem_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ProblemFile& p);

ProblemFile read_problem_file(const std::filesystem::path& path);
void write_problem_file(const std::filesystem::path& path, const ProblemFile& p);

/// File form of a built-in problem.
ProblemFile problem_file_from_registry(const RegistryEntry& entry);

/// CSV trace: k, x_0.., F_0.., h, q, achieved_sigma, j, t, step_norm,
/// fejer_delta, fejer_cumsum. One row per accepted step, 17 significant
/// digits, LF line endings.
void write_trace_csv(std::ostream& out, const SolveResult& result, std::size_t n, std::size_t m);

/// "%.17g" formatting.
std::string format_double(double v);

}  // namespace conegrad
