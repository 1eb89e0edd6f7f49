#include "conegrad/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "conegrad/problem_file.hpp"
#include "conegrad/reference_oracles.hpp"
#include "conegrad/solver.hpp"

namespace conegrad::cli {
namespace fs = std::filesystem;

namespace {

std::string vec_text(const Vec& v) {
  std::string s = "[";
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += format_double(v(i));
  }
  return s + "]";
}

Vec parse_vector(const std::string& text) {
  std::vector<double> vals;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw Error(ErrorCode::InvalidArgument, "cannot parse '" + item + "' as a number");
    }
    if (item.find_first_not_of(" \t", used) != std::string::npos) {
      throw Error(ErrorCode::InvalidArgument, "cannot parse '" + item + "' as a number");
    }
    vals.push_back(v);
  }
  if (vals.empty()) throw Error(ErrorCode::InvalidArgument, "empty vector");
  return Eigen::Map<Vec>(vals.data(), static_cast<Eigen::Index>(vals.size()));
}

/// A path to a problem file, or the name of a built-in problem.
ProblemFile load_problem(const std::string& name_or_path) {
  if (fs::exists(name_or_path)) return read_problem_file(name_or_path);
  for (const auto& e : builtin_registry()) {
    if (e.name == name_or_path) return problem_file_from_registry(e);
  }
  throw Error(ErrorCode::Io, "no problem file or built-in problem named '" + name_or_path + "'");
}

int exit_code_for(SolveStatus s) {
  switch (s) {
    case SolveStatus::Stationary: return kExitOk;
    case SolveStatus::MaxIterations: return kExitMaxIterations;
    case SolveStatus::LineSearchFailure:
    case SolveStatus::OracleBudgetExceeded: return kExitSolverFailure;
  }
  return kExitSolverFailure;
}

nlohmann::json summary_json(const std::string& name, const SolveResult& r) {
  nlohmann::json j;
  j["name"] = name;
  j["status"] = std::string(to_string(r.status));
  j["iterations"] = r.iterations.size();
  j["x_final"] = std::vector<double>(r.x_final.data(), r.x_final.data() + r.x_final.size());
  j["f_final"] = std::vector<double>(r.f_final.data(), r.f_final.data() + r.f_final.size());
  j["stationarity_residual"] = r.stationarity_residual;
  j["fejer_cumsum"] = r.iterations.empty() ? 0.0 : r.iterations.back().fejer_cumsum;
  j["warnings"] = r.warnings;
  if (!r.message.empty()) j["message"] = r.message;
  return j;
}

// Grid used by the quasiconvexity check: the set itself when bounded, else a
// window of half-width 10 around x0.
std::optional<GridSpec> grid_for(const Problem& p) {
  const std::size_t n = p.f.n();
  if (n > 2) return std::nullopt;
  GridSpec g;
  g.points_per_dim = n == 1 ? 1000 : 200;
  const auto width = static_cast<Eigen::Index>(n);
  g.lower = p.x0.array() - 10.0;
  g.upper = p.x0.array() + 10.0;
  if (const auto* b = std::get_if<Box>(&p.set.variant())) {
    for (Eigen::Index i = 0; i < width; ++i) {
      if (std::isfinite(b->lower(i))) g.lower(i) = b->lower(i);
      if (std::isfinite(b->upper(i))) g.upper(i) = b->upper(i);
    }
  } else if (const auto* ball = std::get_if<Ball>(&p.set.variant())) {
    g.lower = ball->center.array() - ball->radius;
    g.upper = ball->center.array() + ball->radius;
  } else if (const auto* s = std::get_if<Simplex>(&p.set.variant())) {
    g.lower = Vec::Zero(width);
    g.upper = Vec::Constant(width, s->scale);
  }
  return g;
}

bool jacobian_agrees(const Mat& symbolic, const Mat& numeric) {
  return ((symbolic - numeric).array().abs() <= 1e-8 + 1e-6 * numeric.array().abs()).all();
}

int cmd_solve(const std::string& file, const std::optional<std::string>& trace, std::optional<double> sigma,
              std::optional<double> beta, const std::optional<std::string>& x0, bool json_summary, std::ostream& out,
              std::ostream& err) {
  const ProblemFile pf = load_problem(file);
  Problem problem = pf.build();
  SolverConfig cfg = pf.config();
  if (sigma) cfg.sigma = *sigma;
  if (beta) cfg.beta_hat = *beta;
  if (x0) problem.x0 = parse_vector(*x0);

  const SolveResult r = solve(problem, cfg);
  for (const auto& w : r.warnings) err << "warning: " << w << '\n';
  if (trace) {
    std::ofstream csv(*trace, std::ios::binary);
    if (!csv) throw Error(ErrorCode::Io, "cannot write trace '" + *trace + "'");
    write_trace_csv(csv, r, problem.f.n(), problem.f.m());
  }
  if (json_summary) {
    out << summary_json(problem.name, r).dump(2) << '\n';
  } else {
    out << "problem:    " << problem.name << '\n'
        << "status:     " << to_string(r.status) << '\n'
        << "iterations: " << r.iterations.size() << '\n'
        << "x_final:    " << vec_text(r.x_final) << '\n'
        << "F(x_final): " << vec_text(r.f_final) << '\n'
        << "residual:   " << format_double(r.stationarity_residual) << '\n';
    if (!r.message.empty()) out << "message:    " << r.message << '\n';
  }
  return exit_code_for(r.status);
}

int cmd_validate(const std::string& file, std::uint64_t seed, int samples, std::ostream& out) {
  const ProblemFile pf = load_problem(file);
  bool all_ok = true;
  auto report = [&](const std::string& name, bool ok, const std::string& detail) {
    out << (ok ? "PASS " : "FAIL ") << name;
    if (!detail.empty()) out << "  (" << detail << ')';
    out << '\n';
    all_ok = all_ok && ok;
  };

  const ConeDiagnostics diag = diagnose_cone(pf.objectives.size(), pf.cone_dual_generators);
  report("cone", !diag.failure, diag.message);
  if (diag.failure) return kExitInputError;

  const Problem p = pf.build();
  const SolverConfig cfg = pf.config();
  const Vec start = p.set.contains(p.x0) ? p.x0 : p.set.project(p.x0);

  // symbolic vs central differences at x0 and at sampled points of C
  {
    std::mt19937_64 rng(seed);
    int checked = 0, failed = 0;
    std::vector<Vec> points{start};
    for (int i = 0; i < 20; ++i) points.push_back(sample_point(p.set, rng));
    for (const auto& x : points) {
      try {
        if (!jacobian_agrees(p.f.jacobian(x), fd_jacobian(p.f, x))) ++failed;
        ++checked;
      } catch (const Error&) {
        // outside the domain of F
      }
    }
    report("jacobian", checked > 0 && failed == 0,
           std::to_string(checked) + " points, " + std::to_string(failed) + " mismatches");
  }

  if (const auto grid = grid_for(p)) {
    for (std::size_t i = 0; i < p.cone.num_generators(); ++i) {
      bool ok = false;
      std::string detail;
      try {
        ok = quasiconvexity_grid_check(p.f, p.cone.generators()[i], *grid);
      } catch (const Error& e) {
        detail = e.what();
      }
      report("quasiconvex <w_" + std::to_string(i) + ", F>", ok, detail);
    }
  } else {
    out << "SKIP quasiconvexity  (n > 2)\n";
  }

  const SolveResult r = solve(p, cfg);
  const bool reached = r.status == SolveStatus::Stationary;
  report("solve", reached, std::string(to_string(r.status)) + ", x_final " + vec_text(r.x_final));
  if (reached) {
    // slope bound implied by |theta| <= eps_stat
    const double slope_tol = 1.01 * std::sqrt(2.0 * cfg.eps_stat) / cfg.beta_hat;
    const bool ok = sampled_stationarity(p.cone, p.f, p.set, r.x_final, samples, seed, slope_tol);
    report("sampled stationarity", ok, std::to_string(samples) + " samples, slope tol " + format_double(slope_tol));
  }
  return all_ok ? kExitOk : kExitInputError;
}

int cmd_check_cone(const std::string& file, std::ostream& out) {
  const ProblemFile pf = load_problem(file);
  const std::size_t dim = pf.cone_dual_generators.empty() ? pf.objectives.size()
                                                          : static_cast<std::size_t>(pf.cone_dual_generators[0].size());
  const ConeDiagnostics d = diagnose_cone(dim, pf.cone_dual_generators);
  out << "dimension:        " << d.dim << '\n' << "generators:       " << d.num_generators << '\n';
  for (std::size_t i = 0; i < d.normalized.size(); ++i) out << "  w_" << i << " = " << vec_text(d.normalized[i]) << '\n';
  out << "rank:             " << d.rank << '\n'
      << "hull distance:    " << format_double(d.hull_distance) << '\n'
      << "objectives:       " << pf.objectives.size() << '\n'
      << "result:           " << d.message << '\n';
  if (d.failure) return kExitInputError;
  if (dim != pf.objectives.size()) {
    out << "generator dimension differs from the number of objectives\n";
    return kExitInputError;
  }
  return kExitOk;
}

struct BatchRow {
  std::string file;
  std::string name;
  std::optional<SolveResult> result;
  std::string error;
  int code = kExitInputError;
};

int cmd_batch(const std::string& dir, unsigned parallel, std::ostream& out, std::ostream& err) {
  if (!fs::is_directory(dir)) throw Error(ErrorCode::Io, "'" + dir + "' is not a directory");
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<BatchRow> rows(files.size());

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < files.size(); i = next++) {
      BatchRow& row = rows[i];
      row.file = files[i].filename().string();
      try {
        const ProblemFile pf = read_problem_file(files[i]);
        row.name = pf.name;
        row.result = solve(pf.build(), pf.config());
        row.code = exit_code_for(row.result->status);
      } catch (const std::exception& e) {
        row.error = e.what();
      }
    }
  };
  const unsigned threads = std::max(1u, std::min<unsigned>(parallel, static_cast<unsigned>(std::max<std::size_t>(files.size(), 1))));
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  int worst = kExitOk;
  out << std::left << std::setw(24) << "file" << std::setw(18) << "name" << std::setw(22) << "status" << std::setw(8)
      << "iters" << std::setw(14) << "residual"
      << "x_final\n";
  for (const auto& row : rows) {
    out << std::setw(24) << row.file << std::setw(18) << row.name;
    if (row.result) {
      char residual[32];
      std::snprintf(residual, sizeof residual, "%.3e", row.result->stationarity_residual);
      out << std::setw(22) << to_string(row.result->status) << std::setw(8) << row.result->iterations.size()
          << std::setw(14) << residual << vec_text(row.result->x_final) << '\n';
    } else {
      out << "error\n";
      err << row.file << ": " << row.error << '\n';
    }
    worst = std::max(worst, row.code);
  }
  out << files.size() << " problems, " << threads << " worker(s)\n";
  return worst;
}

}  // namespace

unsigned default_thread_count() {
  if (const char* env = std::getenv("CONEGRAD_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"conegrad: inexact projected gradient method for vector optimization under a polyhedral cone order"};
  app.require_subcommand(1);

  std::string file;
  std::optional<std::string> trace, x0;
  std::optional<double> sigma, beta;
  bool json_summary = false;
  auto* solve_cmd = app.add_subcommand("solve", "solve a problem file (or a built-in problem by name)");
  solve_cmd->add_option("file", file, "problem file")->required();
  solve_cmd->add_option("--trace", trace, "write the iteration trace as CSV");
  solve_cmd->add_option("--sigma", sigma, "inexactness level sigma in [0, 1)");
  solve_cmd->add_option("--beta", beta, "direction scaling beta > 0");
  solve_cmd->add_option("--x0", x0, "start point, comma separated");
  solve_cmd->add_flag("--json-summary", json_summary, "print the summary as JSON");

  std::uint64_t seed = 1;
  int samples = 10000;
  auto* validate_cmd = app.add_subcommand("validate", "run the reference checks on a problem");
  validate_cmd->add_option("file", file, "problem file")->required();
  validate_cmd->add_option("--seed", seed, "sampling seed");
  validate_cmd->add_option("--samples", samples, "stationarity samples")->check(CLI::PositiveNumber);

  auto* list_cmd = app.add_subcommand("list", "list built-in problems");

  auto* cone_cmd = app.add_subcommand("check-cone", "validate the ordering cone of a problem file");
  cone_cmd->add_option("file", file, "problem file")->required();

  std::string dir;
  unsigned parallel = 0;
  auto* batch_cmd = app.add_subcommand("batch", "solve every *.json problem in a directory");
  batch_cmd->add_option("dir", dir, "directory")->required();
  batch_cmd->add_option("--parallel", parallel, "worker threads")->check(CLI::PositiveNumber);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kExitInputError;
  }

  try {
    if (*solve_cmd) return cmd_solve(file, trace, sigma, beta, x0, json_summary, out, err);
    if (*validate_cmd) return cmd_validate(file, seed, samples, out);
    if (*list_cmd) {
      for (const auto& e : builtin_registry()) {
        out << std::left << std::setw(14) << e.name << e.description << "  [stationary set " << e.stationary_set << "]\n";
      }
      return kExitOk;
    }
    if (*cone_cmd) return cmd_check_cone(file, out);
    if (*batch_cmd) return cmd_batch(dir, parallel ? parallel : default_thread_count(), out, err);
  } catch (const Error& e) {
    std::string what = e.what();
    if (e.code() == ErrorCode::InfeasibleStart) what = "infeasible start (" + what + ")";
    err << "error: " << what << '\n';
    return kExitInputError;
  }
  return kExitInputError;
}

}  // namespace conegrad::cli
