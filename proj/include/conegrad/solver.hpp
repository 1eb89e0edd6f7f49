#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "conegrad/direction_oracle.hpp"
#include "conegrad/line_search.hpp"

namespace conegrad {

struct SolverConfig {
  double beta_hat = 1.0;
  double delta = 0.5;
  double tau = 2.0;
  double sigma = 0.1;
  double eps_stat = 1e-8;
  int max_iter = 1000;
  int max_backtracks = 60;
  int fw_max_iters = 200;
  double fw_gap_tol = 1e-10;
  double order_tol = 1e-10;

  /// Throws InvalidConfig on any out-of-range field.
  void validate() const;
  DirectionParams direction() const;
  ArmijoParams armijo() const;
};

/// One accepted step x^k -> x^{k+1} = x^k + t v^k.
struct IterationRecord {
  std::size_t k = 0;
  Vec x;   // x^k
  Vec fx;  // F(x^k)
  Vec v;
  Vec omega;
  double primal = 0.0;
  double dual = 0.0;
  double achieved_sigma = 0.0;
  int j = 0;
  double t = 1.0;
  double step_norm = 0.0;
  /// 2 t beta |<omega, J v>|, the per-step allowance in the quasi-Fejer bound.
  double fejer_increment = 0.0;
  double fejer_cumsum = 0.0;
};

enum class SolveStatus { Stationary, MaxIterations, LineSearchFailure, OracleBudgetExceeded };

std::string_view to_string(SolveStatus status);

struct SolveResult {
  SolveStatus status = SolveStatus::MaxIterations;
  Vec x_final;
  Vec f_final;
  /// |h| at the last direction solve.
  double stationarity_residual = 0.0;
  std::vector<IterationRecord> iterations;
  std::vector<std::string> warnings;
  std::string message;
};

/// Inexact projected gradient method for min_K F(x) s.t. x in C.
///
/// A start point within 1e-6 of C is projected (with a warning); farther
/// away it is rejected with InfeasibleStart. Runs until the direction
/// oracle reports stationarity, cfg.max_iter steps have been taken, the
/// line search fails, or the oracle cannot certify a direction.
SolveResult solve(const VectorFunction& f, const ConeOrder& cone, const FeasibleSet& set, const Vec& x0,
                  const SolverConfig& cfg = {});
SolveResult solve(const Problem& problem, const SolverConfig& cfg = {});

/// |h_best| from an exact-mode direction solve at x; a surrogate for |theta(x)|.
double stationarity_residual(const VectorFunction& f, const ConeOrder& cone, const FeasibleSet& set, const Vec& x,
                             const SolverConfig& cfg = {});

struct FejerReport {
  std::size_t pairs_checked = 0;
  /// max_k ||x^{k+1} - xh||^2 - ||x^k - xh||^2 - delta_k (<= 0 when the bound holds).
  double max_violation = 0.0;
  double increment_sum = 0.0;
  bool passed = true;
};

/// Checks ||x^{k+1} - xh||^2 <= ||x^k - xh||^2 + delta_k + tol over consecutive
/// records. xh must satisfy F(xh) <=_K F(x^k) for every record, otherwise
/// NotInT is thrown with the first offending k.
FejerReport fejer_check(const VectorFunction& f, const ConeOrder& cone, const std::vector<IterationRecord>& trace,
                        const Vec& x_hat, double order_tol = 1e-10, double tol = 1e-9);

}  // namespace conegrad
