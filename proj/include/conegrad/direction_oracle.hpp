#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <variant>

#include "conegrad/cone_order.hpp"
#include "conegrad/feasible_set.hpp"
#include "conegrad/vector_function.hpp"

namespace conegrad {

struct DirectionParams {
  double beta_hat = 1.0;
  double sigma = 0.1;
  double eps_stat = 1e-8;
  int fw_max_iters = 200;
  double fw_gap_tol = 1e-10;
};

/// x together with F(x) and J_F(x), evaluated once per outer iteration.
struct LocalModel {
  Vec x;
  Vec fx;
  Mat jacobian;

  static LocalModel at(const VectorFunction& f, const Vec& x);
};

/// An s-compatible direction v = P_{C-x}(-beta J^T omega), omega = sum_i
/// weights_i w_i, with the primal value h_x(v) and the best dual bound seen.
///
/// `dual` is the largest q(lambda) encountered during the solve and may come
/// from `dual_weights` rather than `weights`; weak duality gives
/// dual <= theta(x) <= primal either way.
struct DirectionCertificate {
  Vec weights;
  Vec omega;
  Vec v;
  Vec jv;  // J_F(x) v
  double primal = 0.0;
  double dual = 0.0;
  double achieved_sigma = 0.0;
  Vec dual_weights;
  int fw_iterations = 0;
};

struct Descent {
  DirectionCertificate certificate;
};
struct Stationary {
  double residual;  // best primal value found
  DirectionCertificate best;
};
struct OracleBudgetExceeded {
  DirectionCertificate best;
};
using DirectionOutcome = std::variant<Descent, Stationary, OracleBudgetExceeded>;

/// Everything the oracle computes at one dual point lambda.
struct DualPoint {
  Vec lambda;
  Vec omega;
  Vec v;
  Vec jv;
  double q = 0.0;       // beta <J^T omega, v> + |v|^2 / 2
  double h = 0.0;       // beta phi(J v) + |v|^2 / 2
  std::size_t vertex = 0;  // argmax_i <w_i, J v>
};

/// Per-iteration observer for the Frank-Wolfe loop (tests and diagnostics).
struct FwStep {
  int iteration;
  const DualPoint& point;
  double best_primal;
  double best_dual;
};
using FwObserver = std::function<void(const FwStep&)>;

/// h_x(v) = beta phi(J_F(x) v) + |v|^2 / 2. Requires x + v in C.
double h_value(const ConeOrder& cone, const VectorFunction& f, const FeasibleSet& set, const Vec& x,
               const Vec& v, double beta_hat);

/// Dual objective q(lambda) and the s-compatible direction it induces.
DualPoint dual_value(const ConeOrder& cone, const LocalModel& model, const FeasibleSet& set, const Vec& lambda,
                     double beta_hat);
DualPoint dual_value(const ConeOrder& cone, const VectorFunction& f, const FeasibleSet& set, const Vec& x,
                     const Vec& lambda, double beta_hat);

/// Frank-Wolfe on the concave dual over the unit simplex of generator
/// weights, started at the barycenter with step 2/(k+2). Stops on
/// stationarity (max(|h|,|q|) <= eps_stat), on the sigma certificate
/// h <= (1-sigma) q, on the relative gap when sigma = 0, or on budget.
DirectionOutcome solve_direction(const ConeOrder& cone, const LocalModel& model, const FeasibleSet& set,
                                 const DirectionParams& params, const FwObserver& observer = {});
DirectionOutcome solve_direction(const ConeOrder& cone, const VectorFunction& f, const FeasibleSet& set,
                                 const Vec& x, const DirectionParams& params);

/// The certificate carried by any outcome variant.
const DirectionCertificate& certificate_of(const DirectionOutcome& outcome);

struct VGrid {
  int steps = 401;         // points per axis, odd so v = 0 is on the grid
  int refine_rounds = 6;   // zoom passes around the best point
  std::optional<double> radius;  // default 2 beta |J|_F, which bounds |v(x)|
};

/// Grid oracle for theta(x): minimizes h_x over a dense grid of feasible
/// directions (grid points are mapped into C - x by projection) and checks
/// that max q over a lambda grid stays below that minimum.
/// Desk scale only: p <= 3 generators, n <= 2 variables.
double theta_bruteforce(const ConeOrder& cone, const VectorFunction& f, const FeasibleSet& set, const Vec& x,
                        double beta_hat, int lambda_grid_steps = 200, const VGrid& v_grid = {});

}  // namespace conegrad
