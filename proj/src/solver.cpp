#include "conegrad/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace conegrad {

void SolverConfig::validate() const {
  auto bad = [](const std::string& what) { throw Error(ErrorCode::InvalidConfig, what); };
  if (!(beta_hat > 0.0) || !std::isfinite(beta_hat)) bad("beta_hat must be > 0");
  if (!(delta > 0.0 && delta < 1.0)) bad("delta must lie in (0, 1)");
  if (!(tau > 1.0) || !std::isfinite(tau)) bad("tau must be > 1");
  if (!(sigma >= 0.0 && sigma < 1.0)) bad("sigma must lie in [0, 1)");
  if (!(eps_stat >= 0.0)) bad("eps_stat must be >= 0");
  if (max_iter < 0) bad("max_iter must be >= 0");
  if (max_backtracks < 0) bad("max_backtracks must be >= 0");
  if (fw_max_iters < 1) bad("fw_max_iters must be >= 1");
  if (!(fw_gap_tol >= 0.0)) bad("fw_gap_tol must be >= 0");
  if (!(order_tol >= 0.0)) bad("order_tol must be >= 0");
}

DirectionParams SolverConfig::direction() const {
  return DirectionParams{beta_hat, sigma, eps_stat, fw_max_iters, fw_gap_tol};
}

ArmijoParams SolverConfig::armijo() const { return ArmijoParams{delta, tau, max_backtracks, order_tol}; }

std::string_view to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::Stationary: return "Stationary";
    case SolveStatus::MaxIterations: return "MaxIterations";
    case SolveStatus::LineSearchFailure: return "LineSearchFailure";
    case SolveStatus::OracleBudgetExceeded: return "OracleBudgetExceeded";
  }
  return "Unknown";
}

SolveResult solve(const VectorFunction& f, const ConeOrder& cone, const FeasibleSet& set, const Vec& x0,
                  const SolverConfig& cfg) {
  cfg.validate();
  if (f.m() != cone.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "F has " + std::to_string(f.m()) + " components but the cone lives in R^" +
                                                  std::to_string(cone.dim()));
  }
  if (f.n() != set.dim() || static_cast<std::size_t>(x0.size()) != f.n()) {
    throw Error(ErrorCode::DimensionMismatch, "F, C and x0 disagree on the number of variables");
  }

  SolveResult result;
  Vec x = x0;
  if (!set.contains(x)) {
    const Vec projected = set.project(x);
    const double gap = (projected - x).norm();
    if (!(gap <= 1e-6)) {
      std::ostringstream msg;
      msg << "infeasible start: x0 is at distance " << gap << " from C";
      throw Error(ErrorCode::InfeasibleStart, msg.str());
    }
    std::ostringstream msg;
    msg << "x0 violated C by " << gap << "; projected onto C";
    result.warnings.push_back(msg.str());
    x = projected;
  }

  const DirectionParams dparams = cfg.direction();
  const ArmijoParams aparams = cfg.armijo();
  double cumsum = 0.0;
  LocalModel model = LocalModel::at(f, x);

  auto finish = [&](SolveStatus status, double residual) {
    result.status = status;
    result.x_final = model.x;
    result.f_final = model.fx;
    result.stationarity_residual = residual;
    return result;
  };

  double last_residual = 0.0;
  for (int k = 0; k < cfg.max_iter; ++k) {
    const DirectionOutcome outcome = solve_direction(cone, model, set, dparams);
    if (const auto* s = std::get_if<Stationary>(&outcome)) {
      return finish(SolveStatus::Stationary, std::abs(s->residual));
    }
    if (const auto* b = std::get_if<OracleBudgetExceeded>(&outcome)) {
      result.message = "direction oracle could not certify a sigma-approximate direction";
      return finish(SolveStatus::OracleBudgetExceeded, std::abs(b->best.primal));
    }
    const DirectionCertificate& cert = std::get<Descent>(outcome).certificate;
    last_residual = std::abs(cert.primal);

    ArmijoResult step;
    try {
      step = armijo(cone, f, model.x, model.fx, cert.v, cert.jv, aparams);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::BacktrackExhausted) throw;
      result.message = e.what();
      return finish(SolveStatus::LineSearchFailure, last_residual);
    }

    IterationRecord rec;
    rec.k = static_cast<std::size_t>(k);
    rec.x = model.x;
    rec.fx = model.fx;
    rec.v = cert.v;
    rec.omega = cert.omega;
    rec.primal = cert.primal;
    rec.dual = cert.dual;
    rec.achieved_sigma = cert.achieved_sigma;
    rec.j = step.j;
    rec.t = step.t;
    rec.step_norm = (step.x_next - model.x).norm();
    rec.fejer_increment = 2.0 * step.t * cfg.beta_hat * std::abs(cert.omega.dot(cert.jv));
    cumsum += rec.fejer_increment;
    rec.fejer_cumsum = cumsum;
    result.iterations.push_back(std::move(rec));

    model.x = std::move(step.x_next);
    model.fx = std::move(step.f_next);
    model.jacobian = f.jacobian(model.x);
  }
  return finish(SolveStatus::MaxIterations, last_residual);
}

SolveResult solve(const Problem& problem, const SolverConfig& cfg) {
  return solve(problem.f, problem.cone, problem.set, problem.x0, cfg);
}

double stationarity_residual(const VectorFunction& f, const ConeOrder& cone, const FeasibleSet& set, const Vec& x,
                             const SolverConfig& cfg) {
  cfg.validate();
  DirectionParams exact = cfg.direction();
  exact.sigma = 0.0;
  exact.fw_gap_tol = std::min(cfg.fw_gap_tol, 1e-12);
  exact.fw_max_iters = std::max(cfg.fw_max_iters, 2000);
  const DirectionOutcome outcome = solve_direction(cone, f, set, x, exact);
  if (const auto* s = std::get_if<Stationary>(&outcome)) return std::abs(s->residual);
  return std::abs(certificate_of(outcome).primal);
}

FejerReport fejer_check(const VectorFunction& f, const ConeOrder& cone, const std::vector<IterationRecord>& trace,
                        const Vec& x_hat, double order_tol, double tol) {
  FejerReport report;
  if (trace.empty()) return report;
  const Vec f_hat = f.eval(x_hat);
  for (const auto& rec : trace) {
    if (!cone.k_leq(f_hat, rec.fx, order_tol)) {
      throw Error(ErrorCode::NotInT, "F(x_hat) is not K-below F(x^" + std::to_string(rec.k) + ")", rec.k);
    }
  }
  report.max_violation = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < trace.size(); ++i) {
    const double before = (trace[i].x - x_hat).squaredNorm();
    const double after = (trace[i + 1].x - x_hat).squaredNorm();
    report.max_violation = std::max(report.max_violation, after - before - trace[i].fejer_increment);
    report.increment_sum += trace[i].fejer_increment;
    ++report.pairs_checked;
  }
  if (report.pairs_checked == 0) report.max_violation = 0.0;
  report.passed = report.max_violation <= tol;
  return report;
}

}  // namespace conegrad
