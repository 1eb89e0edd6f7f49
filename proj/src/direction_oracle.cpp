#include "conegrad/direction_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace conegrad {
namespace {

void validate(const DirectionParams& p) {
  if (!(p.beta_hat > 0.0) || !std::isfinite(p.beta_hat)) throw Error(ErrorCode::InvalidConfig, "beta_hat must be > 0");
  if (!(p.sigma >= 0.0 && p.sigma < 1.0)) throw Error(ErrorCode::InvalidConfig, "sigma must lie in [0, 1)");
  if (!(p.eps_stat >= 0.0)) throw Error(ErrorCode::InvalidConfig, "eps_stat must be >= 0");
  if (p.fw_max_iters < 1) throw Error(ErrorCode::InvalidConfig, "fw_max_iters must be >= 1");
  if (!(p.fw_gap_tol >= 0.0)) throw Error(ErrorCode::InvalidConfig, "fw_gap_tol must be >= 0");
}

void check_model(const ConeOrder& cone, const LocalModel& model, const FeasibleSet& set) {
  if (static_cast<std::size_t>(model.jacobian.rows()) != cone.dim() ||
      static_cast<std::size_t>(model.jacobian.cols()) != set.dim() ||
      static_cast<std::size_t>(model.x.size()) != set.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "Jacobian shape does not match cone and feasible set");
  }
}

DirectionCertificate make_certificate(const DualPoint& primal_pt, const DualPoint& dual_pt, int iterations) {
  DirectionCertificate c;
  c.weights = primal_pt.lambda;
  c.omega = primal_pt.omega;
  c.v = primal_pt.v;
  c.jv = primal_pt.jv;
  c.primal = primal_pt.h;
  c.dual = dual_pt.q;
  c.achieved_sigma = c.dual < 0.0 ? 1.0 - c.primal / c.dual : 0.0;
  c.dual_weights = dual_pt.lambda;
  c.fw_iterations = iterations;
  return c;
}

}  // namespace

LocalModel LocalModel::at(const VectorFunction& f, const Vec& x) { return LocalModel{x, f.eval(x), f.jacobian(x)}; }

double h_value(const ConeOrder& cone, const VectorFunction& f, const FeasibleSet& set, const Vec& x, const Vec& v,
               double beta_hat) {
  if (!set.contains(x)) throw Error(ErrorCode::InfeasibleBasePoint, "x is not in C");
  if (!set.contains(x + v)) throw Error(ErrorCode::InfeasibleDirection, "x + v is not in C");
  const Mat jac = f.jacobian(x);
  return beta_hat * cone.phi(jac * v) + 0.5 * v.squaredNorm();
}

DualPoint dual_value(const ConeOrder& cone, const LocalModel& model, const FeasibleSet& set, const Vec& lambda,
                     double beta_hat) {
  check_model(cone, model, set);
  if (static_cast<std::size_t>(lambda.size()) != cone.num_generators()) {
    throw Error(ErrorCode::DimensionMismatch, "weight vector length differs from generator count");
  }
  if ((lambda.array() < -1e-10).any() || std::abs(lambda.sum() - 1.0) > 1e-10) {
    throw Error(ErrorCode::InvalidWeights, "weights are not on the unit simplex");
  }
  DualPoint pt;
  pt.lambda = lambda;
  pt.omega = cone.generator_matrix().transpose() * lambda;
  const Vec g = beta_hat * (model.jacobian.transpose() * pt.omega);
  pt.v = set.project_shifted(model.x, -g);
  pt.jv = model.jacobian * pt.v;
  const double half_sq = 0.5 * pt.v.squaredNorm();
  pt.q = g.dot(pt.v) + half_sq;
  const PhiArgmax top = cone.phi_argmax(pt.jv);
  pt.h = beta_hat * top.value + half_sq;
  pt.vertex = top.index;
  return pt;
}

DualPoint dual_value(const ConeOrder& cone, const VectorFunction& f, const FeasibleSet& set, const Vec& x,
                     const Vec& lambda, double beta_hat) {
  return dual_value(cone, LocalModel::at(f, x), set, lambda, beta_hat);
}

DirectionOutcome solve_direction(const ConeOrder& cone, const LocalModel& model, const FeasibleSet& set,
                                 const DirectionParams& params, const FwObserver& observer) {
  validate(params);
  check_model(cone, model, set);
  const auto p = static_cast<Eigen::Index>(cone.num_generators());
  Vec lambda = Vec::Constant(p, 1.0 / static_cast<double>(p));

  DualPoint best_primal;
  DualPoint best_dual;
  best_primal.h = std::numeric_limits<double>::infinity();
  best_dual.q = -std::numeric_limits<double>::infinity();

  for (int it = 0; it < params.fw_max_iters; ++it) {
    DualPoint pt = dual_value(cone, model, set, lambda, params.beta_hat);
    if (pt.h < best_primal.h) best_primal = pt;
    if (pt.q > best_dual.q) best_dual = pt;
    if (observer) observer(FwStep{it, pt, best_primal.h, best_dual.q});

    const double h = best_primal.h;
    const double q = best_dual.q;
    if (std::max(std::abs(h), std::abs(q)) <= params.eps_stat) {
      return Stationary{h, make_certificate(best_primal, best_dual, it + 1)};
    }
    if (params.sigma > 0.0) {
      if (h <= (1.0 - params.sigma) * q) return Descent{make_certificate(best_primal, best_dual, it + 1)};
    } else if (h < 0.0 && h - q <= params.fw_gap_tol * std::max(1.0, std::abs(q))) {
      return Descent{make_certificate(best_primal, best_dual, it + 1)};
    }

    // the supergradient of q in lambda is beta <w_i, J v>; its best vertex is
    // the phi argmax already computed
    const double gamma = 2.0 / (static_cast<double>(it) + 2.0);
    lambda *= (1.0 - gamma);
    lambda(static_cast<Eigen::Index>(pt.vertex)) += gamma;
  }
  return OracleBudgetExceeded{make_certificate(best_primal, best_dual, params.fw_max_iters)};
}

DirectionOutcome solve_direction(const ConeOrder& cone, const VectorFunction& f, const FeasibleSet& set,
                                 const Vec& x, const DirectionParams& params) {
  if (!set.contains(x)) throw Error(ErrorCode::InfeasibleBasePoint, "x is not in C");
  return solve_direction(cone, LocalModel::at(f, x), set, params);
}

const DirectionCertificate& certificate_of(const DirectionOutcome& outcome) {
  return std::visit(
      [](const auto& o) -> const DirectionCertificate& {
        if constexpr (std::is_same_v<std::decay_t<decltype(o)>, Descent>) {
          return o.certificate;
        } else {
          return o.best;
        }
      },
      outcome);
}

double theta_bruteforce(const ConeOrder& cone, const VectorFunction& f, const FeasibleSet& set, const Vec& x,
                        double beta_hat, int lambda_grid_steps, const VGrid& v_grid) {
  const std::size_t p = cone.num_generators();
  const std::size_t n = set.dim();
  if (p > 3 || n > 2) throw Error(ErrorCode::ScaleTooLarge, "grid oracle supports p <= 3 and n <= 2 only");
  if (lambda_grid_steps < 1 || v_grid.steps < 3) throw Error(ErrorCode::InvalidArgument, "grid too coarse");
  if (!set.contains(x)) throw Error(ErrorCode::InfeasibleBasePoint, "x is not in C");
  const Mat jac = f.jacobian(x);

  auto h_at = [&](const Vec& u) { return beta_hat * cone.phi(jac * u) + 0.5 * u.squaredNorm(); };

  // lower side: max of the dual over a simplex grid
  double max_q = -std::numeric_limits<double>::infinity();
  const double s = static_cast<double>(lambda_grid_steps);
  auto dual_at = [&](const Vec& lambda) {
    const Vec omega = cone.generator_matrix().transpose() * lambda;
    const Vec g = beta_hat * (jac.transpose() * omega);
    const Vec u = set.project(x - g) - x;
    max_q = std::max(max_q, g.dot(u) + 0.5 * u.squaredNorm());
  };
  if (p == 1) {
    dual_at(Vec::Ones(1));
  } else if (p == 2) {
    for (int i = 0; i <= lambda_grid_steps; ++i) {
      Vec l(2);
      l << i / s, 1.0 - i / s;
      dual_at(l);
    }
  } else {
    for (int i = 0; i <= lambda_grid_steps; ++i) {
      for (int j = 0; i + j <= lambda_grid_steps; ++j) {
        Vec l(3);
        l << i / s, j / s, 1.0 - (i + j) / s;
        dual_at(l);
      }
    }
  }

  // upper side: min of h over feasible directions, with zoom refinement
  double best = 0.0;  // v = 0 is always feasible
  Vec best_u = Vec::Zero(static_cast<Eigen::Index>(n));
  const double radius = v_grid.radius.value_or(2.0 * beta_hat * jac.norm());
  if (radius > 0.0) {
    Vec center = Vec::Zero(static_cast<Eigen::Index>(n));
    double half = radius;
    const int steps = v_grid.steps;
    for (int round = 0; round <= v_grid.refine_rounds; ++round) {
      const double spacing = 2.0 * half / (steps - 1);
      auto visit = [&](const Vec& z) {
        const Vec u = set.project(x + z) - x;
        const double val = h_at(u);
        if (val < best) {
          best = val;
          best_u = u;
        }
      };
      if (n == 1) {
        for (int i = 0; i < steps; ++i) visit(Vec::Constant(1, center(0) - half + i * spacing));
      } else {
        for (int i = 0; i < steps; ++i) {
          for (int j = 0; j < steps; ++j) {
            Vec z(2);
            z << center(0) - half + i * spacing, center(1) - half + j * spacing;
            visit(z);
          }
        }
      }
      center = best_u;
      half = 2.0 * spacing;
    }
  }

  if (max_q > best + 1e-9 * std::max(1.0, std::abs(best))) {
    throw Error(ErrorCode::InternalInconsistency,
                "dual grid maximum exceeds primal grid minimum; weak duality violated");
  }
  return best;
}

}  // namespace conegrad
