#include "conegrad/line_search.hpp"

#include <cmath>

namespace conegrad {
namespace {

void validate(const ArmijoParams& p) {
  if (!(p.delta > 0.0 && p.delta < 1.0)) throw Error(ErrorCode::InvalidConfig, "delta must lie in (0, 1)");
  if (!(p.tau > 1.0) || !std::isfinite(p.tau)) throw Error(ErrorCode::InvalidConfig, "tau must be > 1");
  if (p.max_backtracks < 0) throw Error(ErrorCode::InvalidConfig, "max_backtracks must be >= 0");
  if (!(p.order_tol >= 0.0)) throw Error(ErrorCode::InvalidConfig, "order_tol must be >= 0");
}

}  // namespace

bool armijo_accepts(const ConeOrder& cone, const VectorFunction& f, const Vec& x, const Vec& fx, const Vec& v,
                    const Vec& jv, double t, const ArmijoParams& params) {
  const Vec trial = f.eval(x + t * v);
  return cone.k_leq(trial, fx + params.delta * t * jv, params.order_tol);
}

ArmijoResult armijo(const ConeOrder& cone, const VectorFunction& f, const Vec& x, const Vec& fx, const Vec& v,
                    const Vec& jv, const ArmijoParams& params) {
  validate(params);
  if (v.size() != x.size()) throw Error(ErrorCode::DimensionMismatch, "direction and point differ in size");
  if (static_cast<std::size_t>(jv.size()) != cone.dim() || static_cast<std::size_t>(fx.size()) != cone.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "J v or F(x) does not match the cone dimension");
  }
  ArmijoResult r;
  for (int j = 0; j <= params.max_backtracks; ++j) {
    const double t = std::pow(params.tau, -j);
    Vec x_next = x + t * v;
    Vec f_next;
    try {
      f_next = f.eval(x_next);
    } catch (const Error& e) {
      // a step that leaves the domain of F counts as a rejected trial
      if (e.code() != ErrorCode::EvalDomainError && e.code() != ErrorCode::NonFiniteResult) throw;
      ++r.trial_count;
      continue;
    }
    ++r.trial_count;
    if (cone.k_leq(f_next, fx + params.delta * t * jv, params.order_tol)) {
      r.j = j;
      r.t = t;
      r.x_next = std::move(x_next);
      r.f_next = std::move(f_next);
      return r;
    }
  }
  throw Error(ErrorCode::BacktrackExhausted,
              "no step accepted within " + std::to_string(params.max_backtracks) + " backtracks",
              static_cast<std::size_t>(params.max_backtracks));
}

ArmijoResult armijo(const ConeOrder& cone, const VectorFunction& f, const Vec& x, const Vec& v, const Vec& jv,
                    const ArmijoParams& params) {
  return armijo(cone, f, x, f.eval(x), v, jv, params);
}

}  // namespace conegrad
