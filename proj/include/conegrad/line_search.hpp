#pragma once

#include "conegrad/cone_order.hpp"
#include "conegrad/vector_function.hpp"

namespace conegrad {

struct ArmijoParams {
  double delta = 0.5;
  double tau = 2.0;
  int max_backtracks = 60;
  double order_tol = 1e-10;
};

struct ArmijoResult {
  int j = 0;
  double t = 1.0;  // tau^-j
  int trial_count = 0;
  Vec x_next;
  Vec f_next;
};

/// Cone-valued Armijo rule: the smallest j in {0, ..., max_backtracks} with
///   F(x + tau^-j v) <=_K F(x) + delta tau^-j jv,
/// where jv = J_F(x) v is computed once by the caller. Throws
/// BacktrackExhausted when no trial step is accepted.
ArmijoResult armijo(const ConeOrder& cone, const VectorFunction& f, const Vec& x, const Vec& fx, const Vec& v,
                    const Vec& jv, const ArmijoParams& params = {});

/// Same, evaluating F(x) itself.
ArmijoResult armijo(const ConeOrder& cone, const VectorFunction& f, const Vec& x, const Vec& v, const Vec& jv,
                    const ArmijoParams& params = {});

/// True when step t satisfies the acceptance inequality.
bool armijo_accepts(const ConeOrder& cone, const VectorFunction& f, const Vec& x, const Vec& fx, const Vec& v,
                    const Vec& jv, double t, const ArmijoParams& params);

}  // namespace conegrad
