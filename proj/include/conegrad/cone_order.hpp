#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "conegrad/error.hpp"

namespace conegrad {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

inline constexpr double kRankPivotTol = 1e-10;
inline constexpr double kPointednessTol = 1e-8;
inline constexpr double kDefaultStrictTol = 1e-12;

struct PhiArgmax {
  double value;
  std::size_t index;
};

struct MinNormResult {
  double distance;
  Vec weights;  // on the unit simplex, one entry per input point
  int iterations;
};

/// Minimum-norm point of conv{points}, computed with Wolfe's active-set
/// (corral) method. Stops when the Frank-Wolfe gap ||y||^2 - min_i <y, p_i>
/// drops below gap_tol.
MinNormResult min_norm_in_hull(const std::vector<Vec>& points, int max_iters = 1000,
                               double gap_tol = 1e-14);

/// Ordering cone K = {y : <w_i, y> >= 0 for all i}, stored through unit-norm
/// generators w_i of its dual cone K*.
///
/// Construction rejects generator sets for which K fails to be pointed (the
/// w_i do not span R^m) or has empty interior (0 lies in conv{w_i}).
/// Normalization keeps every predicate unchanged but makes phi 1-Lipschitz.
class ConeOrder {
 public:
  ConeOrder(std::size_t dim, const std::vector<Vec>& raw_generators);

  /// Componentwise order on R^m (standard basis as dual generators).
  static ConeOrder pareto(std::size_t dim);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t num_generators() const noexcept { return generators_.size(); }
  const std::vector<Vec>& generators() const noexcept { return generators_; }
  /// Generators as the rows of a p x m matrix.
  const Mat& generator_matrix() const noexcept { return rows_; }

  /// Support function phi(y) = max_i <w_i, y>.
  double phi(const Vec& y) const;
  /// phi together with the smallest maximizing generator index.
  PhiArgmax phi_argmax(const Vec& y) const;

  /// u <=_K v, i.e. min_i <w_i, v - u> >= -tol.
  bool k_leq(const Vec& u, const Vec& v, double tol = 0.0) const;
  /// y in -int(K), tested as phi(y) < -tol.
  bool in_minus_int_k(const Vec& y, double tol = kDefaultStrictTol) const;

 private:
  void check_dim(const Vec& y) const;

  std::size_t dim_;
  std::vector<Vec> generators_;
  Mat rows_;
};

/// Invariant report used by `check-cone`; never throws on invalid cones.
struct ConeDiagnostics {
  std::size_t dim = 0;
  std::size_t num_generators = 0;
  std::vector<Vec> normalized;
  std::size_t rank = 0;
  double hull_distance = 0.0;
  std::optional<ErrorCode> failure;
  std::string message;
};

ConeDiagnostics diagnose_cone(std::size_t dim, const std::vector<Vec>& raw_generators);

}  // namespace conegrad
