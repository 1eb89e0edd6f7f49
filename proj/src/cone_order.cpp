#include "conegrad/cone_order.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace conegrad {
namespace {

// Minimizer of ||P a|| over the affine hull {a : sum a = 1} of the columns of P.
Vec affine_minimizer(const Mat& cols) {
  const Eigen::Index s = cols.cols();
  Mat kkt = Mat::Zero(s + 1, s + 1);
  kkt.topLeftCorner(s, s) = cols.transpose() * cols;
  kkt.block(0, s, s, 1).setOnes();
  kkt.block(s, 0, 1, s).setOnes();
  Vec rhs = Vec::Zero(s + 1);
  rhs(s) = 1.0;
  Vec sol = kkt.completeOrthogonalDecomposition().solve(rhs);
  return sol.head(s);
}

std::vector<Vec> normalize_generators(std::size_t dim, const std::vector<Vec>& raw) {
  if (raw.empty()) throw Error(ErrorCode::EmptyGeneratorList, "no dual generators given");
  std::vector<Vec> out;
  out.reserve(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    const Vec& g = raw[i];
    if (static_cast<std::size_t>(g.size()) != dim) {
      std::ostringstream msg;
      msg << "generator " << i << " has dimension " << g.size() << ", expected " << dim;
      throw Error(ErrorCode::DimensionMismatch, msg.str(), i);
    }
    if (!g.allFinite()) {
      throw Error(ErrorCode::InvalidArgument, "generator " + std::to_string(i) + " is not finite", i);
    }
    const double norm = g.norm();
    if (norm == 0.0) {
      throw Error(ErrorCode::ZeroGenerator, "generator " + std::to_string(i) + " is zero", i);
    }
    out.push_back(g / norm);
  }
  return out;
}

std::size_t generator_rank(const std::vector<Vec>& gens, std::size_t dim) {
  Mat rows(static_cast<Eigen::Index>(gens.size()), static_cast<Eigen::Index>(dim));
  for (std::size_t i = 0; i < gens.size(); ++i) rows.row(static_cast<Eigen::Index>(i)) = gens[i].transpose();
  Eigen::FullPivLU<Mat> lu(rows);
  lu.setThreshold(kRankPivotTol);
  return static_cast<std::size_t>(lu.rank());
}

}  // namespace

MinNormResult min_norm_in_hull(const std::vector<Vec>& points, int max_iters, double gap_tol) {
  if (points.empty()) throw Error(ErrorCode::EmptyList, "min_norm_in_hull needs at least one point");
  const Eigen::Index m = points.front().size();
  for (const auto& p : points) {
    if (p.size() != m) throw Error(ErrorCode::DimensionMismatch, "points of different dimension");
  }
  const std::size_t count = points.size();

  std::size_t start = 0;
  for (std::size_t i = 1; i < count; ++i) {
    if (points[i].squaredNorm() < points[start].squaredNorm()) start = i;
  }
  std::vector<std::size_t> corral{start};
  std::vector<double> lambda{1.0};
  Vec x = points[start];

  auto recompute = [&] {
    x.setZero(m);
    for (std::size_t k = 0; k < corral.size(); ++k) x += lambda[k] * points[corral[k]];
  };

  int iter = 0;
  for (; iter < max_iters; ++iter) {
    std::size_t best = 0;
    double best_dot = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < count; ++i) {
      const double d = x.dot(points[i]);
      if (d < best_dot) {
        best_dot = d;
        best = i;
      }
    }
    if (x.squaredNorm() - best_dot <= gap_tol) break;
    if (std::find(corral.begin(), corral.end(), best) != corral.end()) break;
    corral.push_back(best);
    lambda.push_back(0.0);

    // minor cycle: move toward the affine minimizer of the corral, dropping
    // points whose weight hits zero
    for (;;) {
      Mat cols(m, static_cast<Eigen::Index>(corral.size()));
      for (std::size_t k = 0; k < corral.size(); ++k) cols.col(static_cast<Eigen::Index>(k)) = points[corral[k]];
      const Vec alpha = affine_minimizer(cols);
      if ((alpha.array() > 1e-15).all()) {
        for (std::size_t k = 0; k < corral.size(); ++k) lambda[k] = alpha(static_cast<Eigen::Index>(k));
        recompute();
        break;
      }
      double theta = 1.0;
      for (std::size_t k = 0; k < corral.size(); ++k) {
        const double a = alpha(static_cast<Eigen::Index>(k));
        if (a <= 1e-15 && lambda[k] - a > 0.0) theta = std::min(theta, lambda[k] / (lambda[k] - a));
      }
      for (std::size_t k = 0; k < corral.size(); ++k) {
        lambda[k] += theta * (alpha(static_cast<Eigen::Index>(k)) - lambda[k]);
      }
      std::vector<std::size_t> kept;
      std::vector<double> kept_lambda;
      for (std::size_t k = 0; k < corral.size(); ++k) {
        if (lambda[k] > 1e-15) {
          kept.push_back(corral[k]);
          kept_lambda.push_back(lambda[k]);
        }
      }
      if (kept.empty()) {
        // degenerate solve; keep the newest point alone
        kept.push_back(corral.back());
        kept_lambda.push_back(1.0);
      }
      const double total = std::accumulate(kept_lambda.begin(), kept_lambda.end(), 0.0);
      for (auto& l : kept_lambda) l /= total;
      corral = std::move(kept);
      lambda = std::move(kept_lambda);
      recompute();
      if (corral.size() == 1) break;
    }
  }

  MinNormResult out{x.norm(), Vec::Zero(static_cast<Eigen::Index>(count)), iter};
  for (std::size_t k = 0; k < corral.size(); ++k) out.weights(static_cast<Eigen::Index>(corral[k])) += lambda[k];
  return out;
}

ConeOrder::ConeOrder(std::size_t dim, const std::vector<Vec>& raw_generators) : dim_(dim) {
  if (dim == 0) throw Error(ErrorCode::InvalidArgument, "cone dimension must be positive");
  generators_ = normalize_generators(dim, raw_generators);

  // pointedness of K* first: an antipodal pair is reported as DualNotPointed
  // even though it also loses rank
  const MinNormResult hull = min_norm_in_hull(generators_);
  if (hull.distance <= kPointednessTol) {
    throw Error(ErrorCode::DualNotPointed,
                "0 lies in the convex hull of the dual generators; int(K) is empty");
  }
  if (generator_rank(generators_, dim) < dim) {
    throw Error(ErrorCode::NotFullDimensionalDual,
                "dual generators do not span R^" + std::to_string(dim) + "; K is not pointed");
  }

  rows_.resize(static_cast<Eigen::Index>(generators_.size()), static_cast<Eigen::Index>(dim));
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    rows_.row(static_cast<Eigen::Index>(i)) = generators_[i].transpose();
  }
}

ConeOrder ConeOrder::pareto(std::size_t dim) {
  std::vector<Vec> gens;
  for (std::size_t i = 0; i < dim; ++i) gens.push_back(Vec::Unit(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(i)));
  return ConeOrder(dim, gens);
}

void ConeOrder::check_dim(const Vec& y) const {
  if (static_cast<std::size_t>(y.size()) != dim_) {
    throw Error(ErrorCode::DimensionMismatch,
                "vector of dimension " + std::to_string(y.size()) + " for cone in R^" + std::to_string(dim_));
  }
}

double ConeOrder::phi(const Vec& y) const { return phi_argmax(y).value; }

PhiArgmax ConeOrder::phi_argmax(const Vec& y) const {
  check_dim(y);
  PhiArgmax best{generators_[0].dot(y), 0};
  for (std::size_t i = 1; i < generators_.size(); ++i) {
    const double v = generators_[i].dot(y);
    if (v > best.value) best = {v, i};
  }
  return best;
}

bool ConeOrder::k_leq(const Vec& u, const Vec& v, double tol) const {
  check_dim(u);
  check_dim(v);
  const Vec diff = v - u;
  for (const auto& g : generators_) {
    if (g.dot(diff) < -tol) return false;
  }
  return true;
}

bool ConeOrder::in_minus_int_k(const Vec& y, double tol) const { return phi(y) < -tol; }

ConeDiagnostics diagnose_cone(std::size_t dim, const std::vector<Vec>& raw_generators) {
  ConeDiagnostics d;
  d.dim = dim;
  d.num_generators = raw_generators.size();
  try {
    d.normalized = normalize_generators(dim, raw_generators);
    d.rank = generator_rank(d.normalized, dim);
    d.hull_distance = min_norm_in_hull(d.normalized).distance;
    ConeOrder cone(dim, raw_generators);
    d.message = "ok";
  } catch (const Error& e) {
    d.failure = e.code();
    d.message = e.what();
  }
  return d;
}

}  // namespace conegrad
