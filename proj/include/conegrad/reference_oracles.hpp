#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "conegrad/cone_order.hpp"
#include "conegrad/feasible_set.hpp"
#include "conegrad/vector_function.hpp"

namespace conegrad {

/// Draws one point of C: uniform on boxes (a finite side paired with an
/// infinite one uses an exponential tail of scale 10), uniform on balls,
/// Dirichlet(1) on simplices and N(0, 100 I) on the whole space.
Vec sample_point(const FeasibleSet& set, std::mt19937_64& rng);

/// One-sided stationarity test: samples c in C and looks for a feasible
/// direction u = (c - x)/|c - x| with J_F(x) u in -int K, i.e.
/// phi(J_F(x) u) < -strict_tol. Returns true when no such sample exists.
///
/// Directions are normalized so strict_tol is a slope; a point whose
/// residual |theta(x)| is at most eps has no feasible unit direction steeper
/// than sqrt(2 eps) / beta.
bool sampled_stationarity(const ConeOrder& cone, const VectorFunction& f, const FeasibleSet& set, const Vec& x,
                          int samples, std::uint64_t seed, double strict_tol = kDefaultStrictTol);

/// Axis-aligned grid for the quasiconvexity check (n <= 2).
struct GridSpec {
  Vec lower;
  Vec upper;
  int points_per_dim = 1000;
  int random_segments = 200;  // n = 2 only
  std::uint64_t seed = 7;
};

/// True when every sampled line through the grid sees a quasiconvex
/// restriction of x -> <d, F(x)>: no sample strictly above both a point
/// before it and a point after it. n = 1 checks the whole interval; n = 2
/// checks grid rows, columns, both diagonal families and random segments.
/// A falsification tool, not a proof.
bool quasiconvexity_grid_check(const VectorFunction& f, const Vec& d, const GridSpec& grid, double rel_tol = 1e-12);

/// True when the sampled values are quasiconvex along their index.
bool is_quasiconvex_sequence(const std::vector<double>& values, double rel_tol = 1e-12);

/// Central differences, column by column.
Mat fd_jacobian(const VectorFunction& f, const Vec& x, double h = 1e-6);

}  // namespace conegrad
