#pragma once

// Numerical range W(A) = {x* A x : ||x|| = 1}: support points, boundary
// sampling and origin exclusion.

#include "phaserank/types.hpp"

#include <span>
#include <vector>

namespace phaserank {

struct BoundaryPointSet {
  std::vector<cplx> points;
  std::vector<double> thetas;  ///< support angle of each point
};

/// Point of W(A) maximizing Re(e^{-j theta} z). With a degenerate top
/// eigenspace any maximizing eigenvector may be used.
cplx support_point(const Matrix& a, double theta);

/// m support points at theta_k = 2*pi*k/m. The polygon through them is an
/// inner approximation of W(A).
BoundaryPointSet boundary(const Matrix& a, int m = kDefaultGridPoints);

/// True iff no sectoriality certificate exists. Cross-checks the certificate
/// against the maximum of lambda_min(Herm(e^{-j theta} A)) over the grid.
bool contains_zero(const Matrix& a, int m = kDefaultGridPoints, double tol = 0.0);

/// The origin lies outside the convex hull of `points` (all points sit in
/// an open half-plane through 0).
bool hull_excludes_origin(std::span<const cplx> points);

}  // namespace phaserank
