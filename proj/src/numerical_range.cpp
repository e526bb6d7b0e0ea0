#include "phaserank/numerical_range.hpp"

#include "phaserank/kernels.hpp"
#include "phaserank/sectorial.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace phaserank {

cplx support_point(const Matrix& a, double theta) {
  require_square_finite(a, "support_point");
  const auto [h, k] = hermitian_split(a);
  return kernels::support_point(a, h, k, theta);
}

BoundaryPointSet boundary(const Matrix& a, int m) {
  require_square_finite(a, "boundary");
  if (m < 8) throw InvalidInput("boundary: m must be >= 8");
  BoundaryPointSet out;
  out.thetas = kernels::angle_grid(m, 0.0);
  out.points = kernels::support_points(a, out.thetas);
  return out;
}

bool contains_zero(const Matrix& a, int m, double tol) {
  require_square_finite(a, "contains_zero");
  if (m < 8) throw InvalidInput("contains_zero: m must be >= 8");
  const bool sectorial = is_certificate(sectoriality_certificate(a, m));

  const auto [h, k] = hermitian_split(a);
  const std::vector<double> thetas = kernels::angle_grid(m, -pi);
  const std::vector<double> lmin = kernels::lambda_min_scan(h, k, thetas);
  const double grid_max = *std::max_element(lmin.begin(), lmin.end());
  if (!sectorial && grid_max > std::max(tol, 1e-12 * spectral_norm(a))) {
    throw std::logic_error("contains_zero: grid scan separates 0 but certificate search failed");
  }
  return !sectorial;
}

bool hull_excludes_origin(std::span<const cplx> points) {
  if (points.empty()) return true;
  std::vector<double> angles;
  angles.reserve(points.size());
  for (cplx z : points) {
    if (z == cplx(0.0, 0.0)) return false;
    angles.push_back(std::arg(z));
  }
  std::sort(angles.begin(), angles.end());
  double gap = angles.front() + 2 * pi - angles.back();
  for (std::size_t i = 1; i < angles.size(); ++i) gap = std::max(gap, angles[i] - angles[i - 1]);
  return gap > pi;
}

}  // namespace phaserank
