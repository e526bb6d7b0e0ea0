#include "phaserank/types.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <fmt/format.h>

namespace phaserank {

PhaseVector::PhaseVector(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw InvalidInput("phase vector: empty");
  for (double v : values_) {
    if (!std::isfinite(v)) throw InvalidInput("phase vector: non-finite phase");
  }
  if (!std::is_sorted(values_.begin(), values_.end(), std::greater<>())) {
    throw InvalidInput("phase vector: phases must be nonincreasing");
  }
  if (!(spread() < pi)) {
    throw InvalidInput(fmt::format("phase vector: spread {} is not below pi", spread()));
  }
  const double c = center();
  if (!(c > -pi && c <= pi)) {
    throw InvalidInput(fmt::format("phase vector: center {} outside (-pi, pi]", c));
  }
}

PhaseVector PhaseVector::negated() const {
  std::vector<double> out(values_.rbegin(), values_.rend());
  for (double& v : out) v = -v;
  // A center of exactly pi negates to -pi, which is outside (-pi, pi].
  if (0.5 * (out.front() + out.back()) <= -pi) {
    for (double& v : out) v += 2 * pi;
  }
  return PhaseVector(std::move(out));
}

bool SectorInterval::valid() const noexcept {
  const double width = beta - alpha;
  const double c = center();
  return width > 0.0 && width <= pi && c > -pi && c <= pi;
}

bool SectorInterval::contains(double lo, double hi, double tol) const noexcept {
  for (double shift : {0.0, 2 * pi, -2 * pi}) {
    const double l = lo + shift;
    const double h = hi + shift;
    const bool lower_ok = alpha_closed ? (l >= alpha - tol) : (l > alpha + tol);
    const bool upper_ok = beta_closed ? (h <= beta + tol) : (h < beta - tol);
    if (lower_ok && upper_ok) return true;
  }
  return false;
}

void require_square_finite(const Matrix& a, std::string_view what) {
  if (a.rows() == 0 || a.rows() != a.cols()) {
    throw InvalidInput(fmt::format("{}: expected a nonempty square matrix, got {}x{}", what,
                                   a.rows(), a.cols()));
  }
  if (!a.allFinite()) throw InvalidInput(fmt::format("{}: non-finite entries", what));
}

double spectral_norm(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(a);
  return svd.singularValues()(0);
}

}  // namespace phaserank
