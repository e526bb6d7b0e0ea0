#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace phaserank {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr double pi = std::numbers::pi;

/// Phases below this magnitude (radians) count as zero when computing prank.
inline constexpr double kZeroPhaseTol = 1e-8;
/// Relative singular-value threshold for nonsingularity.
inline constexpr double kNonsingularRelTol = 1e-12;
/// Condition number of the Hermitian part above which a decomposition is flagged.
inline constexpr double kIllConditionedH = 1e12;
/// Coarse grid size for the sectoriality search and boundary sampling.
inline constexpr int kDefaultGridPoints = 720;
/// Margin used for strict (open) sector membership in means and geodesics.
inline constexpr double kStrictSectorMargin = 1e-10;

inline cplx expj(double theta) { return std::polar(1.0, theta); }

// Errors ----------------------------------------------------------------

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// Raised when an operation needs a sectorial matrix and none was found.
/// Carries the best separating angle found by the search.
class NotSectorialError : public Error {
 public:
  NotSectorialError(const std::string& what, double best_theta, double best_lambda_min)
      : Error(what), best_theta_(best_theta), best_lambda_min_(best_lambda_min) {}
  double best_theta() const noexcept { return best_theta_; }
  double best_lambda_min() const noexcept { return best_lambda_min_; }

 private:
  double best_theta_;
  double best_lambda_min_;
};

/// Principal-branch failure (eigenvalue on or next to the cut).
class BranchError : public Error {
 public:
  using Error::Error;
};

/// Input lies outside the sector an operation is scoped to.
class SectorError : public Error {
 public:
  using Error::Error;
};

// Phases and sectors -----------------------------------------------------

/// Canonical phases: nonincreasing, spread < pi, center in (-pi, pi].
class PhaseVector {
 public:
  PhaseVector() = default;
  /// Validates the invariants; throws InvalidInput when they fail.
  explicit PhaseVector(std::vector<double> values);

  std::size_t size() const noexcept { return values_.size(); }
  bool empty() const noexcept { return values_.empty(); }
  double operator[](std::size_t k) const { return values_[k]; }
  double max() const { return values_.front(); }
  double min() const { return values_.back(); }
  double center() const { return 0.5 * (max() + min()); }
  double spread() const { return max() - min(); }

  const std::vector<double>& values() const noexcept { return values_; }
  std::span<const double> span() const noexcept { return values_; }
  auto begin() const noexcept { return values_.begin(); }
  auto end() const noexcept { return values_.end(); }

  /// -reverse(phases): the phases of the inverse matrix.
  PhaseVector negated() const;

 private:
  std::vector<double> values_;
};

/// Angular interval with per-endpoint closure, e.g. [0, pi) for
/// positive-imaginary matrices.
struct SectorInterval {
  double alpha = 0.0;
  double beta = 0.0;
  bool alpha_closed = true;
  bool beta_closed = true;

  /// 0 < beta - alpha <= pi and center in (-pi, pi].
  bool valid() const noexcept;
  double center() const noexcept { return 0.5 * (alpha + beta); }

  /// [lo, hi] subset of the interval (modulo 2*pi), honouring closure.
  /// Open endpoints require clearance > tol, closed endpoints allow tol slack.
  bool contains(double lo, double hi, double tol = kZeroPhaseTol) const noexcept;
  bool contains(const PhaseVector& phases, double tol = kZeroPhaseTol) const noexcept {
    return !phases.empty() && contains(phases.min(), phases.max(), tol);
  }

  static SectorInterval closed(double a, double b) { return {a, b, true, true}; }
  static SectorInterval open(double a, double b) { return {a, b, false, false}; }
  static SectorInterval positive_real() { return closed(-pi / 2, pi / 2); }
  static SectorInterval strictly_positive_real() { return open(-pi / 2, pi / 2); }
  static SectorInterval positive_imaginary() { return {0.0, pi, true, false}; }
  static SectorInterval negative_imaginary() { return {-pi, 0.0, false, true}; }
};

// Matrix helpers ----------------------------------------------------------

/// Throws InvalidInput unless `a` is square, nonempty and finite.
void require_square_finite(const Matrix& a, std::string_view what = "matrix");

/// Largest singular value.
double spectral_norm(const Matrix& a);

/// Hermitian matrix from its (possibly slightly asymmetric) numerical value.
inline Matrix hermitianize(const Matrix& a) { return 0.5 * (a + a.adjoint()); }

}  // namespace phaserank
