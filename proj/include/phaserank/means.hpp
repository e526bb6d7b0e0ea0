#pragma once

// Arithmetic and geometric means of sectorial matrices, the principal
// matrix square root, and logarithms of positive definite and unitary
// matrices.

#include "phaserank/types.hpp"

#include <optional>

namespace phaserank {

struct MeanConfig {
  /// Rotation with e^{j beta} M, e^{j beta} N strictly accretive. When empty,
  /// beta = -(midpoint of the joint phase hull).
  std::optional<double> rotation_beta;
  /// Gauss-Legendre nodes on the initial panel layout (20 per panel).
  int quadrature_points = 200;
  double residual_tol = 1e-8;
};

Matrix arithmetic_mean(const Matrix& m, const Matrix& n);

/// Principal square root by complex Schur factorization and the triangular
/// recurrence. Throws BranchError when an eigenvalue is within 1e-12 (relative
/// to ||A||) of the closed negative real axis.
Matrix principal_sqrt(const Matrix& a);

/// Rotation beta used by the geometric mean. Throws SectorError when the
/// joint phase hull of M and N spans pi or more (up to the strict margin).
double mean_rotation(const Matrix& m, const Matrix& n, const MeanConfig& cfg = {});

/// M # N = e^{-j beta} (M' # N') with M' = e^{j beta} M, N' = e^{j beta} N and
/// M' # N' = M'^{1/2} (M'^{-1/2} N' M'^{-1/2})^{1/2} M'^{1/2}.
Matrix geometric_mean(const Matrix& m, const Matrix& n, const MeanConfig& cfg = {});

/// Independent route: (2/pi) * integral_0^inf N (tN + M/t)^{-1} M dt/t, the
/// inverse-mean integral applied to M^{-1}, N^{-1}. Evaluated with t = e^s
/// and globally adaptive composite Gauss-Legendre on a symmetric s-interval
/// whose tails are below 1e-10 relative.
Matrix geometric_mean_quadrature(const Matrix& m, const Matrix& n, const MeanConfig& cfg = {});

/// ||G M^{-1} G - N||_F.
double riccati_residual(const Matrix& g, const Matrix& m, const Matrix& n);

/// Logarithm of a Hermitian positive definite matrix (Hermitian result).
Matrix log_hpd(const Matrix& p);

/// Principal logarithm of a unitary matrix with no eigenvalue at -1; the
/// result is skew-Hermitian with eigenvalues j*theta, theta in (-pi, pi).
Matrix log_unitary(const Matrix& u);

}  // namespace phaserank
