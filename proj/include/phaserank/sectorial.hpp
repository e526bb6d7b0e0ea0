#pragma once

// Sectoriality, sectorial decomposition A = T* D T, canonical phases,
// phase center, sector membership and phase-rank.

#include "phaserank/types.hpp"

#include <utility>
#include <variant>

namespace phaserank {

/// Separating-line witness: Herm(e^{-j theta} A) has smallest eigenvalue
/// lambda_min > 0, hence 0 is not in the numerical range of A.
struct SectorialityCertificate {
  double theta = 0.0;
  double lambda_min = 0.0;
};

/// Search outcome when no separating angle exists: the best angle found and
/// its (nonpositive, up to tolerance) smallest eigenvalue.
struct NotSectorial {
  double best_theta = 0.0;
  double best_lambda_min = 0.0;
};

using CertificateResult = std::variant<SectorialityCertificate, NotSectorial>;

struct SectorialDecomposition {
  Matrix t;             ///< nonsingular congruence factor
  PhaseVector phases;   ///< canonical phases (diagonal of D)
  double theta = 0.0;   ///< certificate angle the decomposition was built from
  double h_condition = 1.0;
  bool ill_conditioned = false;  ///< h_condition > kIllConditionedH
  double t_condition = 1.0;
  double residual = 0.0;         ///< ||T* D T - A||_F / ||A||_F

  /// D = diag(e^{j phases}).
  Matrix unitary_factor() const;
  Matrix reconstruct() const;
};

/// A = H + jK with H = (A + A*)/2 and K = (A - A*)/(2j), both Hermitian.
std::pair<Matrix, Matrix> hermitian_split(const Matrix& a);

/// Smallest eigenvalue of Herm(e^{-j theta} A).
double rotated_lambda_min(const Matrix& a, double theta);

/// Coarse grid over [-pi, pi) followed by golden-section refinement of the
/// best grid point down to a step below 1e-10. A certificate is returned when
/// the best smallest eigenvalue exceeds 1e-12 * ||A||_2.
CertificateResult sectoriality_certificate(const Matrix& a,
                                           int grid_points = kDefaultGridPoints);

inline bool is_certificate(const CertificateResult& r) {
  return std::holds_alternative<SectorialityCertificate>(r);
}

/// Throws NotSectorialError when `a` is not sectorial.
SectorialDecomposition sectorial_decomposition(const Matrix& a,
                                               int grid_points = kDefaultGridPoints);

PhaseVector phases(const Matrix& a);
double phase_center(const Matrix& a);

int prank(const PhaseVector& phases, double tol = kZeroPhaseTol);
int prank(const Matrix& a, double tol = kZeroPhaseTol);

bool in_sector(const Matrix& a, const SectorInterval& sector, double tol = kZeroPhaseTol);
bool is_positive_real(const Matrix& a, double tol = kZeroPhaseTol);
bool is_positive_imaginary(const Matrix& a, double tol = kZeroPhaseTol);
bool is_negative_imaginary(const Matrix& a, double tol = kZeroPhaseTol);

/// Cheap exact test for the open half-plane sector C(phi - pi/2, phi + pi/2):
/// true iff Herm(e^{-j phi} A) is positive definite.
bool in_open_half_plane_sector(const Matrix& a, double phi);

}  // namespace phaserank
