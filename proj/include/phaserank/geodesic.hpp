#pragma once

// Symmetric polar decomposition A = P U P, the two-gauge geodesic distance,
// low phase-rank truncation in that distance and the unitary-case
// comparison with the geometric-mean formulation.

#include "phaserank/gauge.hpp"
#include "phaserank/sectorial.hpp"

#include <string>
#include <vector>

namespace phaserank {

/// Which endpoint of the window (alpha - pi/2, alpha + pi/2) may be attained.
enum class SectorEdge { Open, ClosedLower, ClosedUpper };

struct GeodesicConfig {
  GaugeSpec gauge_p = MaxGauge{};
  GaugeSpec gauge_u = MaxGauge{};
  double alpha = 0.0;  ///< |alpha| < pi/2
  SectorEdge edge = SectorEdge::Open;

  SectorInterval window() const;
};

struct SymmetricPolarDecomposition {
  Matrix p;                     ///< Hermitian positive definite
  Matrix u;                     ///< unitary, phases in the alpha window
  double alpha = 0.0;
  Matrix basis;                 ///< eigenvectors of U (columns)
  std::vector<double> phases;   ///< eigen-angles of U, nonincreasing

  Matrix reconstruct() const { return p * u * p; }
};

/// From A = T* D T and the SVD T = X S Y*: P = Y S Y*, U = V* D V with
/// V = X Y*. Throws SectorError outside the window.
SymmetricPolarDecomposition symmetric_polar(const Matrix& a, const GeodesicConfig& cfg = {});
SymmetricPolarDecomposition symmetric_polar(const Matrix& a, double alpha);

/// Independent route for P: (B # B*)^{1/2} with B = e^{-j alpha} A.
Matrix symmetric_polar_p_via_geometric_mean(const Matrix& a, double alpha = 0.0);

struct GeodesicTerms {
  double p_term = 0.0;  ///< ||log(P_A^{-1} P_B^2 P_A^{-1})||_{Phi_1}
  double u_term = 0.0;  ///< ||log(U_A* U_B)||_{Phi_2}
  double distance() const;
};

GeodesicTerms geodesic_terms(const SymmetricPolarDecomposition& a,
                             const SymmetricPolarDecomposition& b, const GeodesicConfig& cfg);
double geodesic_distance(const Matrix& a, const Matrix& b, const GeodesicConfig& cfg = {});

struct GeodesicApproximant {
  Matrix a_hat;                     ///< P U_r P
  Matrix u_hat;
  SymmetricPolarDecomposition source;
  std::vector<double> kept_phases;  ///< phases of U_r, zeros where truncated
  double value = 0.0;               ///< optimal distance
  bool unique = true;
};

/// Keeps the r largest-|phase| eigen-angles of U (stable order on ties) and
/// sets the others to 0, so the corresponding eigenvalues become 1.
GeodesicApproximant geodesic_truncation(const Matrix& a, int r, const GeodesicConfig& cfg = {},
                                        double tie_tol = 1e-9);

/// Phi_2 of the n - r smallest |phases| of U, padded with zeros.
double geodesic_optimal_value(const Matrix& a, int r, const GeodesicConfig& cfg = {});
double geodesic_optimal_value(const std::vector<double>& u_phases, int r, const GaugeSpec& g);

struct UnitaryEquivalenceReport {
  double alpha = 0.0;                ///< window center used for the geodesic side
  double e_unitarity = 0.0;          ///< ||E*E - I||_F for the canonical truncation
  double formula_value = 0.0;        ///< Phi(0, ..., 0, phi_{r+1}, ..., phi_n)
  double mean_objective = 0.0;       ///< Phi(phi(E^{-1} A E^{-1}))
  double geodesic_optimum = 0.0;
  double squared_distance = 0.0;     ///< delta(A, E^2)
  double squared_vs_truncation = 0.0;  ///< ||E^2 - A_r||_F
  double max_gap() const;
  bool passes(double tol) const;
};

/// A unitary with phases in [0, pi). The geodesic side uses the window
/// centered at half the largest phase, which holds A, E^2 and the truncation.
UnitaryEquivalenceReport unitary_equivalence_check(const Matrix& a, int r, const GaugeSpec& g);

/// Eigen-angles of a unitary matrix, nonincreasing. BranchError at -1.
std::vector<double> unitary_angles(const Matrix& u);

}  // namespace phaserank
