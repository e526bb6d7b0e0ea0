#pragma once

// Low phase-rank approximation measured by the geometric mean: half
// truncations of the sectorial decomposition, objective values, feasibility
// reports, the negative-imaginary mirror and the prank/rank witness.

#include "phaserank/gauge.hpp"
#include "phaserank/sectorial.hpp"

#include <optional>
#include <string>
#include <vector>

namespace phaserank {

/// E = T* diag(e^{j phi_1/2}, ..., e^{j phi_r/2}, 1, ..., 1) T for the
/// decomposition A = T* diag(e^{j phi}) T held in `source`.
struct TruncationApproximant {
  Matrix e;
  int r = 0;
  SectorialDecomposition source;
};

TruncationApproximant truncation_sp(const Matrix& a, int r);
TruncationApproximant truncation_sp(const SectorialDecomposition& dec, int r);

/// E^{-1} A E^{-1}.
Matrix conjugate(const Matrix& a, const Matrix& e);

/// Canonical phases of E^{-1} A E^{-1}; NotSectorialError (with the failed
/// certificate) if the conjugate is not sectorial.
PhaseVector conjugate_phases(const Matrix& a, const Matrix& e);

/// Same phases for E = F* diag(e^{j l}) F, without forming E. The conjugate
/// is congruent (via F^{-*}) to L* (F^{-*} A F^{-1}) L*, which stays well
/// conditioned when F is close to a congruence factor of A; forming E
/// squares cond(F).
PhaseVector conjugate_phases_factored(const Matrix& a, const Matrix& f, const std::vector<double>& l);

/// Phi(phi(E^{-1} A E^{-1})).
double objective(const Matrix& a, const Matrix& e, const GaugeSpec& g);

/// Phi(0, ..., 0, phi_{r+1}(A), ..., phi_n(A)) for A in C[0, pi); throws
/// SectorError outside that class.
double optimal_value(const Matrix& a, int r, const GaugeSpec& g);
double optimal_value(const PhaseVector& phases_of_a, int r, const GaugeSpec& g);

struct FeasibilityReport {
  bool e_sectorial = false;
  int e_prank = -1;
  bool prank_ok = false;
  bool conjugate_sectorial = false;
  bool conjugate_in_sector = false;  ///< E^{-1} A E^{-1} in C[0, pi)
  bool require_positive_imaginary = false;
  std::optional<double> objective;   ///< set only when feasible()
  std::vector<double> conjugate_phases;
  std::vector<std::string> diagnostics;

  bool feasible() const {
    return e_sectorial && prank_ok && conjugate_sectorial &&
           (!require_positive_imaginary || conjugate_in_sector);
  }
};

FeasibilityReport is_feasible(const Matrix& a, const Matrix& e, int r,
                              bool require_positive_imaginary,
                              const GaugeSpec& g = MaxGauge{});

/// For A in C(-pi, 0]: E with E^{-1} = truncation_sp(A^{-1}, r).e.
TruncationApproximant negative_imaginary_solution(const Matrix& a, int r);

/// Phi(phi_1(A), ..., phi_{n-r}(A), 0, ..., 0) for A in C(-pi, 0].
double negative_imaginary_value(const Matrix& a, int r, const GaugeSpec& g);

struct RankWitness {
  Matrix r;     ///< A - M = T*(D - I)T
  Matrix m;     ///< T* T, positive definite
  int rank_r = 0;
  int prank = 0;
};

RankWitness prank_rank_witness(const Matrix& a);

/// Number of singular values above rel_tol * max(sigma_1(A), scale).
int numerical_rank(const Matrix& a, double rel_tol = 1e-9, double scale = 0.0);

}  // namespace phaserank
