#pragma once

// Reproduction checks and seeded randomized suites. Each suite returns raw
// maxima/minima so callers can compare against their own pinned tolerances;
// `passed` uses the tolerances below.

#include "phaserank/lowprank.hpp"
#include "phaserank/numerical_range.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace phaserank::verify {

inline constexpr double kTruncationTol = 1e-7;
inline constexpr double kRiccatiRelTol = 1e-8;
inline constexpr double kQuadratureRelTol = 1e-5;
inline constexpr double kSymmetryRelTol = 1e-8;
inline constexpr double kCongruenceRelTol = 1e-7;
inline constexpr double kPolarRelTol = 1e-8;
inline constexpr double kUnitarityTol = 1e-10;
inline constexpr double kPhaseTol = 1e-7;
inline constexpr double kMajorizationTol = 1e-9;
inline constexpr double kBruteForceTol = 1e-6;
inline constexpr double kSchmidtMirskyTol = 1e-9;
/// At least this fraction of requested random feasible points must be
/// generated for a sampling suite to count.
inline constexpr double kMinCoverage = 0.9;

struct SuiteResult {
  std::string name;
  bool passed = false;
  int trials = 0;
  int skipped = 0;
  std::map<std::string, double> maxima;
  std::map<std::string, double> minima;
  std::map<std::string, double> counts;
  std::vector<std::string> notes;

  double max(const std::string& key) const;
  double min(const std::string& key) const;
};

struct WorkedExample {
  Matrix a, w, l, e, conjugate;
  std::vector<double> phases;          ///< canonical phases of E^{-1} A E^{-1}
  std::vector<double> oracle_phases;   ///< half-angles of eig(C^{-*} C)
  double objective = 0.0;              ///< max gauge
  double phase_sum_gap = 0.0;          ///< |sum(phases) - arg det C|
  FeasibilityReport sectorial_only;    ///< is_feasible(A, E, 1, false)
  FeasibilityReport positive_imaginary;
};

WorkedExample worked_example();
/// The example's claim: E feasible, objective = |phi_2| < 0.23 pi < pi/4,
/// phi_2 = -0.22 pi to two figures. phi_1 is reported only.
SuiteResult worked_example_suite();

struct BoundaryFigure {
  BoundaryPointSet boundary;
  bool hull_excludes_origin = false;
  bool contains_zero = true;
  bool certificate = false;
};
BoundaryFigure boundary_figure(int samples = 720);
SuiteResult boundary_figure_suite(int samples = 720);

struct WitnessExample {
  Matrix a, m_quoted;
  int prank = 0;
  RankWitness witness;
  RealVector sigma_a_minus_m;  ///< singular values of A - M_quoted
  int rank_a_minus_m = 0;
};
WitnessExample witness_example();
SuiteResult witness_suite();

SuiteResult truncation_suite(std::uint64_t seed, int instances = 200, int feasible_per = 50);
SuiteResult geometric_mean_suite(std::uint64_t seed, int pairs = 200);
SuiteResult symmetric_polar_suite(std::uint64_t seed, int instances = 200);
SuiteResult geodesic_suite(std::uint64_t seed, int instances = 40, int samples_per = 500,
                        int brute_force = 10000);
SuiteResult unitary_equivalence_suite(std::uint64_t seed, int instances = 100);
SuiteResult phase_sum_suite(std::uint64_t seed, int pairs = 200, int samples = 500);
SuiteResult schmidt_mirsky_suite(std::uint64_t seed, int instances = 100);

struct Summary {
  std::uint64_t seed = 0;
  std::vector<SuiteResult> suites;
  bool passed() const;
};

/// All suites; `trials` > 0 overrides every randomized instance count.
Summary verify_all(std::uint64_t seed, int trials = 0);

/// Largest prefix-sum excess of a (sorted nonincreasingly) over b.
double majorization_excess(std::vector<double> a, std::vector<double> b);

}  // namespace phaserank::verify
