#pragma once

// Seeded generators for test matrices. Everything is a deterministic
// function of the seed; boost.random keeps the streams identical across
// standard libraries.

#include "phaserank/lowprank.hpp"

#include <boost/random/mersenne_twister.hpp>

#include <cstdint>
#include <optional>

namespace phaserank {

using Rng = boost::random::mt19937_64;

struct GeneratorSpec {
  std::uint64_t seed = 0;
  int n = 2;
  SectorInterval sector = SectorInterval::positive_imaginary();
  std::optional<int> prank_cap;
  double condition_cap = 1e4;
};

class GenerationExhausted : public Error {
 public:
  using Error::Error;
};

/// splitmix64 mix of (master, index); used for per-trial streams.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

/// PHASERANK_SEED if set and parseable, otherwise `fallback`.
std::uint64_t seed_from_env(std::uint64_t fallback);

double uniform(Rng& rng, double lo, double hi);
cplx complex_normal(Rng& rng);
Matrix complex_gaussian(Rng& rng, Eigen::Index rows, Eigen::Index cols);

/// Haar-distributed unitary (QR of a complex Gaussian with phase fix).
Matrix haar_unitary(Rng& rng, int n);

/// U1 diag(s) U2 with s log-uniform in [1, condition_cap].
Matrix random_nonsingular(Rng& rng, int n, double condition_cap);

/// Phases drawn uniformly in the sector with a 1e-3 margin from both
/// endpoints; with a prank cap the remaining phases are exactly 0.
std::vector<double> random_phases(Rng& rng, const GeneratorSpec& spec);

/// T* D T with T from random_nonsingular and D = diag(e^{j phases}).
Matrix random_sectorial(const GeneratorSpec& spec);
Matrix random_sectorial(Rng& rng, const GeneratorSpec& spec);

/// Q D Q* with Q Haar.
Matrix random_unitary_sectorial(const GeneratorSpec& spec);
Matrix random_unitary_sectorial(Rng& rng, const GeneratorSpec& spec);

struct ConjugatorOptions {
  int max_rejects = 1000;
  /// Step of the perturbation route, relative to ||T||; 0 yields the
  /// canonical truncation itself.
  double max_perturbation = 0.5;
  int bisection_steps = 30;
  bool use_rejection = true;
};

/// E with E sectorial, prank(E) <= r and E^{-1} A E^{-1} in C[0, pi).
/// Tries fully random E = S* L S first, then perturbs the canonical
/// truncation: E = T'* diag(e^{j u_k phi_k / 2}) T' with T' = T (I + eps S),
/// u_k uniform in [0, 1] and eps bisected until feasible.
/// Throws GenerationExhausted.
struct FeasibleConjugator {
  Matrix e;
  bool from_rejection = false;
  int rejects = 0;       ///< rejected global draws before acceptance or fallback
  double epsilon = 0.0;  ///< accepted perturbation step (fallback route)
  FeasibilityReport report;  ///< is_feasible(A, E, r, true) for the returned E
  /// E = factor* diag(e^{j half_phases}) factor, for conjugate_phases_factored.
  Matrix factor;
  std::vector<double> half_phases;
};

FeasibleConjugator random_feasible_conjugator(Rng& rng, const Matrix& a, int r,
                                              const ConjugatorOptions& opts = {});
/// Same, reusing a decomposition of A across repeated draws.
FeasibleConjugator random_feasible_conjugator(Rng& rng, const Matrix& a,
                                              const SectorialDecomposition& dec, int r,
                                              const ConjugatorOptions& opts = {});
FeasibleConjugator random_feasible_conjugator(const Matrix& a, int r, const GeneratorSpec& spec,
                                              const ConjugatorOptions& opts = {});

}  // namespace phaserank
