#include "phaserank/randgen.hpp"
#include "phaserank/sectorial.hpp"

#include <gtest/gtest.h>

#include <algorithm>

using namespace phaserank;

namespace {

Matrix diag(std::initializer_list<cplx> d) {
  Vector v(static_cast<Eigen::Index>(d.size()));
  Eigen::Index i = 0;
  for (cplx x : d) v(i++) = x;
  return v.asDiagonal();
}

// Independent oracle: A = T* D T gives A^{-1} A* = T^{-1} D^{-2} T, so the
// eigenvalues of A^{-1} A* are e^{-2 j phi}. Phases lie within pi/2 of the
// certificate angle, which fixes the branch.
std::vector<double> oracle_phases(const Matrix& a, double theta) {
  const Matrix x = a.partialPivLu().solve(a.adjoint());
  Eigen::ComplexEigenSolver<Matrix> es(x, false);
  std::vector<double> out;
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    const cplx w = es.eigenvalues()(i) * std::polar(1.0, 2 * theta);
    out.push_back(theta - 0.5 * std::arg(w));
  }
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

}  // namespace

TEST(Sectorial, DiagonalUnitaryPhasesAreAngles) {
  const Matrix a = diag({std::polar(1.0, pi / 3), std::polar(1.0, -pi / 4)});
  const PhaseVector ph = phases(a);
  ASSERT_EQ(ph.size(), 2u);
  EXPECT_NEAR(ph[0], pi / 3, 1e-12);
  EXPECT_NEAR(ph[1], -pi / 4, 1e-12);
  EXPECT_NEAR(phase_center(a), (pi / 3 - pi / 4) / 2, 1e-12);
  EXPECT_EQ(prank(a), 2);
}

TEST(Sectorial, PositiveDefiniteHasPrankZero) {
  Matrix a(2, 2);
  a << 2, cplx(0.5, 0.5), cplx(0.5, -0.5), 3;
  EXPECT_EQ(prank(a), 0);
  EXPECT_TRUE(is_positive_real(a));
  for (double p : phases(a)) EXPECT_NEAR(p, 0.0, 1e-12);
}

TEST(Sectorial, IndefiniteHermitianIsNotSectorial) {
  const Matrix a = diag({1.0, -1.0});
  const CertificateResult cert = sectoriality_certificate(a);
  EXPECT_FALSE(is_certificate(cert));
  EXPECT_THROW(sectorial_decomposition(a), NotSectorialError);
  try {
    sectorial_decomposition(a);
  } catch (const NotSectorialError& e) {
    EXPECT_LE(e.best_lambda_min(), 1e-12);
  }
}

TEST(Sectorial, ZeroAndNonFiniteRejected) {
  EXPECT_FALSE(is_certificate(sectoriality_certificate(Matrix::Zero(2, 2))));
  Matrix bad = Matrix::Identity(2, 2);
  bad(0, 1) = cplx(std::nan(""), 0);
  EXPECT_THROW(phases(bad), InvalidInput);
  EXPECT_THROW(phases(Matrix(2, 3)), InvalidInput);
}

TEST(Sectorial, CertificateSeparatesOrigin) {
  Rng rng(11);
  GeneratorSpec spec;
  spec.n = 5;
  spec.sector = SectorInterval::closed(0.4, 0.4 + 3.0);
  const Matrix a = random_sectorial(rng, spec);
  const auto cert = sectoriality_certificate(a);
  ASSERT_TRUE(is_certificate(cert));
  const auto& c = std::get<SectorialityCertificate>(cert);
  EXPECT_GT(c.lambda_min, 0.0);
  EXPECT_NEAR(rotated_lambda_min(a, c.theta), c.lambda_min, 1e-12 * spectral_norm(a));
}

TEST(Sectorial, DecompositionReconstructsAndMatchesOracle) {
  for (int seed = 0; seed < 30; ++seed) {
    Rng rng(derive_seed(5, seed));
    GeneratorSpec spec;
    spec.n = 1 + seed % 7;
    const double lo = uniform(rng, -3.0, 1.0);
    spec.sector = SectorInterval::closed(lo, lo + uniform(rng, 0.2, 3.0));
    spec.condition_cap = 100.0;
    const Matrix a = random_sectorial(rng, spec);
    const SectorialDecomposition dec = sectorial_decomposition(a);
    EXPECT_LT((dec.reconstruct() - a).norm(), 1e-10 * a.norm());
    const auto oracle = oracle_phases(a, dec.theta);
    for (std::size_t k = 0; k < oracle.size(); ++k) EXPECT_NEAR(dec.phases[k], oracle[k], 1e-8);
  }
}

TEST(Sectorial, PhasesInvariantUnderCongruence) {
  Rng rng(3);
  GeneratorSpec spec;
  spec.n = 4;
  spec.condition_cap = 10.0;
  const Matrix a = random_sectorial(rng, spec);
  const Matrix s = random_nonsingular(rng, 4, 10.0);
  const PhaseVector p1 = phases(a), p2 = phases(s.adjoint() * a * s);
  for (std::size_t k = 0; k < p1.size(); ++k) EXPECT_NEAR(p1[k], p2[k], 1e-9);
}

TEST(Sectorial, RotationShiftsPhases) {
  Rng rng(4);
  GeneratorSpec spec;
  spec.n = 3;
  spec.sector = SectorInterval::closed(-0.5, 0.5);
  const Matrix a = random_sectorial(rng, spec);
  const PhaseVector p = phases(a), q = phases(expj(0.7) * a);
  for (std::size_t k = 0; k < p.size(); ++k) EXPECT_NEAR(q[k], p[k] + 0.7, 1e-9);
}

TEST(Sectorial, InversePhasesAreNegatedReversed) {
  Rng rng(8);
  GeneratorSpec spec;
  spec.n = 4;
  spec.condition_cap = 20.0;
  const Matrix a = random_sectorial(rng, spec);
  const PhaseVector p = phases(a).negated();
  const PhaseVector q = phases(Matrix(a.inverse()));
  for (std::size_t k = 0; k < p.size(); ++k) EXPECT_NEAR(p[k], q[k], 1e-9);
}

TEST(Sectorial, PrankCountsNonzeroPhases) {
  Rng rng(9);
  GeneratorSpec spec;
  spec.n = 6;
  spec.prank_cap = 2;
  spec.condition_cap = 50.0;
  const Matrix a = random_sectorial(rng, spec);
  EXPECT_EQ(prank(a), 2);
}

TEST(Sectorial, SectorMembership) {
  const Matrix a = diag({std::polar(1.0, 0.2), std::polar(2.0, 2.5)});
  EXPECT_TRUE(is_positive_imaginary(a));
  EXPECT_FALSE(is_positive_real(a));
  EXPECT_FALSE(is_negative_imaginary(a));
  EXPECT_TRUE(in_sector(a, SectorInterval::closed(0.1, 2.6)));
  EXPECT_FALSE(in_sector(a, SectorInterval::open(0.2, 2.6)));
  EXPECT_TRUE(in_open_half_plane_sector(diag({1.0, cplx(1, 1)}), 0.3));
  EXPECT_FALSE(in_open_half_plane_sector(diag({1.0, cplx(0, 1)}), 0.0));
}

TEST(Sectorial, PhaseVectorInvariants) {
  EXPECT_THROW(PhaseVector({0.1, 0.2}), InvalidInput);
  EXPECT_THROW(PhaseVector({2.0, -1.2}), InvalidInput);
  EXPECT_THROW(PhaseVector(std::vector<double>{}), InvalidInput);
  const PhaseVector p({1.0, 0.5, -0.5});
  EXPECT_DOUBLE_EQ(p.spread(), 1.5);
  EXPECT_DOUBLE_EQ(p.center(), 0.25);
}

TEST(Sectorial, SectorIntervalClosure) {
  const SectorInterval pi_class = SectorInterval::positive_imaginary();
  EXPECT_TRUE(pi_class.contains(0.0, 1.0));
  EXPECT_FALSE(pi_class.contains(0.0, pi));
  EXPECT_TRUE(SectorInterval::closed(0.0, pi).contains(0.0, pi));
  EXPECT_FALSE(SectorInterval::open(-1, 1).contains(-1.0, 0.0));
  EXPECT_TRUE(SectorInterval::positive_real().valid());
  EXPECT_FALSE(SectorInterval::closed(0, 4).valid());
}
