#include "phaserank/means.hpp"
#include "phaserank/randgen.hpp"
#include "phaserank/sectorial.hpp"

#include <gtest/gtest.h>

using namespace phaserank;

namespace {

Matrix accretive(Rng& rng, int n, double cap = 100.0) {
  GeneratorSpec spec;
  spec.n = n;
  spec.sector = SectorInterval::open(-pi / 2, pi / 2);
  spec.condition_cap = cap;
  return random_sectorial(rng, spec);
}

}  // namespace

TEST(Means, ScalarMeanIsPrincipalSquareRoot) {
  const cplx m = std::polar(2.0, 0.6), n = std::polar(8.0, -0.9);
  const Matrix g = geometric_mean(Matrix::Constant(1, 1, m), Matrix::Constant(1, 1, n));
  EXPECT_NEAR(std::abs(g(0, 0) - std::sqrt(m * n)), 0.0, 1e-13);
  EXPECT_NEAR(std::abs(geometric_mean_quadrature(Matrix::Constant(1, 1, m), Matrix::Constant(1, 1, n))(0, 0) -
                       std::sqrt(m * n)),
              0.0, 1e-10);
}

TEST(Means, CommutingDiagonalMean) {
  Vector dm(3), dn(3);
  dm << std::polar(1.0, 0.3), std::polar(4.0, -1.2), 2.0;
  dn << std::polar(9.0, 1.1), std::polar(1.0, 0.2), std::polar(0.5, -1.4);
  const Matrix g = geometric_mean(Matrix(dm.asDiagonal()), Matrix(dn.asDiagonal()));
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(std::abs(g(i, i) - std::sqrt(dm(i) * dn(i))), 0.0, 1e-12);
  EXPECT_NEAR((g - Matrix(g.diagonal().asDiagonal())).norm(), 0.0, 1e-12);
}

TEST(Means, PositiveDefiniteMeanMatchesClosedForm) {
  // Hermitian eigen-decompositions instead of Schur: M^{1/2} (M^{-1/2} N M^{-1/2})^{1/2} M^{1/2}.
  Rng rng(21);
  const Matrix x = complex_gaussian(rng, 4, 4), y = complex_gaussian(rng, 4, 4);
  const Matrix m = x * x.adjoint() + Matrix::Identity(4, 4);
  const Matrix n = y * y.adjoint() + Matrix::Identity(4, 4);
  auto hpow = [](const Matrix& h, double p) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitianize(h));
    const RealVector w = es.eigenvalues().array().pow(p);
    return Matrix(es.eigenvectors() * w.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint());
  };
  const Matrix mh = hpow(m, 0.5), mih = hpow(m, -0.5);
  const Matrix oracle = mh * hpow(mih * n * mih, 0.5) * mh;
  EXPECT_LT((geometric_mean(m, n) - oracle).norm(), 1e-11 * oracle.norm());
}

TEST(Means, RiccatiSymmetryAndQuadratureAgree) {
  for (int seed = 0; seed < 12; ++seed) {
    Rng rng(derive_seed(77, seed));
    const int n = 1 + seed % 5;
    const Matrix m = accretive(rng, n), nn = accretive(rng, n);
    const Matrix g = geometric_mean(m, nn);
    EXPECT_LE(riccati_residual(g, m, nn), 1e-8 * (spectral_norm(m) + spectral_norm(nn)));
    EXPECT_LE((geometric_mean(nn, m) - g).norm(), 1e-8 * g.norm());
    EXPECT_LE((geometric_mean_quadrature(m, nn) - g).norm(), 1e-5 * g.norm());
  }
}

TEST(Means, CongruenceEquivariance) {
  Rng rng(31);
  const Matrix m = accretive(rng, 3), n = accretive(rng, 3);
  const Matrix s = random_nonsingular(rng, 3, 5.0);
  const Matrix lhs = geometric_mean(s.adjoint() * m * s, s.adjoint() * n * s);
  const Matrix rhs = s.adjoint() * geometric_mean(m, n) * s;
  EXPECT_LT((lhs - rhs).norm(), 1e-9 * rhs.norm());
}

TEST(Means, MeanOfMatrixWithItself) {
  Rng rng(32);
  const Matrix m = accretive(rng, 4);
  EXPECT_LT((geometric_mean(m, m) - m).norm(), 1e-10 * m.norm());
}

TEST(Means, IncompatibleSectorsRejected) {
  // Joint phase hull [-1, 3] is wider than pi.
  Vector dm(2), dn(2);
  dm << std::polar(1.0, 1.0), std::polar(1.0, -1.0);
  dn << std::polar(1.0, 3.0), std::polar(1.0, 1.5);
  const Matrix m = dm.asDiagonal(), n = dn.asDiagonal();
  EXPECT_THROW(geometric_mean(m, n), SectorError);
  EXPECT_THROW(geometric_mean(Matrix::Identity(2, 2), Matrix::Identity(3, 3)), InvalidInput);
  MeanConfig cfg;
  cfg.rotation_beta = 2.0;
  EXPECT_THROW(geometric_mean(Matrix::Identity(2, 2), Matrix::Identity(2, 2), cfg), SectorError);
}

TEST(Means, ArithmeticMean) {
  const Matrix a = Matrix::Identity(2, 2), b = 3.0 * Matrix::Identity(2, 2);
  EXPECT_LT((arithmetic_mean(a, b) - 2.0 * Matrix::Identity(2, 2)).norm(), 1e-15);
}

TEST(Means, PrincipalSqrtSquaresBack) {
  Rng rng(41);
  for (int n = 1; n <= 6; ++n) {
    const Matrix a = accretive(rng, n);
    const Matrix s = principal_sqrt(a);
    EXPECT_LT((s * s - a).norm(), 1e-11 * a.norm());
    // Principal: eigenvalues in the open right half plane.
    Eigen::ComplexEigenSolver<Matrix> es(s, false);
    for (Eigen::Index i = 0; i < n; ++i) EXPECT_GT(es.eigenvalues()(i).real(), 0.0);
  }
}

TEST(Means, PrincipalSqrtBranchCut) {
  EXPECT_THROW(principal_sqrt(-Matrix::Identity(2, 2)), BranchError);
  EXPECT_THROW(principal_sqrt(Matrix::Zero(2, 2)), BranchError);
  // Tiny positive eigenvalue is fine.
  Matrix a = Matrix::Identity(2, 2);
  a(1, 1) = 1e-14;
  EXPECT_LT((principal_sqrt(a) * principal_sqrt(a) - a).norm(), 1e-14);
}

TEST(Means, LogarithmsInvertExponentials) {
  Rng rng(51);
  const Matrix h = hermitianize(complex_gaussian(rng, 3, 3));
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  const RealVector ew = es.eigenvalues().array().exp();
  const Matrix p = es.eigenvectors() * ew.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
  EXPECT_LT((log_hpd(p) - h).norm(), 1e-12 * h.norm());
  EXPECT_THROW(log_hpd(-Matrix::Identity(2, 2)), InvalidInput);

  const Matrix q = haar_unitary(rng, 3);
  Vector d(3);
  d << cplx(0, 0.4), cplx(0, -2.0), cplx(0, 1.1);
  Vector ed(3);
  for (int i = 0; i < 3; ++i) ed(i) = std::exp(d(i));
  const Matrix u = q * ed.asDiagonal() * q.adjoint();
  EXPECT_LT((log_unitary(u) - q * d.asDiagonal() * q.adjoint()).norm(), 1e-12);
  EXPECT_THROW(log_unitary(-Matrix::Identity(2, 2)), BranchError);
}
