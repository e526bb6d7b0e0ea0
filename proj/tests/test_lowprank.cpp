#include "phaserank/lowprank.hpp"
#include "phaserank/randgen.hpp"

#include <gtest/gtest.h>

#include <algorithm>

using namespace phaserank;

namespace {

Matrix worked_example_a() {
  Vector d(2);
  d << std::polar(1.0, pi / 3), std::polar(1.0, -pi / 4);
  return d.asDiagonal();
}

Matrix worked_example_e() {
  Matrix w(2, 2);
  w << 0.6, 0.3, 0.2, 0.7;
  Matrix l = Matrix::Identity(2, 2);
  l(0, 0) = std::polar(1.0, pi / 6);
  return w.adjoint() * l * w;
}

Matrix pi_matrix(Rng& rng, int n, double cap = 100.0) {
  GeneratorSpec spec;
  spec.n = n;
  spec.sector = SectorInterval::positive_imaginary();
  spec.condition_cap = cap;
  return random_sectorial(rng, spec);
}

}  // namespace

TEST(LowPrank, TruncationLeavesTailPhases) {
  Rng rng(1);
  const Matrix a = pi_matrix(rng, 5);
  const PhaseVector pa = phases(a);
  for (int r = 0; r <= 5; ++r) {
    const TruncationApproximant t = truncation_sp(a, r);
    EXPECT_EQ(prank(t.e), r);
    std::vector<double> expect(pa.begin(), pa.end());
    std::fill(expect.begin(), expect.begin() + r, 0.0);
    std::sort(expect.begin(), expect.end());
    std::vector<double> got = conjugate_phases(a, t.e).values();
    std::sort(got.begin(), got.end());
    for (int k = 0; k < 5; ++k) EXPECT_NEAR(got[k], expect[k], 1e-8);
    for (const GaugeSpec& g : {GaugeSpec{MaxGauge{}}, GaugeSpec{SumGauge{}}, GaugeSpec{KyFan{2}}}) {
      EXPECT_NEAR(objective(a, t.e, g), optimal_value(a, r, g), 1e-8);
    }
  }
}

TEST(LowPrank, OptimalValueClosedForm) {
  const PhaseVector ph({2.0, 1.0, 0.5});
  EXPECT_DOUBLE_EQ(optimal_value(ph, 0, SumGauge{}), 3.5);
  EXPECT_DOUBLE_EQ(optimal_value(ph, 1, MaxGauge{}), 1.0);
  EXPECT_DOUBLE_EQ(optimal_value(ph, 2, SumGauge{}), 0.5);
  EXPECT_DOUBLE_EQ(optimal_value(ph, 3, MaxGauge{}), 0.0);
  EXPECT_THROW(optimal_value(ph, 4, MaxGauge{}), InvalidInput);
  EXPECT_THROW(optimal_value(PhaseVector({0.5, -0.5}), 1, MaxGauge{}), SectorError);
}

TEST(LowPrank, ExampleFeasibility) {
  const Matrix a = worked_example_a(), e = worked_example_e();
  const FeasibilityReport loose = is_feasible(a, e, 1, false);
  EXPECT_TRUE(loose.feasible());
  EXPECT_EQ(loose.e_prank, 1);
  ASSERT_TRUE(loose.objective.has_value());
  EXPECT_LT(*loose.objective, pi / 4);
  const FeasibilityReport strict = is_feasible(a, e, 1, true);
  EXPECT_FALSE(strict.feasible());
  EXPECT_FALSE(strict.conjugate_in_sector);
  EXPECT_FALSE(strict.diagnostics.empty());
  // The canonical phases of the conjugate sum to arg det.
  const Matrix c = conjugate(a, e);
  const double sum = loose.conjugate_phases[0] + loose.conjugate_phases[1];
  EXPECT_NEAR(sum, std::arg(c.determinant()), 1e-12);
}

TEST(LowPrank, IdentityConjugator) {
  Rng rng(2);
  const Matrix a = pi_matrix(rng, 3);
  const FeasibilityReport rep = is_feasible(a, Matrix::Identity(3, 3), 0, true);
  EXPECT_TRUE(rep.feasible());
  EXPECT_NEAR(*rep.objective, phases(a).max(), 1e-10);
  const FeasibilityReport too_big = is_feasible(a, Matrix::Identity(3, 3), 4, true);
  EXPECT_FALSE(too_big.feasible());
}

TEST(LowPrank, PrankViolationReported) {
  Rng rng(3);
  const Matrix a = pi_matrix(rng, 3);
  const Matrix e = truncation_sp(a, 3).e;
  const FeasibilityReport rep = is_feasible(a, e, 1, true);
  EXPECT_FALSE(rep.prank_ok);
  EXPECT_FALSE(rep.feasible());
}

TEST(LowPrank, FactoredPhasesMatchMatrixRoute) {
  Rng rng(4);
  const Matrix a = pi_matrix(rng, 4, 10.0);
  const SectorialDecomposition dec = sectorial_decomposition(a);
  const Matrix f = dec.t * (Matrix::Identity(4, 4) + 0.05 * complex_gaussian(rng, 4, 4));
  const std::vector<double> l{0.5 * dec.phases[0], 0.3 * dec.phases[1], 0.0, 0.0};
  Vector d(4);
  for (int k = 0; k < 4; ++k) d(k) = std::polar(1.0, l[k]);
  const Matrix e = f.adjoint() * d.asDiagonal() * f;
  const PhaseVector p1 = conjugate_phases(a, e), p2 = conjugate_phases_factored(a, f, l);
  for (std::size_t k = 0; k < 4; ++k) EXPECT_NEAR(p1[k], p2[k], 1e-9);
}

TEST(LowPrank, SingularConjugatorRejected) {
  Matrix e = Matrix::Identity(2, 2);
  e(1, 1) = 0.0;
  EXPECT_THROW(conjugate(Matrix::Identity(2, 2), e), InvalidInput);
}

TEST(LowPrank, NegativeImaginaryMirror) {
  Rng rng(5);
  GeneratorSpec spec;
  spec.n = 4;
  spec.sector = SectorInterval::negative_imaginary();
  spec.condition_cap = 50.0;
  const Matrix a = random_sectorial(rng, spec);
  const PhaseVector pa = phases(a);
  for (int r = 0; r <= 4; ++r) {
    const TruncationApproximant t = negative_imaginary_solution(a, r);
    EXPECT_EQ(prank(t.e), r);
    const PhaseVector pc = conjugate_phases(a, t.e);
    // Keeps the r most negative phases out of the objective.
    std::vector<double> expect(pa.begin(), pa.end());
    std::fill(expect.end() - r, expect.end(), 0.0);
    EXPECT_NEAR(gauge_eval(SumGauge{}, pc.span()), gauge_eval(SumGauge{}, expect), 1e-8);
    EXPECT_NEAR(negative_imaginary_value(a, r, SumGauge{}), gauge_eval(SumGauge{}, expect), 1e-12);
  }
  EXPECT_THROW(negative_imaginary_solution(pi_matrix(rng, 2), 1), SectorError);
}

TEST(LowPrank, RankWitness) {
  Matrix a = Matrix::Zero(2, 2);
  a(0, 0) = cplx(11, 1);
  a(1, 1) = cplx(11, -1);
  const RankWitness w = prank_rank_witness(a);
  EXPECT_EQ(w.prank, 2);
  EXPECT_EQ(w.rank_r, 2);
  EXPECT_LT((w.m + w.r - a).norm(), 1e-12);
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitianize(w.m));
  EXPECT_GT(es.eigenvalues()(0), 0.0);

  Matrix m(2, 2);
  m << 10, -std::sqrt(2.0), -std::sqrt(2.0), 10;
  EXPECT_EQ(numerical_rank(a - m), 1);
}

TEST(LowPrank, WitnessOfPositiveDefiniteIsZero) {
  Matrix a(2, 2);
  a << 3, 1, 1, 2;
  const RankWitness w = prank_rank_witness(a);
  EXPECT_EQ(w.prank, 0);
  EXPECT_EQ(w.rank_r, 0);
}
