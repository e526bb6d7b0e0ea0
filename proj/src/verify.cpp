#include "phaserank/verify.hpp"

#include "phaserank/geodesic.hpp"
#include "phaserank/means.hpp"
#include "phaserank/randgen.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

namespace phaserank::verify {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Independent salts keep the suites' random streams unrelated.
constexpr std::uint64_t kSaltTruncation = 0x3131;
constexpr std::uint64_t kSaltMeans = 0x6d65616e;
constexpr std::uint64_t kSaltPolar = 0x706f6c72;
constexpr std::uint64_t kSaltGeodesic = 0x4141;
constexpr std::uint64_t kSaltUnitary = 0x4242;
constexpr std::uint64_t kSaltPhaseSums = 0x4131;
constexpr std::uint64_t kSaltSvd = 0x737664;

struct Trial {
  std::map<std::string, double> maxima;
  std::map<std::string, double> minima;
  std::map<std::string, double> counts;
  std::vector<std::string> notes;
  std::string error;

  void hi(const std::string& k, double v) {
    auto [it, fresh] = maxima.emplace(k, v);
    if (!fresh) it->second = std::max(it->second, v);
  }
  void lo(const std::string& k, double v) {
    auto [it, fresh] = minima.emplace(k, v);
    if (!fresh) it->second = std::min(it->second, v);
  }
  void add(const std::string& k, double v) { counts[k] += v; }
};

// Runs trials concurrently; results are merged in trial order.
SuiteResult run_trials(const std::string& name, int count, const std::function<Trial(int)>& f) {
  std::vector<Trial> trials(static_cast<std::size_t>(count));
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < count; ++i) {
    try {
      trials[i] = f(i);
    } catch (const std::exception& e) {
      trials[i].error = e.what();
    }
  }
  SuiteResult out;
  out.name = name;
  out.trials = count;
  Trial merged;
  for (int i = 0; i < count; ++i) {
    const Trial& t = trials[i];
    for (const auto& [k, v] : t.maxima) merged.hi(k, v);
    for (const auto& [k, v] : t.minima) merged.lo(k, v);
    for (const auto& [k, v] : t.counts) merged.add(k, v);
    for (const auto& n : t.notes) out.notes.push_back(fmt::format("trial {}: {}", i, n));
    if (!t.error.empty()) {
      out.notes.push_back(fmt::format("trial {} error: {}", i, t.error));
      merged.add("errors", 1);
    }
  }
  out.maxima = std::move(merged.maxima);
  out.minima = std::move(merged.minima);
  out.counts = std::move(merged.counts);
  return out;
}

bool clean(const SuiteResult& r) { return r.counts.count("errors") == 0; }

std::vector<GaugeSpec> suite_gauges(int n) {
  std::vector<GaugeSpec> g{MaxGauge{}, SumGauge{}};
  for (int k = 1; k <= n; ++k) g.push_back(KyFan{k});
  return g;
}

Matrix exp_hermitian(const Matrix& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitianize(h));
  const RealVector w = es.eigenvalues().array().exp();
  return es.eigenvectors() * w.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
}

Matrix random_hermitian(Rng& rng, int n) { return hermitianize(complex_gaussian(rng, n, n)); }

// Unitary Q diag(e^{j psi}) Q* with r phases uniform in (lo, hi), rest 0.
Matrix random_prank_unitary(Rng& rng, int n, int r, double lo, double hi) {
  const Matrix q = haar_unitary(rng, n);
  Vector d = Vector::Ones(n);
  for (int k = 0; k < r; ++k) d(k) = expj(uniform(rng, lo, hi));
  return q * d.asDiagonal() * q.adjoint();
}

std::vector<double> abs_values(std::vector<double> x) {
  for (double& v : x) v = std::abs(v);
  return x;
}

}  // namespace

double SuiteResult::max(const std::string& key) const {
  const auto it = maxima.find(key);
  return it == maxima.end() ? -kInf : it->second;
}

double SuiteResult::min(const std::string& key) const {
  const auto it = minima.find(key);
  return it == minima.end() ? kInf : it->second;
}

double majorization_excess(std::vector<double> a, std::vector<double> b) {
  if (a.size() != b.size()) throw InvalidInput("majorization_excess: length mismatch");
  std::sort(a.begin(), a.end(), std::greater<>());
  std::sort(b.begin(), b.end(), std::greater<>());
  double sa = 0.0, sb = 0.0, worst = -kInf;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sa += a[i];
    sb += b[i];
    worst = std::max(worst, sa - sb);
  }
  return worst;
}

// ---------------------------------------------------------------------------

WorkedExample worked_example() {
  WorkedExample ex;
  ex.a = Matrix::Zero(2, 2);
  ex.a(0, 0) = expj(pi / 3);
  ex.a(1, 1) = expj(-pi / 4);
  ex.w.resize(2, 2);
  ex.w << 0.6, 0.3, 0.2, 0.7;
  ex.l = Matrix::Identity(2, 2);
  ex.l(0, 0) = expj(pi / 6);
  ex.e = ex.w.adjoint() * ex.l * ex.w;
  ex.conjugate = conjugate(ex.a, ex.e);
  ex.phases = phases(ex.conjugate).values();

  // C = T* D T gives C^{-*} C = T^{-1} D^2 T.
  const Matrix x = ex.conjugate.adjoint().partialPivLu().solve(ex.conjugate);
  Eigen::ComplexEigenSolver<Matrix> es(x, false);
  for (Eigen::Index i = 0; i < 2; ++i) ex.oracle_phases.push_back(0.5 * std::arg(es.eigenvalues()(i)));
  std::sort(ex.oracle_phases.begin(), ex.oracle_phases.end(), std::greater<>());

  ex.objective = gauge_eval(MaxGauge{}, ex.phases);
  const double sum = std::accumulate(ex.phases.begin(), ex.phases.end(), 0.0);
  ex.phase_sum_gap = std::abs(sum - std::arg(ex.conjugate.determinant()));
  ex.sectorial_only = is_feasible(ex.a, ex.e, 1, false);
  ex.positive_imaginary = is_feasible(ex.a, ex.e, 1, true);
  return ex;
}

SuiteResult worked_example_suite() {
  SuiteResult out;
  out.name = "worked_example";
  out.trials = 1;
  try {
    const WorkedExample ex = worked_example();
    out.maxima["phi1_over_pi"] = ex.phases[0] / pi;
    out.maxima["phi2_over_pi"] = ex.phases[1] / pi;
    out.maxima["objective_over_pi"] = ex.objective / pi;
    out.maxima["phase_sum_gap"] = ex.phase_sum_gap;
    double oracle_gap = 0.0;
    for (int k = 0; k < 2; ++k) oracle_gap = std::max(oracle_gap, std::abs(ex.phases[k] - ex.oracle_phases[k]));
    out.maxima["oracle_gap"] = oracle_gap;
    out.counts["feasible"] = ex.sectorial_only.feasible();
    out.counts["e_prank"] = ex.sectorial_only.e_prank;
    out.counts["positive_imaginary_feasible"] = ex.positive_imaginary.feasible();
    out.passed = ex.sectorial_only.feasible() && !ex.positive_imaginary.feasible() &&
                 ex.objective < 0.23 * pi && ex.objective < pi / 4 &&
                 std::abs(ex.phases[1] / pi + 0.22) <= 0.005 && ex.phase_sum_gap <= 1e-9 &&
                 oracle_gap <= 1e-9;
    if (std::abs(ex.phases[0] / pi + 0.055) > 0.005) {
      Eigen::ComplexEigenSolver<Matrix> es(ex.conjugate, false);
      out.notes.push_back(fmt::format(
          "phi_1 = {:.5f} pi, not -0.055 pi; eigenvalue angles of the conjugate are {:.5f} pi and "
          "{:.5f} pi, and the canonical phases must sum to arg det = {:.5f} pi",
          ex.phases[0] / pi, std::arg(es.eigenvalues()(0)) / pi, std::arg(es.eigenvalues()(1)) / pi,
          std::arg(ex.conjugate.determinant()) / pi));
    }
  } catch (const std::exception& e) {
    out.notes.push_back(e.what());
  }
  return out;
}

BoundaryFigure boundary_figure(int samples) {
  const WorkedExample ex = worked_example();
  BoundaryFigure f;
  f.boundary = boundary(ex.conjugate, samples);
  f.hull_excludes_origin = hull_excludes_origin(f.boundary.points);
  f.contains_zero = contains_zero(ex.conjugate, samples);
  f.certificate = is_certificate(sectoriality_certificate(ex.conjugate));
  return f;
}

SuiteResult boundary_figure_suite(int samples) {
  SuiteResult out;
  out.name = "boundary_figure";
  out.trials = 1;
  try {
    const BoundaryFigure f = boundary_figure(samples);
    out.counts["points"] = static_cast<double>(f.boundary.points.size());
    out.counts["hull_excludes_origin"] = f.hull_excludes_origin;
    out.counts["certificate"] = f.certificate;
    out.passed = f.boundary.points.size() >= 360 && f.hull_excludes_origin && !f.contains_zero &&
                 f.certificate;
  } catch (const std::exception& e) {
    out.notes.push_back(e.what());
  }
  return out;
}

WitnessExample witness_example() {
  WitnessExample ex;
  ex.a = Matrix::Zero(2, 2);
  ex.a(0, 0) = cplx(11, 1);
  ex.a(1, 1) = cplx(11, -1);
  ex.m_quoted.resize(2, 2);
  ex.m_quoted << 10, -std::sqrt(2.0), -std::sqrt(2.0), 10;
  ex.prank = prank(ex.a);
  ex.witness = prank_rank_witness(ex.a);
  ex.sigma_a_minus_m = singular_values(ex.a - ex.m_quoted);
  ex.rank_a_minus_m = numerical_rank(ex.a - ex.m_quoted, 1e-9);
  return ex;
}

SuiteResult witness_suite() {
  SuiteResult out;
  out.name = "witness_example";
  out.trials = 1;
  try {
    const WitnessExample ex = witness_example();
    out.counts["prank"] = ex.prank;
    out.counts["witness_rank"] = ex.witness.rank_r;
    out.counts["rank_a_minus_m"] = ex.rank_a_minus_m;
    const double ratio = ex.sigma_a_minus_m(1) / ex.sigma_a_minus_m(0);
    out.maxima["sigma2_over_sigma1"] = ratio;
    out.passed = ex.prank == 2 && ex.witness.rank_r == 2 && ex.rank_a_minus_m == 1 && ratio < 1e-9;
  } catch (const std::exception& e) {
    out.notes.push_back(e.what());
  }
  return out;
}

// ---------------------------------------------------------------------------

SuiteResult truncation_suite(std::uint64_t seed, int instances, int feasible_per) {
  auto trial = [&](int i) {
    Trial t;
    Rng rng(derive_seed(seed ^ kSaltTruncation, i));
    GeneratorSpec spec;
    spec.n = 2 + i % 7;
    spec.sector = SectorInterval::positive_imaginary();
    if (i % 5 == 4) spec.prank_cap = spec.n / 2;
    const Matrix a = random_sectorial(rng, spec);
    const SectorialDecomposition dec = sectorial_decomposition(a);
    const PhaseVector& ph = dec.phases;
    const auto gauges = suite_gauges(spec.n);

    for (int r = 0; r <= spec.n; ++r) {
      const Matrix e = truncation_sp(dec, r).e;
      const PhaseVector cp = conjugate_phases(a, e);

      std::vector<double> expect(ph.begin(), ph.end());
      std::fill(expect.begin(), expect.begin() + r, 0.0);
      std::vector<double> got(cp.begin(), cp.end());
      std::sort(expect.begin(), expect.end());
      std::sort(got.begin(), got.end());
      for (int k = 0; k < spec.n; ++k) t.hi("phase_identity_gap", std::abs(expect[k] - got[k]));

      std::vector<double> opt;
      for (const auto& g : gauges) {
        opt.push_back(optimal_value(ph, r, g));
        t.hi("truncation_gap", std::abs(gauge_eval(g, cp.span()) - opt.back()));
      }

      ConjugatorOptions opts;
      for (int s = 0; s < feasible_per; ++s) {
        FeasibleConjugator fc;
        try {
          fc = random_feasible_conjugator(rng, a, dec, r, opts);
        } catch (const GenerationExhausted& ex) {
          t.add("skipped", 1);
          continue;
        }
        // Once global sampling exhausts for this (A, r), use the local route only.
        if (!fc.from_rejection && opts.use_rejection) opts.use_rejection = false;
        t.add("generated", 1);
        t.add(fc.from_rejection ? "from_rejection" : "from_perturbation", 1);
        if (!fc.report.feasible()) {
          t.add("infeasible_returned", 1);
          continue;
        }
        // The objective is read off the factored form; forming E squares
        // cond(F) and the matrix route only agrees to that accuracy.
        const PhaseVector fp = conjugate_phases_factored(a, fc.factor, fc.half_phases);
        for (std::size_t k = 0; k < fc.report.conjugate_phases.size(); ++k) {
          t.hi("matrix_route_gap", std::abs(fp[k] - fc.report.conjugate_phases[k]));
        }
        for (std::size_t gi = 0; gi < gauges.size(); ++gi) {
          t.hi("beat", opt[gi] - gauge_eval(gauges[gi], fp.span()));
        }
      }
      t.add("requested", feasible_per);
    }
    return t;
  };
  SuiteResult out = run_trials("truncation_optimality", instances, trial);
  out.skipped = static_cast<int>(out.counts["skipped"]);
  const double coverage = out.counts["requested"] > 0 ? out.counts["generated"] / out.counts["requested"] : 1.0;
  out.maxima["coverage_shortfall"] = 1.0 - coverage;
  out.passed = clean(out) && out.max("truncation_gap") <= kTruncationTol &&
               out.max("phase_identity_gap") <= kTruncationTol && out.max("beat") <= kTruncationTol &&
               out.counts["infeasible_returned"] == 0 && coverage >= kMinCoverage;
  return out;
}

SuiteResult geometric_mean_suite(std::uint64_t seed, int pairs) {
  auto trial = [&](int i) {
    Trial t;
    Rng rng(derive_seed(seed ^ kSaltMeans, i));
    GeneratorSpec spec;
    spec.n = 1 + i % 8;
    spec.sector = SectorInterval::open(-pi / 2, pi / 2);
    const Matrix m = random_sectorial(rng, spec);
    const Matrix n = random_sectorial(rng, spec);
    const double scale = spectral_norm(m) + spectral_norm(n);

    const Matrix g = geometric_mean(m, n);
    const double gn = g.norm();
    t.hi("riccati_rel", riccati_residual(g, m, n) / scale);
    t.hi("quadrature_rel", (geometric_mean_quadrature(m, n) - g).norm() / gn);
    t.hi("symmetry_rel", (geometric_mean(n, m) - g).norm() / gn);

    const Matrix s = random_nonsingular(rng, spec.n, 10.0);
    const Matrix lhs = geometric_mean(s.adjoint() * m * s, s.adjoint() * n * s);
    const Matrix rhs = s.adjoint() * g * s;
    t.hi("congruence_rel", (lhs - rhs).norm() / rhs.norm());

    // Phases of the mean stay inside the joint hull.
    const PhaseVector pm = phases(m), pn = phases(n), pg = phases(g);
    const double lo = std::min(pm.min(), pn.min()), hi = std::max(pm.max(), pn.max());
    t.hi("hull_excess", std::max(pg.max() - hi, lo - pg.min()));
    return t;
  };
  SuiteResult out = run_trials("geometric_mean", pairs, trial);
  out.passed = clean(out) && out.max("riccati_rel") <= kRiccatiRelTol &&
               out.max("quadrature_rel") <= kQuadratureRelTol &&
               out.max("symmetry_rel") <= kSymmetryRelTol &&
               out.max("congruence_rel") <= kCongruenceRelTol && out.max("hull_excess") <= kPhaseTol;
  return out;
}

SuiteResult symmetric_polar_suite(std::uint64_t seed, int instances) {
  auto trial = [&](int i) {
    Trial t;
    Rng rng(derive_seed(seed ^ kSaltPolar, i));
    GeneratorSpec spec;
    spec.n = 1 + i % 8;
    spec.sector = SectorInterval::open(-pi / 2, pi / 2);
    const Matrix a = random_sectorial(rng, spec);
    const SymmetricPolarDecomposition sp = symmetric_polar(a);
    const Eigen::Index n = a.rows();
    t.hi("reconstruction_rel", (sp.reconstruct() - a).norm() / a.norm());
    t.hi("unitarity", (sp.u.adjoint() * sp.u - Matrix::Identity(n, n)).norm());
    t.hi("p_hermitian", (sp.p - sp.p.adjoint()).norm());
    Eigen::SelfAdjointEigenSolver<Matrix> es(sp.p, Eigen::EigenvaluesOnly);
    t.lo("lambda_min_p", es.eigenvalues()(0));

    const std::vector<double> pu = unitary_angles(sp.u);
    const PhaseVector pa = phases(a);
    for (Eigen::Index k = 0; k < n; ++k) t.hi("phase_gap", std::abs(pu[k] - pa[k]));

    const Matrix p_gm = symmetric_polar_p_via_geometric_mean(a);
    t.hi("p_route_gap_rel", (p_gm - sp.p).norm() / sp.p.norm());
    return t;
  };
  SuiteResult out = run_trials("symmetric_polar", instances, trial);
  out.passed = clean(out) && out.max("reconstruction_rel") <= kPolarRelTol &&
               out.max("unitarity") <= kUnitarityTol && out.min("lambda_min_p") > 0.0 &&
               out.max("phase_gap") <= kPhaseTol;
  return out;
}

SuiteResult geodesic_suite(std::uint64_t seed, int instances, int samples_per, int brute_force) {
  const double edge = pi / 2 - 1e-3;
  auto trial = [&](int i) {
    Trial t;
    Rng rng(derive_seed(seed ^ kSaltGeodesic, i));
    const int n = 2 + i % 5;
    GeneratorSpec spec;
    spec.n = n;
    spec.sector = SectorInterval::open(-pi / 2, pi / 2);

    // Majorization against random feasible unitary U_r.
    const Matrix u = random_unitary_sectorial(rng, spec);
    for (int r = 0; r <= n; ++r) {
      const GeodesicApproximant best = geodesic_truncation(u, r);
      const std::vector<double> opt = abs_values(unitary_angles(u.adjoint() * best.u_hat));
      for (int s = 0; s < samples_per; ++s) {
        const Matrix ur = random_prank_unitary(rng, n, r, -edge, edge);
        const std::vector<double> cand = abs_values(unitary_angles(u.adjoint() * ur));
        t.hi("majorization_excess", majorization_excess(opt, cand));
        t.add("majorization_samples", 1);
      }
    }

    // Brute force on general sectorial A, n = 2, 3 only.
    if (n > 3) return t;
    const int per_trial = brute_force / std::max(1, (instances * 2 + 4) / 5);
    const std::vector<GaugeSpec> gauges{MaxGauge{}, SumGauge{}, KyFan{1}, LpGauge{2.0}};
    GeodesicConfig cfg;
    cfg.gauge_p = MaxGauge{};
    cfg.gauge_u = gauges[static_cast<std::size_t>(i) % gauges.size()];
    const Matrix a = random_sectorial(rng, spec);
    const SymmetricPolarDecomposition sa = symmetric_polar(a, cfg);
    const Matrix log_p = log_hpd(sa.p);
    for (int s = 0; s < per_trial; ++s) {
      const int r = s % (n + 1);
      const GeodesicApproximant best = geodesic_truncation(a, r, cfg);
      const GeodesicTerms own = geodesic_terms(sa, symmetric_polar(best.a_hat, cfg), cfg);
      t.hi("truncation_value_gap", std::abs(own.distance() - best.value));
      t.hi("p_component", own.p_term);

      // Candidates: P near or equal to P_A, U either random or a perturbed optimum.
      const double eps_p = (s % 3 == 0) ? 0.0 : uniform(rng, 0.0, 0.5);
      const Matrix p = eps_p == 0.0 ? sa.p : exp_hermitian(log_p + eps_p * random_hermitian(rng, n));
      Matrix ur;
      if (s % 2 == 0) {
        ur = random_prank_unitary(rng, n, r, -edge, edge);
      } else {
        // Jiggle the kept phases and tilt the eigenbasis; zero phases stay zero.
        Vector d = Vector::Ones(n);
        for (int k = 0; k < n; ++k) {
          if (best.kept_phases[k] == 0.0) continue;
          d(k) = expj(std::clamp(best.kept_phases[k] + uniform(rng, -0.3, 0.3), -edge, edge));
        }
        const Matrix w = exp_hermitian(uniform(rng, 0.0, 0.2) * random_hermitian(rng, n));
        Eigen::HouseholderQR<Matrix> qr(w * best.source.basis);
        const Matrix q = qr.householderQ();
        ur = q * d.asDiagonal() * q.adjoint();
      }
      const Matrix ar = p * ur * p;
      try {
        const double dist = geodesic_terms(sa, symmetric_polar(ar, cfg), cfg).distance();
        t.hi("brute_force_beat", best.value - dist);
        t.add("brute_force_samples", 1);
      } catch (const SectorError&) {
        t.add("brute_force_outside", 1);
      }
    }
    return t;
  };
  SuiteResult out = run_trials("geodesic_majorization", instances, trial);
  out.passed = clean(out) && out.max("majorization_excess") <= kMajorizationTol &&
               out.max("brute_force_beat") <= kBruteForceTol &&
               out.max("truncation_value_gap") <= kTruncationTol &&
               out.max("p_component") <= 1e-8;
  return out;
}

SuiteResult unitary_equivalence_suite(std::uint64_t seed, int instances) {
  auto trial = [&](int i) {
    Trial t;
    Rng rng(derive_seed(seed ^ kSaltUnitary, i));
    GeneratorSpec spec;
    spec.n = 1 + i % 6;
    spec.sector = SectorInterval::positive_imaginary();
    const Matrix a = random_unitary_sectorial(rng, spec);
    const std::vector<GaugeSpec> gauges{MaxGauge{}, SumGauge{}, KyFan{1}, LpGauge{2.0}};
    for (int r = 0; r <= spec.n; ++r) {
      for (const auto& g : gauges) {
        const UnitaryEquivalenceReport rep = unitary_equivalence_check(a, r, g);
        t.hi("mean_vs_formula", std::abs(rep.mean_objective - rep.formula_value));
        t.hi("geodesic_vs_formula", std::abs(rep.geodesic_optimum - rep.formula_value));
        t.hi("mean_vs_geodesic", std::abs(rep.mean_objective - rep.geodesic_optimum));
        t.hi("squared_attains", std::abs(rep.squared_distance - rep.geodesic_optimum));
        t.hi("e_unitarity", rep.e_unitarity);
      }
    }
    return t;
  };
  SuiteResult out = run_trials("unitary_equivalence", instances, trial);
  out.passed = clean(out) && out.max("mean_vs_formula") <= kTruncationTol &&
               out.max("geodesic_vs_formula") <= kTruncationTol &&
               out.max("mean_vs_geodesic") <= kTruncationTol &&
               out.max("squared_attains") <= kTruncationTol && out.max("e_unitarity") <= kTruncationTol;
  return out;
}

SuiteResult phase_sum_suite(std::uint64_t seed, int pairs, int samples) {
  // Ordered pairs: A, B in C[theta, theta + pi) with min phase of A >= max phase of B.
  auto ordered_pair = [&](int i) {
    Trial t;
    Rng rng(derive_seed(seed ^ kSaltPhaseSums, i));
    const int n = 1 + i % 8;
    const double theta = uniform(rng, -pi + 1e-3, 0.0);
    const double split = uniform(rng, theta + 0.01, theta + pi - 0.01);
    GeneratorSpec sb;
    sb.n = n;
    sb.sector = {theta, split, true, true};
    GeneratorSpec sa = sb;
    sa.sector = {split, theta + pi, true, false};
    const Matrix b = random_sectorial(rng, sb);
    const Matrix a = random_sectorial(rng, sa);
    for (int m = 1; m <= n; ++m) {
      t.hi("superadditivity_deficit", phase_partial_sum(b, m) - phase_partial_sum(a + b, m));
    }
    return t;
  };
  SuiteResult out = run_trials("phase_sums", pairs, ordered_pair);

  // Variational characterization on C[0, pi).
  const int instances = std::max(1, pairs / 10);
  auto variational = [&](int i) {
    Trial t;
    Rng rng(derive_seed(seed ^ kSaltPhaseSums, 100000 + i));
    GeneratorSpec spec;
    spec.n = 1 + i % 8;
    spec.sector = SectorInterval::positive_imaginary();
    const Matrix a = random_sectorial(rng, spec);
    const SectorialDecomposition dec = sectorial_decomposition(a);
    const Matrix t_inv = dec.t.partialPivLu().inverse();
    for (int m = 1; m <= spec.n; ++m) {
      const double psi = kyfan_phase(a, m);
      t.hi("attainment_gap", std::abs(psi_variational_value(a, t_inv.leftCols(m)) - psi));
    }
    for (int s = 0; s < samples; ++s) {
      const int m = 1 + s % spec.n;
      const Matrix x = complex_gaussian(rng, spec.n, m);
      t.hi("variational_excess", psi_variational_value(a, x) - kyfan_phase(a, m));
    }
    return t;
  };
  const SuiteResult var = run_trials("phase_sums_variational", instances, variational);
  for (const auto& [k, v] : var.maxima) out.maxima[k] = v;
  for (const auto& [k, v] : var.counts) out.counts[k] += v;
  out.notes.insert(out.notes.end(), var.notes.begin(), var.notes.end());
  out.trials += var.trials;
  out.passed = clean(out) && out.max("superadditivity_deficit") <= kTruncationTol &&
               out.max("attainment_gap") <= kTruncationTol &&
               out.max("variational_excess") <= kTruncationTol;
  return out;
}

SuiteResult schmidt_mirsky_suite(std::uint64_t seed, int instances) {
  auto trial = [&](int i) {
    Trial t;
    Rng rng(derive_seed(seed ^ kSaltSvd, i));
    const int n = 1 + i % 8;
    const Matrix a = complex_gaussian(rng, n, n);
    std::vector<GaugeSpec> gauges = suite_gauges(n);
    gauges.push_back(LpGauge{1.5});
    gauges.push_back(LpGauge{2.0});
    gauges.push_back(LpGauge{3.0});
    for (int r = 0; r <= n; ++r) {
      const Matrix diff = a - svd_truncate(a, r);
      for (const auto& g : gauges) {
        t.hi("schmidt_mirsky_gap", std::abs(ui_norm(g, diff) - schmidt_mirsky_value(a, r, g)));
      }
    }
    return t;
  };
  SuiteResult out = run_trials("schmidt_mirsky", instances, trial);
  out.passed = clean(out) && out.max("schmidt_mirsky_gap") <= kSchmidtMirskyTol;
  return out;
}

bool Summary::passed() const {
  return std::all_of(suites.begin(), suites.end(), [](const SuiteResult& s) { return s.passed; });
}

Summary verify_all(std::uint64_t seed, int trials) {
  auto pick = [trials](int fallback) { return trials > 0 ? trials : fallback; };
  Summary s;
  s.seed = seed;
  s.suites.push_back(worked_example_suite());
  s.suites.push_back(boundary_figure_suite());
  s.suites.push_back(witness_suite());
  s.suites.push_back(truncation_suite(seed, pick(200)));
  s.suites.push_back(geometric_mean_suite(seed, pick(200)));
  s.suites.push_back(symmetric_polar_suite(seed, pick(200)));
  s.suites.push_back(geodesic_suite(seed, pick(40)));
  s.suites.push_back(unitary_equivalence_suite(seed, pick(100)));
  s.suites.push_back(phase_sum_suite(seed, pick(200)));
  s.suites.push_back(schmidt_mirsky_suite(seed, pick(100)));
  return s;
}

}  // namespace phaserank::verify
