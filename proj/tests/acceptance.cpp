// One PASS/FAIL line per acceptance criterion. Tolerances are pinned here,
// independent of the library's own suite thresholds.
//
// usage: acceptance <path to the phaserank CLI>

#include "phaserank/io.hpp"
#include "phaserank/randgen.hpp"
#include "phaserank/sectorial.hpp"
#include "phaserank/verify.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

using namespace phaserank;
namespace fs = std::filesystem;

namespace {

// The worked example and the prank example are quoted to two significant figures.
constexpr double kExamplePhaseTol = 0.005;  // in units of pi
constexpr int kMinBoundaryPoints = 360;
constexpr double kRankRatio = 1e-9;
constexpr double kTruncationTol = 1e-7;
constexpr double kRiccatiRel = 1e-8;
constexpr double kQuadratureRel = 1e-5;
constexpr double kSymmetryRel = 1e-8;
constexpr double kCongruenceRel = 1e-7;
constexpr double kPolarRel = 1e-8;
constexpr double kUnitarity = 1e-10;
constexpr double kPhaseTol = 1e-7;
constexpr double kMajorization = 1e-9;
constexpr double kBruteForce = 1e-6;
constexpr double kSchmidtMirsky = 1e-9;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string cli_path;
std::uint64_t seed = 42;

Matrix worked_example_a() {
  Matrix a = Matrix::Zero(2, 2);
  a(0, 0) = std::polar(1.0, pi / 3);
  a(1, 1) = std::polar(1.0, -pi / 4);
  return a;
}

Matrix worked_example_e() {
  Matrix w(2, 2);
  w << 0.6, 0.3, 0.2, 0.7;
  Matrix l = Matrix::Identity(2, 2);
  l(0, 0) = std::polar(1.0, pi / 6);
  return w.adjoint() * l * w;
}

bool no_errors(const verify::SuiteResult& s) { return s.counts.count("errors") == 0; }

std::string errors_note(const verify::SuiteResult& s) {
  return s.notes.empty() ? std::string{} : " first note: " + s.notes.front();
}

Outcome criterion1() {
  const Matrix a = worked_example_a();
  const Matrix e = worked_example_e();
  const PhaseVector ph = conjugate_phases(a, e);
  const double phi1 = ph[0] / pi, phi2 = ph[1] / pi;
  const double objective = std::max(std::abs(ph[0]), std::abs(ph[1]));
  const FeasibilityReport rep = is_feasible(a, e, 1, false);
  const bool pass = std::abs(phi1 + 0.055) <= kExamplePhaseTol &&
                    std::abs(phi2 + 0.22) <= kExamplePhaseTol && objective < pi / 4 &&
                    rep.feasible();
  return {pass, fmt::format("phases ({:.5f} pi, {:.5f} pi) vs (-0.055 pi, -0.22 pi) +- {} pi; "
                            "max-gauge objective {:.5f} pi < 0.25 pi; feasible(r=1) = {}",
                            phi1, phi2, kExamplePhaseTol, objective / pi, rep.feasible())};
}

Outcome criterion2() {
  const Matrix c = conjugate(worked_example_a(), worked_example_e());
  const fs::path dir = fs::temp_directory_path() / fmt::format("phaserank_acc_{}", ::getpid());
  fs::create_directories(dir);
  const fs::path in = dir / "conjugate.json", out = dir / "points.csv";
  io::write_matrix_file(in, {c, "worked example conjugate"});
  const std::string cmd =
      fmt::format("\"{}\" nrange \"{}\" --samples 720 --out \"{}\"", cli_path, in.string(), out.string());
  const int rc = std::system(cmd.c_str());
  std::vector<cplx> pts;
  std::ifstream csv(out);
  std::string line;
  std::getline(csv, line);
  const bool header_ok = line == "theta,re,im";
  while (std::getline(csv, line)) {
    double t, re, im;
    if (std::sscanf(line.c_str(), "%lf,%lf,%lf", &t, &re, &im) == 3) pts.emplace_back(re, im);
  }
  fs::remove_all(dir);

  // The hull misses 0 iff the points leave an angular gap wider than pi.
  std::vector<double> angles;
  for (const cplx& z : pts) angles.push_back(std::arg(z));
  std::sort(angles.begin(), angles.end());
  double gap = angles.empty() ? 0.0 : angles.front() + 2 * pi - angles.back();
  for (std::size_t k = 1; k < angles.size(); ++k) gap = std::max(gap, angles[k] - angles[k - 1]);
  const bool hull_ok = gap > pi;

  // Consistency with the certificate: every point on the positive side of
  // its separating line.
  const CertificateResult cert = sectoriality_certificate(c);
  bool consistent = is_certificate(cert);
  if (consistent) {
    const double theta = std::get<SectorialityCertificate>(cert).theta;
    for (const cplx& z : pts) consistent = consistent && (std::polar(1.0, -theta) * z).real() > 0.0;
  }
  const bool pass = rc == 0 && header_ok && static_cast<int>(pts.size()) >= kMinBoundaryPoints &&
                    hull_ok && consistent;
  return {pass, fmt::format("exit {}; {} points; widest angular gap {:.4f} pi; certificate "
                            "consistent = {}",
                            rc, pts.size(), gap / pi, consistent)};
}

Outcome criterion3() {
  Matrix a = Matrix::Zero(2, 2);
  a(0, 0) = cplx(11, 1);
  a(1, 1) = cplx(11, -1);
  Matrix m(2, 2);
  m << 10, -std::sqrt(2.0), -std::sqrt(2.0), 10;
  const int p = prank(a);
  const RealVector s = singular_values(a - m);
  const bool pass = p == 2 && s(1) < kRankRatio * s(0);
  return {pass, fmt::format("prank {}; singular values of A - M: {:.3e}, {:.3e}", p, s(0), s(1))};
}

Outcome criterion4() {
  const auto s = verify::truncation_suite(seed, 200, 50);
  const double requested = s.counts.count("requested") ? s.counts.at("requested") : 0.0;
  const double generated = s.counts.count("generated") ? s.counts.at("generated") : 0.0;
  const double infeasible = s.counts.count("infeasible_returned") ? s.counts.at("infeasible_returned") : 0.0;
  const bool pass = no_errors(s) && s.max("truncation_gap") <= kTruncationTol &&
                    s.max("phase_identity_gap") <= kTruncationTol && s.max("beat") <= kTruncationTol &&
                    generated == requested && infeasible == 0;
  return {pass, fmt::format("truncation gap {:.2e}, phase identity gap {:.2e}, max beat {:.2e} "
                            "(tol {:.0e}); {} of {} feasible E generated{}",
                            s.max("truncation_gap"), s.max("phase_identity_gap"), s.max("beat"),
                            kTruncationTol, generated, requested, errors_note(s))};
}

Outcome criterion5() {
  const auto s = verify::geometric_mean_suite(seed, 200);
  const bool pass = no_errors(s) && s.max("riccati_rel") <= kRiccatiRel &&
                    s.max("quadrature_rel") <= kQuadratureRel && s.max("symmetry_rel") <= kSymmetryRel &&
                    s.max("congruence_rel") <= kCongruenceRel;
  return {pass, fmt::format("riccati {:.2e}, quadrature {:.2e}, symmetry {:.2e}, congruence {:.2e}{}",
                            s.max("riccati_rel"), s.max("quadrature_rel"), s.max("symmetry_rel"),
                            s.max("congruence_rel"), errors_note(s))};
}

Outcome criterion6() {
  const auto s = verify::symmetric_polar_suite(seed, 200);
  const bool pass = no_errors(s) && s.max("reconstruction_rel") <= kPolarRel &&
                    s.max("unitarity") <= kUnitarity && s.min("lambda_min_p") > 0.0 &&
                    s.max("phase_gap") <= kPhaseTol;
  return {pass, fmt::format("||PUP - A||/||A|| {:.2e}, ||U*U - I|| {:.2e}, min lambda(P) {:.3f}, "
                            "phase gap {:.2e}{}",
                            s.max("reconstruction_rel"), s.max("unitarity"), s.min("lambda_min_p"),
                            s.max("phase_gap"), errors_note(s))};
}

Outcome criterion7() {
  const auto s = verify::geodesic_suite(seed, 40, 500, 10000);
  const double samples = s.counts.count("brute_force_samples") ? s.counts.at("brute_force_samples") : 0.0;
  const bool pass = no_errors(s) && s.max("majorization_excess") <= kMajorization &&
                    s.max("brute_force_beat") <= kBruteForce && samples >= 10000;
  return {pass, fmt::format("majorization excess {:.2e} over {} samples; brute-force beat {:.2e} "
                            "over {} candidates{}",
                            s.max("majorization_excess"), s.counts.at("majorization_samples"),
                            s.max("brute_force_beat"), samples, errors_note(s))};
}

Outcome criterion8() {
  const auto s = verify::unitary_equivalence_suite(seed, 100);
  const bool pass = no_errors(s) && s.max("mean_vs_geodesic") <= kTruncationTol &&
                    s.max("mean_vs_formula") <= kTruncationTol &&
                    s.max("geodesic_vs_formula") <= kTruncationTol &&
                    s.max("squared_attains") <= kTruncationTol;
  return {pass, fmt::format("mean vs geodesic {:.2e}, vs closed form {:.2e} / {:.2e}, squared "
                            "truncation {:.2e}{}",
                            s.max("mean_vs_geodesic"), s.max("mean_vs_formula"),
                            s.max("geodesic_vs_formula"), s.max("squared_attains"), errors_note(s))};
}

Outcome criterion9() {
  const auto s = verify::phase_sum_suite(seed, 200, 500);
  const bool pass = no_errors(s) && s.max("superadditivity_deficit") <= kTruncationTol &&
                    s.max("attainment_gap") <= kTruncationTol &&
                    s.max("variational_excess") <= kTruncationTol;
  return {pass, fmt::format("superadditivity deficit {:.2e}, attainment gap {:.2e}, variational excess {:.2e}{}",
                            s.max("superadditivity_deficit"), s.max("attainment_gap"), s.max("variational_excess"),
                            errors_note(s))};
}

Outcome criterion10() {
  const auto s = verify::schmidt_mirsky_suite(seed, 100);
  const bool pass = no_errors(s) && s.max("schmidt_mirsky_gap") <= kSchmidtMirsky;
  return {pass, fmt::format("max gap {:.2e}{}", s.max("schmidt_mirsky_gap"), errors_note(s))};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: %s <phaserank cli>\n", argv[0]);
    return 2;
  }
  cli_path = argv[1];
  seed = seed_from_env(42);

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"worked example reproduction", criterion1},
      {"numerical range boundary of the worked example conjugate", criterion2},
      {"prank 2 matrix with a rank-1 positive definite gap", criterion3},
      {"half truncation optimality", criterion4},
      {"geometric mean", criterion5},
      {"symmetric polar decomposition", criterion6},
      {"geodesic truncation majorization and brute force", criterion7},
      {"unitary case: mean and geodesic formulations agree", criterion8},
      {"phase partial sums and variational form", criterion9},
      {"Schmidt-Mirsky baseline", criterion10},
  };
  int failed = 0;
  std::printf("seed %llu\n", static_cast<unsigned long long>(seed));
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("criterion %2zu %s: %s [%.1fs] %s\n", i + 1, o.pass ? "PASS" : "FAIL",
                criteria[i].first.c_str(), secs, o.detail.c_str());
    std::fflush(stdout);
    failed += o.pass ? 0 : 1;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
