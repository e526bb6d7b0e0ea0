// phaserank command line: analysis, boundary sampling, low phase-rank
// approximation, geodesic distances and the reproduction checks.
//
// Exit codes: 0 success (verify-paper: all suites passed), 1 verification
// failure, 2 input error (bad file, bad arguments, matrix outside the domain
// of the requested operation).

#include "phaserank/geodesic.hpp"
#include "phaserank/io.hpp"
#include "phaserank/randgen.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>

using namespace phaserank;
using io::Json;

namespace {

constexpr int kExitVerification = 1;
constexpr int kExitInput = 2;
constexpr std::uint64_t kDefaultSeed = 42;

void emit(const Json& j) { std::cout << j.dump(2) << '\n'; }

Matrix load(const std::string& path) { return io::read_matrix_file(path).a; }

struct GeodesicArgs {
  std::string gauge_p = "max";
  std::string gauge_u = "max";
  double alpha = 0.0;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--gaugeP", gauge_p, "gauge on the P term: max|sum|kyfan:k|lp:p");
    cmd->add_option("--gaugeU", gauge_u, "gauge on the U term");
    cmd->add_option("--alpha", alpha, "window center, |alpha| < pi/2");
  }
  GeodesicConfig config() const {
    GeodesicConfig cfg;
    cfg.gauge_p = parse_gauge(gauge_p);
    cfg.gauge_u = parse_gauge(gauge_u);
    cfg.alpha = alpha;
    return cfg;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Phase-rank analysis of sectorial matrices"};
  app.require_subcommand(1);

  std::string input, input_b, out_path, gauge = "max", compare;
  double tol = kZeroPhaseTol;
  int samples = kDefaultGridPoints;
  int r = 0;
  int trials = 0;
  bool allow_any = false;
  std::optional<std::uint64_t> seed;
  GeodesicArgs geo;

  auto* analyze = app.add_subcommand("analyze", "sectoriality, canonical phases and prank");
  analyze->add_option("matrix", input, "matrix file (JSON)")->required();
  analyze->add_option("--tol", tol, "zero-phase tolerance");

  auto* nrange = app.add_subcommand("nrange", "boundary points of the numerical range as CSV");
  nrange->add_option("matrix", input)->required();
  nrange->add_option("--samples", samples, "number of support angles")->check(CLI::Range(8, 1 << 20));
  nrange->add_option("--out", out_path, "CSV file (default stdout)");

  auto* approx = app.add_subcommand("approx", "low phase-rank approximation by half truncation");
  approx->add_option("matrix", input)->required();
  approx->add_option("--r", r, "target phase-rank")->required();
  approx->add_option("--gauge", gauge, "max|sum|kyfan:k|lp:p");
  approx->add_flag("--allow-any", allow_any, "accept matrices outside C[0, pi) (feasibility only)");

  auto* geodesic = app.add_subcommand("geodesic", "geodesic distance between two matrices");
  geodesic->add_option("A", input)->required();
  geodesic->add_option("B", input_b)->required();
  geo.add_to(geodesic);

  auto* gapprox = app.add_subcommand("geodesic-approx", "low phase-rank approximation in the geodesic distance");
  gapprox->add_option("matrix", input)->required();
  gapprox->add_option("--r", r)->required();
  geo.add_to(gapprox);

  auto* witness = app.add_subcommand("witness", "R = A - T*T and M = T*T, with rank/prank comparison");
  witness->add_option("matrix", input)->required();
  witness->add_option("--compare", compare, "also report the rank of A - M for this M");

  auto* verify_cmd = app.add_subcommand("verify-paper", "reproduction checks and randomized suites");
  verify_cmd->add_option("--seed", seed, "master seed (default $PHASERANK_SEED, else 42)");
  verify_cmd->add_option("--trials", trials, "override every randomized instance count")
      ->check(CLI::NonNegativeNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  try {
    if (*analyze) {
      emit(io::to_json(io::analyze(load(input), tol)));
    } else if (*nrange) {
      const BoundaryPointSet b = boundary(load(input), samples);
      if (out_path.empty()) {
        io::write_boundary_csv(std::cout, b);
      } else {
        std::ofstream out(out_path);
        if (!out) throw InvalidInput("cannot open " + out_path + " for writing");
        io::write_boundary_csv(out, b);
      }
    } else if (*approx) {
      const Matrix a = load(input);
      const GaugeSpec g = parse_gauge(gauge);
      const TruncationApproximant t = truncation_sp(a, r);
      const bool pi_class = SectorInterval::positive_imaginary().contains(t.source.phases);
      if (!pi_class && !allow_any) {
        throw SectorError("approx: matrix is not positive-imaginary (phases outside [0, pi)); "
                          "pass --allow-any for a feasibility-only report");
      }
      Json j;
      j["r"] = r;
      j["gauge"] = gauge_name(g);
      j["phases"] = t.source.phases.values();
      j["e"] = io::to_json(io::MatrixFile{t.e, "truncation"});
      const FeasibilityReport rep = is_feasible(a, t.e, r, pi_class, g);
      j["feasibility"] = io::to_json(rep);
      j["conjugate_phases"] = rep.conjugate_phases;
      j["objective"] = rep.objective ? Json(*rep.objective) : Json(nullptr);
      j["optimal_value"] = pi_class ? Json(optimal_value(t.source.phases, r, g)) : Json(nullptr);
      emit(j);
    } else if (*geodesic) {
      const GeodesicConfig cfg = geo.config();
      const auto pa = symmetric_polar(load(input), cfg);
      const auto pb = symmetric_polar(load(input_b), cfg);
      const GeodesicTerms terms = geodesic_terms(pa, pb, cfg);
      emit({{"distance", terms.distance()},
            {"p_term", terms.p_term},
            {"u_term", terms.u_term},
            {"alpha", cfg.alpha},
            {"gauge_p", gauge_name(cfg.gauge_p)},
            {"gauge_u", gauge_name(cfg.gauge_u)}});
    } else if (*gapprox) {
      const GeodesicConfig cfg = geo.config();
      const GeodesicApproximant ap = geodesic_truncation(load(input), r, cfg);
      emit({{"r", r},
            {"a_hat", io::to_json(io::MatrixFile{ap.a_hat, "geodesic truncation"})},
            {"optimal_value", ap.value},
            {"unique", ap.unique},
            {"u_phases", ap.source.phases},
            {"kept_phases", ap.kept_phases}});
    } else if (*witness) {
      const Matrix a = load(input);
      const RankWitness w = prank_rank_witness(a);
      Json j{{"r", io::to_json(io::MatrixFile{w.r, "R = A - M"})},
             {"m", io::to_json(io::MatrixFile{w.m, "M = T*T"})},
             {"rank_r", w.rank_r},
             {"prank", w.prank}};
      if (!compare.empty()) {
        const Matrix m = load(compare);
        if (m.rows() != a.rows()) throw InvalidInput("witness: --compare matrix has the wrong size");
        const Matrix diff = a - m;
        const RealVector s = singular_values(diff);
        j["compare"] = {{"rank_a_minus_m", numerical_rank(diff)},
                        {"singular_values", std::vector<double>(s.data(), s.data() + s.size())}};
      }
      emit(j);
    } else if (*verify_cmd) {
      const std::uint64_t s = seed ? *seed : seed_from_env(kDefaultSeed);
      const verify::Summary summary = verify::verify_all(s, trials);
      emit(io::to_json(summary));
      return summary.passed() ? 0 : kExitVerification;
    }
  } catch (const Error& e) {
    // Parse errors, bad arguments, and matrices outside the operation's
    // domain (not sectorial, wrong sector, eigenvalue on the branch cut).
    std::cerr << io::error_json(e).dump(2) << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << io::error_json(e).dump(2) << '\n';
    return kExitVerification;
  }
  return 0;
}
