#include "phaserank/randgen.hpp"

#include "phaserank/lowprank.hpp"
#include "phaserank/sectorial.hpp"

#include <boost/random/normal_distribution.hpp>
#include <boost/random/uniform_real_distribution.hpp>
#include <fmt/format.h>

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <cstring>

namespace phaserank {
namespace {

constexpr double kPhaseMargin = 1e-3;
constexpr double kRejectionConditionCap = 10.0;

// Im part lower bound; a cheap necessary test for W(C) in the upper half plane.
double imag_lambda_min(const Matrix& c) {
  const Matrix k = (c - c.adjoint()) / cplx(0.0, 2.0);
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitianize(k), Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

Matrix diag_phases(const std::vector<double>& ph) {
  Vector d(static_cast<Eigen::Index>(ph.size()));
  for (std::size_t k = 0; k < ph.size(); ++k) d(k) = expj(ph[k]);
  return d.asDiagonal();
}

// E^{-1} A E^{-1}, or nothing when E is numerically singular.
std::optional<Matrix> try_conjugate(const Matrix& a, const Matrix& e) {
  Eigen::PartialPivLU<Matrix> lu(e);
  const Matrix e_inv = lu.inverse();
  if (!e_inv.allFinite()) return std::nullopt;
  return Matrix(e_inv * a * e_inv);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t z = master + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t seed_from_env(std::uint64_t fallback) {
  const char* s = std::getenv("PHASERANK_SEED");
  if (s == nullptr) return fallback;
  std::uint64_t v = 0;
  const char* end = s + std::strlen(s);
  const auto [ptr, ec] = std::from_chars(s, end, v);
  if (ec != std::errc() || ptr != end) return fallback;
  return v;
}

double uniform(Rng& rng, double lo, double hi) {
  return boost::random::uniform_real_distribution<double>(lo, hi)(rng);
}

cplx complex_normal(Rng& rng) {
  boost::random::normal_distribution<double> nd(0.0, std::sqrt(0.5));
  const double re = nd(rng);
  const double im = nd(rng);
  return {re, im};
}

Matrix complex_gaussian(Rng& rng, Eigen::Index rows, Eigen::Index cols) {
  Matrix z(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) z(i, j) = complex_normal(rng);
  return z;
}

Matrix haar_unitary(Rng& rng, int n) {
  if (n < 1) throw InvalidInput("haar_unitary: n must be positive");
  const Matrix z = complex_gaussian(rng, n, n);
  Eigen::HouseholderQR<Matrix> qr(z);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int k = 0; k < n; ++k) {
    const double m = std::abs(r(k, k));
    if (m > 0) q.col(k) *= r(k, k) / m;
  }
  return q;
}

Matrix random_nonsingular(Rng& rng, int n, double condition_cap) {
  if (!(condition_cap >= 1.0)) throw InvalidInput("random_nonsingular: condition_cap must be >= 1");
  const Matrix u1 = haar_unitary(rng, n);
  Vector s(n);
  const double top = std::log(condition_cap);
  for (int k = 0; k < n; ++k) s(k) = std::exp(uniform(rng, 0.0, top));
  const Matrix u2 = haar_unitary(rng, n);
  return u1 * s.asDiagonal() * u2;
}

std::vector<double> random_phases(Rng& rng, const GeneratorSpec& spec) {
  if (spec.n < 1) throw InvalidInput("generator: n must be positive");
  if (!spec.sector.valid()) throw InvalidInput("generator: invalid sector");
  const double lo = spec.sector.alpha + kPhaseMargin;
  const double hi = spec.sector.beta - kPhaseMargin;
  if (!(hi > lo)) throw InvalidInput("generator: sector too narrow for the phase margin");

  int drawn = spec.n;
  if (spec.prank_cap) {
    if (*spec.prank_cap < 0 || *spec.prank_cap > spec.n) {
      throw InvalidInput(fmt::format("generator: prank_cap {} outside 0..{}", *spec.prank_cap, spec.n));
    }
    drawn = *spec.prank_cap;
    if (drawn < spec.n && !spec.sector.contains(0.0, 0.0, 0.0)) {
      throw InvalidInput("generator: prank_cap < n needs phase 0 inside the sector");
    }
  }
  std::vector<double> ph(spec.n, 0.0);
  for (int k = 0; k < drawn; ++k) ph[k] = uniform(rng, lo, hi);
  return ph;
}

Matrix random_sectorial(Rng& rng, const GeneratorSpec& spec) {
  const std::vector<double> ph = random_phases(rng, spec);
  const Matrix t = random_nonsingular(rng, spec.n, spec.condition_cap);
  return t.adjoint() * diag_phases(ph) * t;
}

Matrix random_sectorial(const GeneratorSpec& spec) {
  Rng rng(spec.seed);
  return random_sectorial(rng, spec);
}

Matrix random_unitary_sectorial(Rng& rng, const GeneratorSpec& spec) {
  const std::vector<double> ph = random_phases(rng, spec);
  const Matrix q = haar_unitary(rng, spec.n);
  return q * diag_phases(ph) * q.adjoint();
}

Matrix random_unitary_sectorial(const GeneratorSpec& spec) {
  Rng rng(spec.seed);
  return random_unitary_sectorial(rng, spec);
}

namespace {

FeasibleConjugator draw_conjugator(Rng& rng, const Matrix& a, const SectorialDecomposition* given,
                                   int r, const ConjugatorOptions& opts) {
  require_square_finite(a, "random_feasible_conjugator");
  const auto n = static_cast<int>(a.rows());
  if (r < 0 || r > n) throw InvalidInput("random_feasible_conjugator: r outside 0..n");

  FeasibleConjugator out;
  auto accept = [&](const Matrix& e) {
    out.report = is_feasible(a, e, r, true);
    return out.report.feasible();
  };

  if (opts.use_rejection) {
    for (int attempt = 0; attempt < opts.max_rejects; ++attempt) {
      std::vector<double> ph(n, 0.0);
      for (int k = 0; k < r; ++k) ph[k] = uniform(rng, -pi / 2 + kPhaseMargin, pi / 2 - kPhaseMargin);
      const Matrix s = random_nonsingular(rng, n, kRejectionConditionCap);
      const Matrix e = s.adjoint() * diag_phases(ph) * s;
      const auto c = try_conjugate(a, e);
      if (c && imag_lambda_min(*c) > 0.0 && accept(e)) {
        out.e = e;
        out.factor = s;
        out.half_phases = ph;
        out.from_rejection = true;
        out.rejects = attempt;
        return out;
      }
    }
    out.rejects = opts.max_rejects;
  }

  std::optional<SectorialDecomposition> own;
  if (given == nullptr) own = sectorial_decomposition(a);
  const SectorialDecomposition& dec = given != nullptr ? *given : *own;
  if (static_cast<int>(dec.phases.size()) != n) {
    throw InvalidInput("random_feasible_conjugator: decomposition does not match A");
  }
  std::vector<double> half(n, 0.0);
  if (opts.max_perturbation == 0.0) {
    for (int k = 0; k < r; ++k) half[k] = 0.5 * dec.phases[k];
    out.e = dec.t.adjoint() * diag_phases(half) * dec.t;
    out.factor = dec.t;
    out.half_phases = half;
    if (!accept(out.e)) throw GenerationExhausted("random_feasible_conjugator: canonical truncation infeasible");
    return out;
  }
  for (int k = 0; k < r; ++k) half[k] = uniform(rng, 0.0, 1.0) * 0.5 * dec.phases[k];
  const Matrix l = diag_phases(half);

  Matrix s = complex_gaussian(rng, n, n);
  s /= spectral_norm(s);
  const Matrix id = Matrix::Identity(n, n);

  double eps = opts.max_perturbation;
  for (int step = 0; step <= opts.bisection_steps; ++step, eps *= 0.5) {
    const Matrix tp = dec.t * (id + eps * s);
    const Matrix e = tp.adjoint() * l * tp;
    const auto c = try_conjugate(a, e);
    if (!c) continue;
    if (imag_lambda_min(*c) < -1e-8 * c->norm()) continue;
    if (accept(e)) {
      out.e = e;
      out.factor = tp;
      out.half_phases = half;
      out.epsilon = eps;
      return out;
    }
  }
  const Matrix e = dec.t.adjoint() * l * dec.t;
  if (accept(e)) {
    out.e = e;
    out.factor = dec.t;
    out.half_phases = half;
    out.epsilon = 0.0;
    return out;
  }
  throw GenerationExhausted(fmt::format(
      "random_feasible_conjugator: no feasible E after {} rejects and {} bisection steps",
      out.rejects, opts.bisection_steps));
}

}  // namespace

FeasibleConjugator random_feasible_conjugator(Rng& rng, const Matrix& a, int r,
                                              const ConjugatorOptions& opts) {
  return draw_conjugator(rng, a, nullptr, r, opts);
}

FeasibleConjugator random_feasible_conjugator(Rng& rng, const Matrix& a,
                                              const SectorialDecomposition& dec, int r,
                                              const ConjugatorOptions& opts) {
  return draw_conjugator(rng, a, &dec, r, opts);
}

FeasibleConjugator random_feasible_conjugator(const Matrix& a, int r, const GeneratorSpec& spec,
                                              const ConjugatorOptions& opts) {
  Rng rng(spec.seed);
  return random_feasible_conjugator(rng, a, r, opts);
}

}  // namespace phaserank
