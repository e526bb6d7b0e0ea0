#include "phaserank/geodesic.hpp"

#include "phaserank/lowprank.hpp"
#include "phaserank/means.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace phaserank {
namespace {

bool in_window(double lo, double hi, const SectorInterval& w, double tol) {
  const bool lo_ok = w.alpha_closed ? lo >= w.alpha - tol : lo > w.alpha + tol;
  const bool hi_ok = w.beta_closed ? hi <= w.beta + tol : hi < w.beta - tol;
  return lo_ok && hi_ok;
}

std::vector<double> abs_desc(const std::vector<double>& x) {
  std::vector<double> out(x.size());
  std::transform(x.begin(), x.end(), out.begin(), [](double v) { return std::abs(v); });
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

}  // namespace

SectorInterval GeodesicConfig::window() const {
  if (!(std::abs(alpha) < pi / 2)) {
    throw InvalidInput(fmt::format("geodesic: |alpha| = {} must be below pi/2", std::abs(alpha)));
  }
  return {alpha - pi / 2, alpha + pi / 2, edge == SectorEdge::ClosedLower,
          edge == SectorEdge::ClosedUpper};
}

SymmetricPolarDecomposition symmetric_polar(const Matrix& a, const GeodesicConfig& cfg) {
  const SectorInterval w = cfg.window();
  const SectorialDecomposition dec = sectorial_decomposition(a);

  // Canonical phases may sit one turn away from the window.
  double shift = 0.0;
  bool found = false;
  for (double s : {0.0, 2 * pi, -2 * pi}) {
    if (in_window(dec.phases.min() + s, dec.phases.max() + s, w, kStrictSectorMargin)) {
      shift = s;
      found = true;
      break;
    }
  }
  if (!found) {
    throw SectorError(fmt::format(
        "symmetric_polar: phases [{}, {}] not inside the window around alpha = {}",
        dec.phases.min(), dec.phases.max(), cfg.alpha));
  }

  const Eigen::Index n = a.rows();
  Eigen::JacobiSVD<Matrix> svd(dec.t, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Matrix& x = svd.matrixU();
  const Matrix& y = svd.matrixV();
  const Vector s = svd.singularValues().cast<cplx>();

  SymmetricPolarDecomposition out;
  out.alpha = cfg.alpha;
  out.p = hermitianize(y * s.asDiagonal() * y.adjoint());
  out.basis = y * x.adjoint();  // V* with V = X Y*
  out.phases.resize(n);
  Vector d(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    out.phases[k] = dec.phases[k] + shift;
    d(k) = expj(out.phases[k]);
  }
  out.u = out.basis * d.asDiagonal() * out.basis.adjoint();
  return out;
}

SymmetricPolarDecomposition symmetric_polar(const Matrix& a, double alpha) {
  GeodesicConfig cfg;
  cfg.alpha = alpha;
  return symmetric_polar(a, cfg);
}

Matrix symmetric_polar_p_via_geometric_mean(const Matrix& a, double alpha) {
  const Matrix b = expj(-alpha) * a;
  const Matrix g = hermitianize(geometric_mean(b, b.adjoint()));
  return hermitianize(principal_sqrt(g));
}

std::vector<double> unitary_angles(const Matrix& u) {
  Eigen::ComplexEigenSolver<Matrix> es(u, false);
  std::vector<double> out(u.rows());
  for (Eigen::Index i = 0; i < u.rows(); ++i) {
    out[i] = std::arg(es.eigenvalues()(i));
    if (pi - std::abs(out[i]) <= 1e-12) throw BranchError("unitary_angles: eigenvalue at -1");
  }
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

double GeodesicTerms::distance() const { return std::hypot(p_term, u_term); }

GeodesicTerms geodesic_terms(const SymmetricPolarDecomposition& a,
                             const SymmetricPolarDecomposition& b, const GeodesicConfig& cfg) {
  if (a.p.rows() != b.p.rows()) throw InvalidInput("geodesic_distance: dimension mismatch");
  const Matrix pa_inv = a.p.llt().solve(Matrix::Identity(a.p.rows(), a.p.cols()));
  const Matrix x = hermitianize(pa_inv * b.p * b.p * pa_inv);
  Eigen::SelfAdjointEigenSolver<Matrix> es(x, Eigen::EigenvaluesOnly);
  std::vector<double> logs(x.rows());
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    const double w = es.eigenvalues()(i);
    if (!(w > 0.0)) throw InvalidInput("geodesic_distance: P part lost definiteness");
    logs[i] = std::log(w);
  }
  GeodesicTerms t;
  t.p_term = gauge_eval(cfg.gauge_p, logs);
  t.u_term = gauge_eval(cfg.gauge_u, unitary_angles(a.u.adjoint() * b.u));
  return t;
}

double geodesic_distance(const Matrix& a, const Matrix& b, const GeodesicConfig& cfg) {
  if (a.rows() != b.rows()) throw InvalidInput("geodesic_distance: dimension mismatch");
  return geodesic_terms(symmetric_polar(a, cfg), symmetric_polar(b, cfg), cfg).distance();
}

double geodesic_optimal_value(const std::vector<double>& u_phases, int r, const GaugeSpec& g) {
  const auto n = static_cast<int>(u_phases.size());
  if (r < 0 || r > n) throw InvalidInput(fmt::format("geodesic: r = {} outside 0..{}", r, n));
  std::vector<double> tail = abs_desc(u_phases);
  std::fill(tail.begin(), tail.begin() + r, 0.0);
  return gauge_eval(g, tail);
}

double geodesic_optimal_value(const Matrix& a, int r, const GeodesicConfig& cfg) {
  return geodesic_optimal_value(symmetric_polar(a, cfg).phases, r, cfg.gauge_u);
}

GeodesicApproximant geodesic_truncation(const Matrix& a, int r, const GeodesicConfig& cfg,
                                        double tie_tol) {
  GeodesicApproximant out;
  out.source = symmetric_polar(a, cfg);
  const auto& ph = out.source.phases;
  const auto n = static_cast<int>(ph.size());
  if (r < 0 || r > n) throw InvalidInput(fmt::format("geodesic: r = {} outside 0..{}", r, n));

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int i, int j) { return std::abs(ph[i]) > std::abs(ph[j]); });

  out.kept_phases.assign(n, 0.0);
  for (int k = 0; k < r; ++k) out.kept_phases[order[k]] = ph[order[k]];
  Vector d(n);
  for (int k = 0; k < n; ++k) d(k) = expj(out.kept_phases[k]);
  const Matrix& v = out.source.basis;
  out.u_hat = v * d.asDiagonal() * v.adjoint();
  out.a_hat = out.source.p * out.u_hat * out.source.p;
  out.value = geodesic_optimal_value(ph, r, cfg.gauge_u);

  if (r > 0 && r < n) {
    const double boundary = std::abs(ph[order[r - 1]]);
    const double next = std::abs(ph[order[r]]);
    out.unique = next <= tie_tol || boundary - next > tie_tol;
  }
  return out;
}

double UnitaryEquivalenceReport::max_gap() const {
  return std::max({std::abs(mean_objective - formula_value),
                   std::abs(geodesic_optimum - formula_value),
                   std::abs(squared_distance - formula_value)});
}

bool UnitaryEquivalenceReport::passes(double tol) const {
  return max_gap() <= tol && e_unitarity <= tol;
}

UnitaryEquivalenceReport unitary_equivalence_check(const Matrix& a, int r, const GaugeSpec& g) {
  require_square_finite(a, "unitary_equivalence_check");
  const Eigen::Index n = a.rows();
  if ((a.adjoint() * a - Matrix::Identity(n, n)).norm() > 1e-8 * std::sqrt(double(n))) {
    throw InvalidInput("unitary_equivalence_check: matrix is not unitary");
  }
  const PhaseVector ph = phases(a);
  if (!SectorInterval::positive_imaginary().contains(ph)) {
    throw SectorError("unitary_equivalence_check: matrix is not positive-imaginary");
  }

  UnitaryEquivalenceReport rep;
  rep.alpha = 0.5 * ph.max();
  const Matrix e = truncation_sp(a, r).e;
  rep.e_unitarity = (e.adjoint() * e - Matrix::Identity(n, n)).norm();
  rep.formula_value = optimal_value(ph, r, g);
  rep.mean_objective = objective(a, e, g);

  GeodesicConfig cfg;
  cfg.gauge_p = g;
  cfg.gauge_u = g;
  cfg.alpha = rep.alpha;
  const GeodesicApproximant trunc = geodesic_truncation(a, r, cfg);
  rep.geodesic_optimum = trunc.value;
  const Matrix e2 = e * e;
  rep.squared_distance = geodesic_distance(a, e2, cfg);
  rep.squared_vs_truncation = (e2 - trunc.a_hat).norm();
  return rep;
}

}  // namespace phaserank
