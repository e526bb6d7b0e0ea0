#include "phaserank/sectorial.hpp"

#include "phaserank/kernels.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace phaserank {
namespace {

// Certificates need lambda_min clearly above eigensolver noise.
constexpr double kCertificateRelTol = 1e-12;
constexpr double kRefineStep = 1e-10;
// Once lambda_min certifies, refining further only sharpens cond(H) a little.
constexpr double kCertifiedStep = 1e-4;

double wrap_angle(double t) {
  // into [-pi, pi)
  t = std::fmod(t + pi, 2 * pi);
  if (t < 0) t += 2 * pi;
  return t - pi;
}

}  // namespace

Matrix SectorialDecomposition::unitary_factor() const {
  Vector d(static_cast<Eigen::Index>(phases.size()));
  for (std::size_t k = 0; k < phases.size(); ++k) d(k) = expj(phases[k]);
  return d.asDiagonal();
}

Matrix SectorialDecomposition::reconstruct() const { return t.adjoint() * unitary_factor() * t; }

std::pair<Matrix, Matrix> hermitian_split(const Matrix& a) {
  Matrix h = 0.5 * (a + a.adjoint());
  Matrix k = (a - a.adjoint()) / cplx(0.0, 2.0);
  return {std::move(h), std::move(k)};
}

double rotated_lambda_min(const Matrix& a, double theta) {
  const auto [h, k] = hermitian_split(a);
  return kernels::rotated_lambda_min(h, k, theta);
}

CertificateResult sectoriality_certificate(const Matrix& a, int grid_points) {
  require_square_finite(a, "sectoriality_certificate");
  if (grid_points < 8) throw InvalidInput("sectoriality_certificate: grid_points must be >= 8");

  const auto [h, k] = hermitian_split(a);
  const double norm = spectral_norm(a);
  if (norm == 0.0) return NotSectorial{0.0, 0.0};

  const std::vector<double> thetas = kernels::angle_grid(grid_points, -pi);
  const kernels::GridMax coarse = kernels::pruned_grid_max(h, k, thetas, norm);

  double best_theta = thetas[coarse.index];
  double best = coarse.value;

  // Golden-section refinement inside the neighbouring grid cells.
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  const double step = 2 * pi / grid_points;
  double lo = best_theta - step;
  double hi = best_theta + step;
  double c = hi - invphi * (hi - lo);
  double d = lo + invphi * (hi - lo);
  double fc = kernels::rotated_lambda_min(h, k, c);
  double fd = kernels::rotated_lambda_min(h, k, d);
  const double certified = kCertificateRelTol * norm;
  while (hi - lo > kRefineStep) {
    if (hi - lo < kCertifiedStep && std::max({best, fc, fd}) > certified) break;
    if (fc > fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - invphi * (hi - lo);
      fc = kernels::rotated_lambda_min(h, k, c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + invphi * (hi - lo);
      fd = kernels::rotated_lambda_min(h, k, d);
    }
  }
  for (const auto& [t, f] : {std::pair{c, fc}, std::pair{d, fd}}) {
    if (f > best) {
      best = f;
      best_theta = t;
    }
  }
  best_theta = wrap_angle(best_theta);

  if (best > certified) return SectorialityCertificate{best_theta, best};
  return NotSectorial{best_theta, best};
}

SectorialDecomposition sectorial_decomposition(const Matrix& a, int grid_points) {
  const CertificateResult cert = sectoriality_certificate(a, grid_points);
  if (const auto* ns = std::get_if<NotSectorial>(&cert)) {
    throw NotSectorialError(
        fmt::format("matrix is not sectorial (best lambda_min {:.3e} at theta {:.6f})",
                    ns->best_lambda_min, ns->best_theta),
        ns->best_theta, ns->best_lambda_min);
  }
  const double theta = std::get<SectorialityCertificate>(cert).theta;
  const Eigen::Index n = a.rows();

  const Matrix b = expj(-theta) * a;
  const auto [h, k] = hermitian_split(b);

  Eigen::SelfAdjointEigenSolver<Matrix> hs(h);
  const RealVector hw = hs.eigenvalues();
  const Matrix& hv = hs.eigenvectors();
  SectorialDecomposition out;
  out.theta = theta;
  out.h_condition = hw(n - 1) / hw(0);
  out.ill_conditioned = out.h_condition > kIllConditionedH;

  const Matrix h_sqrt = hv * hw.cwiseSqrt().asDiagonal() * hv.adjoint();
  const Matrix h_isqrt = hv * hw.cwiseSqrt().cwiseInverse().asDiagonal() * hv.adjoint();
  const Matrix c = hermitianize(h_isqrt * k * h_isqrt);

  // B = H^{1/2} Q (I + j Lambda) Q* H^{1/2}, and 1 + j lambda has modulus
  // sqrt(1 + lambda^2) and angle atan(lambda).
  Eigen::SelfAdjointEigenSolver<Matrix> cs(c);
  const RealVector lambda = cs.eigenvalues();
  const Matrix& q = cs.eigenvectors();

  std::vector<double> raw(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) raw[i] = std::atan(lambda(i)) + theta;

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index x, Eigen::Index y) { return raw[x] > raw[y]; });

  const Matrix rows = q.adjoint() * h_sqrt;
  Matrix t(n, n);
  std::vector<double> sorted(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::Index src = order[i];
    const double scale = std::pow(1.0 + lambda(src) * lambda(src), 0.25);
    t.row(i) = scale * rows.row(src);
    sorted[i] = raw[src];
  }

  double center = 0.5 * (sorted.front() + sorted.back());
  double shift = 0.0;
  while (center + shift > pi) shift -= 2 * pi;
  while (center + shift <= -pi) shift += 2 * pi;
  for (double& p : sorted) p += shift;

  out.t = std::move(t);
  out.phases = PhaseVector(std::move(sorted));

  Eigen::JacobiSVD<Matrix> tsvd(out.t);
  const RealVector sv = tsvd.singularValues();
  if (!(sv(n - 1) > kNonsingularRelTol * sv(0))) {
    throw NotSectorialError("sectorial decomposition: congruence factor is numerically singular",
                            theta, std::get<SectorialityCertificate>(cert).lambda_min);
  }
  out.t_condition = sv(0) / sv(n - 1);
  out.residual = (out.reconstruct() - a).norm() / a.norm();
  return out;
}

PhaseVector phases(const Matrix& a) { return sectorial_decomposition(a).phases; }

double phase_center(const Matrix& a) { return phases(a).center(); }

int prank(const PhaseVector& phases, double tol) {
  return static_cast<int>(
      std::count_if(phases.begin(), phases.end(), [tol](double p) { return std::abs(p) > tol; }));
}

int prank(const Matrix& a, double tol) { return prank(phases(a), tol); }

bool in_sector(const Matrix& a, const SectorInterval& sector, double tol) {
  return sector.contains(phases(a), tol);
}

bool is_positive_real(const Matrix& a, double tol) {
  return in_sector(a, SectorInterval::positive_real(), tol);
}

bool is_positive_imaginary(const Matrix& a, double tol) {
  return in_sector(a, SectorInterval::positive_imaginary(), tol);
}

bool is_negative_imaginary(const Matrix& a, double tol) {
  return in_sector(a, SectorInterval::negative_imaginary(), tol);
}

bool in_open_half_plane_sector(const Matrix& a, double phi) {
  return rotated_lambda_min(a, phi) > 0.0;
}

}  // namespace phaserank
