#include "phaserank/means.hpp"

#include "phaserank/kernels.hpp"
#include "phaserank/sectorial.hpp"
#include "wide.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <queue>
#include <vector>

namespace phaserank {
namespace {

constexpr double kBranchRelTol = 1e-12;
constexpr double kQuadratureTail = 1e-10;
constexpr double kPanelRelTol = 1e-12;
constexpr int kPanelNodes = 20;
constexpr int kMaxPanels = 4000;

void require_same_shape(const Matrix& m, const Matrix& n, std::string_view what) {
  require_square_finite(m, what);
  require_square_finite(n, what);
  if (m.rows() != n.rows()) {
    throw InvalidInput(fmt::format("{}: dimension mismatch ({} vs {})", what, m.rows(), n.rows()));
  }
}

using Rule = boost::math::quadrature::gauss<double, kPanelNodes>;

void panel_nodes(double a, double b, std::vector<double>& nodes, std::vector<double>& weights) {
  nodes.clear();
  weights.clear();
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const auto& x = Rule::abscissa();
  const auto& w = Rule::weights();
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0.0) {
      nodes.push_back(mid);
      weights.push_back(half * w[i]);
      continue;
    }
    nodes.push_back(mid - half * x[i]);
    weights.push_back(half * w[i]);
    nodes.push_back(mid + half * x[i]);
    weights.push_back(half * w[i]);
  }
}

// Globally adaptive: the panel with the largest estimated error (whole vs
// two halves) is split next, so rounding noise in one region cannot starve
// the rest. Stops at the tolerance or when the evaluation budget runs out.
class PanelIntegrator {
 public:
  PanelIntegrator(const Matrix& m, const Matrix& n) : m_(m), n_(n) {}

  Matrix integrate(double a, double b) {
    --budget_;
    panel_nodes(a, b, nodes_, weights_);
    return kernels::pencil_mean_sum(m_, n_, nodes_, weights_);
  }

  Matrix adaptive(const std::vector<double>& edges, double rel_tol) {
    std::vector<Panel> panels;
    for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
      panels.push_back(bisect(edges[p], edges[p + 1], integrate(edges[p], edges[p + 1])));
    }
    auto by_error = [&](std::size_t i, std::size_t j) { return panels[i].err < panels[j].err; };
    std::priority_queue<std::size_t, std::vector<std::size_t>, decltype(by_error)> queue(by_error);
    for (std::size_t p = 0; p < panels.size(); ++p) queue.push(p);

    while (budget_ >= 4) {
      double err = 0.0;
      Matrix total = Matrix::Zero(m_.rows(), m_.cols());
      for (const Panel& p : panels) {
        if (p.live) {
          err += p.err;
          total += p.left + p.right;
        }
      }
      if (err <= rel_tol * total.norm()) break;
      const std::size_t worst = queue.top();
      queue.pop();
      Panel& w = panels[worst];
      w.live = false;
      const double mid = 0.5 * (w.a + w.b);
      Panel lo = bisect(w.a, mid, w.left);
      Panel hi = bisect(mid, w.b, w.right);
      panels.push_back(std::move(lo));
      queue.push(panels.size() - 1);
      panels.push_back(std::move(hi));
      queue.push(panels.size() - 1);
    }

    std::vector<const Panel*> live;
    for (const Panel& p : panels) {
      if (p.live) live.push_back(&p);
    }
    std::sort(live.begin(), live.end(), [](const Panel* x, const Panel* y) { return x->a < y->a; });
    Matrix sum = Matrix::Zero(m_.rows(), m_.cols());
    for (const Panel* p : live) sum += p->left + p->right;
    return sum;
  }

 private:
  struct Panel {
    double a, b;
    Matrix left, right;
    double err;
    bool live = true;
  };

  Panel bisect(double a, double b, const Matrix& whole) {
    const double mid = 0.5 * (a + b);
    Panel p{a, b, integrate(a, mid), integrate(mid, b), 0.0};
    p.err = (p.left + p.right - whole).norm();
    return p;
  }

  const Matrix& m_;
  const Matrix& n_;
  int budget_ = kMaxPanels;
  std::vector<double> nodes_, weights_;
};

}  // namespace

Matrix arithmetic_mean(const Matrix& m, const Matrix& n) {
  require_same_shape(m, n, "arithmetic_mean");
  return 0.5 * (m + n);
}

namespace {

using detail::narrow;
using detail::widen;
using detail::WideMatrix;


template <class M>
M schur_sqrt(const M& a, double scale) {
  using C = typename M::Scalar;
  using std::abs;
  using std::sqrt;
  const Eigen::Index n = a.rows();
  Eigen::ComplexSchur<M> schur(a);
  const M& t = schur.matrixT();
  const M& q = schur.matrixU();

  M r = M::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const C lambda = t(i, i);
    // Small eigenvalues in the open right half plane are fine; only the cut
    // itself (and zero) is rejected.
    const bool on_cut = lambda.real() <= 0 && abs(lambda.imag()) <= kBranchRelTol * scale;
    if (on_cut || lambda == C{}) {
      throw BranchError(fmt::format(
          "principal_sqrt: eigenvalue ({}, {}) on or near the closed negative real axis",
          static_cast<double>(lambda.real()), static_cast<double>(lambda.imag())));
    }
    r(i, i) = sqrt(lambda);
  }
  for (Eigen::Index j = 1; j < n; ++j) {
    for (Eigen::Index i = j - 1; i >= 0; --i) {
      C acc{};
      for (Eigen::Index k = i + 1; k < j; ++k) acc += r(i, k) * r(k, j);
      r(i, j) = (t(i, j) - acc) / (r(i, i) + r(j, j));
    }
  }
  return q * r * q.adjoint();
}

}  // namespace

Matrix principal_sqrt(const Matrix& a) {
  require_square_finite(a, "principal_sqrt");
  return schur_sqrt(a, a.norm());
}

double mean_rotation(const Matrix& m, const Matrix& n, const MeanConfig& cfg) {
  require_same_shape(m, n, "geometric_mean");
  const PhaseVector pm = phases(m);
  const PhaseVector pn = phases(n);

  // Put N's phases on the branch nearest to M's.
  double shift = 0.0;
  for (double s : {2 * pi, -2 * pi}) {
    if (std::abs(pn.center() + s - pm.center()) < std::abs(pn.center() + shift - pm.center())) {
      shift = s;
    }
  }
  const double lo = std::min(pm.min(), pn.min() + shift);
  const double hi = std::max(pm.max(), pn.max() + shift);

  const SectorInterval strict = SectorInterval::strictly_positive_real();
  if (cfg.rotation_beta) {
    const double beta = *cfg.rotation_beta;
    if (!strict.contains(lo + beta, hi + beta, kStrictSectorMargin)) {
      throw SectorError(fmt::format(
          "geometric_mean: rotation {} does not place both matrices strictly inside "
          "(-pi/2, pi/2) (joint hull [{}, {}])",
          beta, lo, hi));
    }
    return beta;
  }
  if (hi - lo >= pi - 2 * kStrictSectorMargin) {
    throw SectorError(fmt::format(
        "geometric_mean: incompatible sectors, joint phase hull [{}, {}] spans pi or more", lo,
        hi));
  }
  return -0.5 * (lo + hi);
}

Matrix geometric_mean(const Matrix& m, const Matrix& n, const MeanConfig& cfg) {
  const double beta = mean_rotation(m, n, cfg);
  const Matrix mr = expj(beta) * m;
  const Matrix nr = expj(beta) * n;

  const WideMatrix s = schur_sqrt(widen(mr), mr.norm());
  const WideMatrix s_inv = s.partialPivLu().inverse();
  const WideMatrix inner_arg = s_inv * widen(nr) * s_inv;
  const WideMatrix inner = schur_sqrt(inner_arg, static_cast<double>(inner_arg.norm()));
  return expj(-beta) * narrow(s * inner * s);
}

Matrix geometric_mean_quadrature(const Matrix& m, const Matrix& n, const MeanConfig& cfg) {
  if (cfg.quadrature_points < 16) {
    throw InvalidInput("geometric_mean_quadrature: quadrature_points must be >= 16");
  }
  const double beta = mean_rotation(m, n, cfg);
  const Matrix mr = expj(beta) * m;
  const Matrix nr = expj(beta) * n;

  // Applied to M^{-1} and N^{-1} the integral representation gives the
  // mean itself, (2/pi) integral_0^inf N (tN + M/t)^{-1} M dt/t, so no final
  // inverse amplifies the quadrature error by cond(G). With mu = lambda_min
  // of the Hermitian parts the integrand is at most
  // ||M|| ||N|| / (e^s mu_N + e^{-s} mu_M), so each tail beyond |s| = L is
  // below ||M|| ||N|| e^{-L} / mu; sqrt(mu_M mu_N) bounds ||G|| from below
  // in the positive definite case and sets the scale.
  const double mu_m = rotated_lambda_min(mr, 0.0);
  const double mu_n = rotated_lambda_min(nr, 0.0);
  const double mu = std::min(mu_m, mu_n);
  const double ref = std::sqrt(mu_m * mu_n);
  const double mass = spectral_norm(mr) * spectral_norm(nr);
  const double half_width = std::max(20.0, std::log(2.0 * mass / (mu * kQuadratureTail * ref)));

  const int panels = std::max(1, cfg.quadrature_points / kPanelNodes);
  std::vector<double> edges;
  for (int p = 0; p <= panels; ++p) edges.push_back(-half_width + 2 * half_width * p / panels);

  PanelIntegrator integrator(mr, nr);
  const Matrix integral = integrator.adaptive(edges, kPanelRelTol);
  return expj(-beta) * ((2.0 / pi) * integral);
}

double riccati_residual(const Matrix& g, const Matrix& m, const Matrix& n) {
  return (g * m.partialPivLu().solve(g) - n).norm();
}

Matrix log_hpd(const Matrix& p) {
  require_square_finite(p, "log_hpd");
  if ((p - p.adjoint()).norm() > 1e-10 * p.norm()) {
    throw InvalidInput("log_hpd: matrix is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitianize(p));
  const RealVector w = es.eigenvalues();
  if (!(w(0) > 0.0)) throw InvalidInput("log_hpd: matrix is not positive definite");
  const Matrix& v = es.eigenvectors();
  return v * w.array().log().matrix().cast<cplx>().asDiagonal() * v.adjoint();
}

Matrix log_unitary(const Matrix& u) {
  require_square_finite(u, "log_unitary");
  const Eigen::Index n = u.rows();
  if ((u.adjoint() * u - Matrix::Identity(n, n)).norm() > 1e-8 * std::sqrt(double(n))) {
    throw InvalidInput("log_unitary: matrix is not unitary");
  }
  Eigen::ComplexSchur<Matrix> schur(u);
  const Matrix& t = schur.matrixT();
  const Matrix& q = schur.matrixU();
  Vector d(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double angle = std::arg(t(i, i));
    if (pi - std::abs(angle) <= kBranchRelTol) {
      throw BranchError("log_unitary: eigenvalue at -1");
    }
    d(i) = cplx(0.0, angle);
  }
  return q * d.asDiagonal() * q.adjoint();
}

}  // namespace phaserank
