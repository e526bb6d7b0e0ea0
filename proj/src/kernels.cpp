#include "phaserank/kernels.hpp"

#include <cmath>
#include <limits>
#include <queue>

namespace phaserank::kernels {

double rotated_lambda_min(const Matrix& h, const Matrix& k, double theta) {
  const Matrix rotated = std::cos(theta) * h + std::sin(theta) * k;
  Eigen::SelfAdjointEigenSolver<Matrix> es(rotated, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

cplx support_point(const Matrix& a, const Matrix& h, const Matrix& k, double theta) {
  const Matrix rotated = std::cos(theta) * h + std::sin(theta) * k;
  Eigen::SelfAdjointEigenSolver<Matrix> es(rotated);
  const Vector x = es.eigenvectors().col(a.rows() - 1);
  return x.dot(a * x);  // dot() conjugates its left operand: x* A x
}

std::vector<double> angle_grid(int count, double start) {
  std::vector<double> out(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) out[i] = start + 2 * pi * i / count;
  return out;
}

std::vector<double> lambda_min_scan(const Matrix& h, const Matrix& k,
                                    std::span<const double> thetas) {
  const auto count = static_cast<std::ptrdiff_t>(thetas.size());
  std::vector<double> out(thetas.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < count; ++i) out[i] = rotated_lambda_min(h, k, thetas[i]);
  return out;
}

std::vector<cplx> support_points(const Matrix& a, std::span<const double> thetas) {
  const Matrix h = hermitianize(a);
  const Matrix k = (a - a.adjoint()) / cplx(0.0, 2.0);
  const auto count = static_cast<std::ptrdiff_t>(thetas.size());
  std::vector<cplx> out(thetas.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < count; ++i) out[i] = support_point(a, h, k, thetas[i]);
  return out;
}

Matrix pencil_mean_sum(const Matrix& m, const Matrix& n, std::span<const double> nodes,
                       std::span<const double> weights) {
  const auto count = static_cast<std::ptrdiff_t>(nodes.size());
  std::vector<Matrix> terms(nodes.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    const Matrix pencil = std::exp(nodes[i]) * n + std::exp(-nodes[i]) * m;
    terms[i] = weights[i] * (n * pencil.partialPivLu().solve(m));
  }
  Matrix sum = Matrix::Zero(m.rows(), m.cols());
  for (const Matrix& t : terms) sum += t;
  return sum;
}

GridMax pruned_grid_max(const Matrix& h, const Matrix& k, std::span<const double> thetas,
                        double lipschitz) {
  const std::size_t m = thetas.size();
  GridMax result;
  if (m == 0) return result;

  std::vector<double> values(m, std::numeric_limits<double>::quiet_NaN());
  std::vector<char> evaluated(m, 0);
  double best = -std::numeric_limits<double>::infinity();
  auto eval = [&](std::size_t i) {
    values[i] = rotated_lambda_min(h, k, thetas[i]);
    evaluated[i] = 1;
    ++result.evaluations;
    best = std::max(best, values[i]);
  };

  // Rounding slack on the bound; eigenvalues carry ~1e-16 * ||A|| error.
  const double slack = 1e-12 * lipschitz;
  struct Gap {
    double bound;
    std::size_t lo, hi;
    bool operator<(const Gap& o) const { return bound < o.bound; }
  };
  std::priority_queue<Gap> gaps;
  auto push = [&](std::size_t lo, std::size_t hi) {
    if (hi <= lo + 1) return;
    // max of min(f_lo + L (t - t_lo), f_hi + L (t_hi - t)) over [t_lo, t_hi]
    const double bound =
        0.5 * (values[lo] + values[hi] + lipschitz * (thetas[hi] - thetas[lo])) + slack;
    gaps.push({bound, lo, hi});
  };

  const std::size_t stride = std::max<std::size_t>(1, m / 16);
  std::size_t prev = 0;
  eval(0);
  for (std::size_t i = stride; i < m; i += stride) {
    eval(i);
    push(prev, i);
    prev = i;
  }
  if (prev != m - 1) {
    eval(m - 1);
    push(prev, m - 1);
  }

  // Shubert-style branch and bound restricted to grid points. A gap whose
  // bound is below the best value cannot hold the argmax.
  while (!gaps.empty() && best <= slack) {
    const Gap g = gaps.top();
    gaps.pop();
    if (g.bound < best) break;
    const std::size_t mid = g.lo + (g.hi - g.lo) / 2;
    eval(mid);
    push(g.lo, mid);
    push(mid, g.hi);
  }

  // Where f > 0 every support function |z| cos(theta - arg z), z in W(A), is
  // in its concave range, so f is concave on that arc and negative off it:
  // the positive grid values are unimodal and a positive local maximum is
  // the global one. Bracket it, then climb to a verified local maximum.
  if (best > slack) {
    auto at = [&](std::ptrdiff_t d, std::size_t base) {
      const auto i = static_cast<std::size_t>(((static_cast<std::ptrdiff_t>(base) + d) % static_cast<std::ptrdiff_t>(m) +
                                               static_cast<std::ptrdiff_t>(m)) % static_cast<std::ptrdiff_t>(m));
      if (!evaluated[i]) eval(i);
      return values[i];
    };
    std::size_t p = 0;
    for (std::size_t i = 0; i < m; ++i) {
      if (evaluated[i] && values[i] > values[p]) p = i;
    }
    if (m >= 3) {
      const double f0 = at(0, p);
      const double fr = at(1, p);
      const double fl = at(-1, p);
      if (fr > f0 || fl > f0) {
        const std::ptrdiff_t dir = fr >= fl ? 1 : -1;
        // Gallop along dir; lo and cur stay on the positive arc.
        std::ptrdiff_t lo = 0, cur = dir, step = 2 * dir, hi = cur + step;
        double fcur = dir > 0 ? fr : fl;
        const auto half = static_cast<std::ptrdiff_t>(m / 2);
        while (std::abs(hi) < half) {
          const double fh = at(hi, p);
          if (fh <= fcur) break;
          lo = cur;
          cur = hi;
          fcur = fh;
          step *= 2;
          hi = cur + step;
        }
        if (std::abs(hi) >= half) hi = dir * (half - 1);
        // Ternary search on [lo, hi] (in the direction of dir).
        std::ptrdiff_t a = std::min(lo, hi), b = std::max(lo, hi);
        while (b - a > 2) {
          const std::ptrdiff_t c = a + (b - a) / 3;
          const std::ptrdiff_t d = b - (b - a) / 3;
          const double fc = at(c, p), fd = at(d, p);
          // Non-positive probes lie past the arc's end on the far side.
          if (dir > 0 && fc <= 0) b = c;
          else if (dir > 0 && fd <= 0) b = d;
          else if (dir < 0 && fd <= 0) a = d;
          else if (dir < 0 && fc <= 0) a = c;
          else if (fc < fd) a = c;
          else b = d;
        }
        for (std::ptrdiff_t d = a; d <= b; ++d) at(d, p);
      }
      // Climb on evaluated maxima until a local maximum is verified, then
      // pull in equal neighbours so ties resolve as in the full scan.
      for (;;) {
        std::size_t q = 0;
        for (std::size_t i = 0; i < m; ++i) {
          if (evaluated[i] && values[i] > values[q]) q = i;
        }
        const double fq = values[q];
        const double r = at(1, q), l = at(-1, q);
        if (r > fq || l > fq) continue;
        std::ptrdiff_t d = 1;
        while (d < static_cast<std::ptrdiff_t>(m) && at(d, q) == fq) ++d;
        d = -1;
        while (-d < static_cast<std::ptrdiff_t>(m) && at(d, q) == fq) --d;
        break;
      }
    }
  }

  result.value = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < m; ++i) {
    if (evaluated[i] && values[i] > result.value) {
      result.value = values[i];
      result.index = i;
    }
  }
  return result;
}

namespace serial {

std::vector<double> lambda_min_scan(const Matrix& h, const Matrix& k,
                                    std::span<const double> thetas) {
  std::vector<double> out;
  out.reserve(thetas.size());
  for (double t : thetas) out.push_back(rotated_lambda_min(h, k, t));
  return out;
}

std::vector<cplx> support_points(const Matrix& a, std::span<const double> thetas) {
  const Matrix h = hermitianize(a);
  const Matrix k = (a - a.adjoint()) / cplx(0.0, 2.0);
  std::vector<cplx> out;
  out.reserve(thetas.size());
  for (double t : thetas) out.push_back(support_point(a, h, k, t));
  return out;
}

Matrix pencil_mean_sum(const Matrix& m, const Matrix& n, std::span<const double> nodes,
                       std::span<const double> weights) {
  Matrix sum = Matrix::Zero(m.rows(), m.cols());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const Matrix pencil = std::exp(nodes[i]) * n + std::exp(-nodes[i]) * m;
    sum += weights[i] * (n * pencil.partialPivLu().solve(m));
  }
  return sum;
}

}  // namespace serial
}  // namespace phaserank::kernels
