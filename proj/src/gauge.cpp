#include "phaserank/gauge.hpp"

#include "phaserank/sectorial.hpp"
#include "wide.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <numeric>

namespace phaserank {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

std::vector<double> sorted_abs_desc(std::span<const double> x) {
  std::vector<double> out(x.size());
  std::transform(x.begin(), x.end(), out.begin(), [](double v) { return std::abs(v); });
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

double parse_number(std::string_view text, std::string_view what) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw InvalidInput(fmt::format("gauge: cannot parse {} from '{}'", what, text));
  }
  return value;
}

}  // namespace

GaugeSpec parse_gauge(std::string_view text) {
  if (text == "max") return MaxGauge{};
  if (text == "sum") return SumGauge{};
  if (text.starts_with("kyfan:")) {
    const double k = parse_number(text.substr(6), "k");
    if (k < 1 || k != std::floor(k)) throw InvalidInput("gauge: kyfan k must be a positive integer");
    return KyFan{static_cast<int>(k)};
  }
  if (text.starts_with("lp:")) {
    const double p = parse_number(text.substr(3), "p");
    if (!(p >= 1.0)) throw InvalidInput("gauge: lp requires p >= 1");
    return LpGauge{p};
  }
  throw InvalidInput(fmt::format("gauge: unknown gauge '{}' (max|sum|kyfan:k|lp:p)", text));
}

std::string gauge_name(const GaugeSpec& g) {
  return std::visit(overloaded{
                        [](const KyFan& f) { return fmt::format("kyfan:{}", f.k); },
                        [](const MaxGauge&) { return std::string("max"); },
                        [](const SumGauge&) { return std::string("sum"); },
                        [](const LpGauge& f) { return fmt::format("lp:{}", f.p); },
                    },
                    g);
}

double gauge_eval(const GaugeSpec& g, std::span<const double> x) {
  for (double v : x) {
    if (!std::isfinite(v)) throw InvalidInput("gauge_eval: non-finite entry");
  }
  return std::visit(
      overloaded{
          [&](const KyFan& f) {
            if (f.k < 1 || f.k > static_cast<int>(x.size())) {
              throw InvalidInput(
                  fmt::format("gauge_eval: Ky-Fan k = {} outside 1..{}", f.k, x.size()));
            }
            const auto s = sorted_abs_desc(x);
            return std::accumulate(s.begin(), s.begin() + f.k, 0.0);
          },
          [&](const MaxGauge&) {
            double m = 0.0;
            for (double v : x) m = std::max(m, std::abs(v));
            return m;
          },
          [&](const SumGauge&) {
            double s = 0.0;
            for (double v : x) s += std::abs(v);
            return s;
          },
          [&](const LpGauge& f) {
            if (!(f.p >= 1.0)) throw InvalidInput("gauge_eval: lp requires p >= 1");
            // Scale by the max entry to avoid overflow in |x|^p.
            double m = 0.0;
            for (double v : x) m = std::max(m, std::abs(v));
            if (m == 0.0) return 0.0;
            double s = 0.0;
            for (double v : x) s += std::pow(std::abs(v) / m, f.p);
            return m * std::pow(s, 1.0 / f.p);
          },
      },
      g);
}

RealVector singular_values(const Matrix& a) {
  Eigen::JacobiSVD<Matrix> svd(a);
  return svd.singularValues();
}

double ui_norm(const GaugeSpec& g, const Matrix& a) {
  require_square_finite(a, "ui_norm");
  const RealVector s = singular_values(a);
  return gauge_eval(g, std::span<const double>(s.data(), static_cast<std::size_t>(s.size())));
}

Matrix svd_truncate(const Matrix& a, int r) {
  require_square_finite(a, "svd_truncate");
  if (r < 0 || r > a.rows()) throw InvalidInput("svd_truncate: r outside 0..n");
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Matrix& u = svd.matrixU();
  const Matrix& v = svd.matrixV();
  const RealVector& s = svd.singularValues();
  return u.leftCols(r) * s.head(r).cast<cplx>().asDiagonal() * v.leftCols(r).adjoint();
}

double schmidt_mirsky_value(const Matrix& a, int r, const GaugeSpec& g) {
  require_square_finite(a, "schmidt_mirsky_value");
  if (r < 0 || r > a.rows()) throw InvalidInput("schmidt_mirsky_value: r outside 0..n");
  const RealVector s = singular_values(a);
  std::vector<double> tail(s.data(), s.data() + s.size());
  std::fill(tail.begin(), tail.begin() + r, 0.0);
  return gauge_eval(g, tail);
}

double kyfan_phase(const Matrix& a, int m) {
  const PhaseVector ph = phases(a);
  return gauge_eval(KyFan{m}, ph.span());
}

double phase_partial_sum(const Matrix& a, int m) {
  const PhaseVector ph = phases(a);
  if (m < 1 || m > static_cast<int>(ph.size())) {
    throw InvalidInput(fmt::format("phase_partial_sum: m = {} outside 1..{}", m, ph.size()));
  }
  return std::accumulate(ph.begin(), ph.begin() + m, 0.0);
}

double psi_variational_value(const Matrix& a, const Matrix& x) {
  require_square_finite(a, "psi_variational_value");
  if (x.rows() != a.rows() || x.cols() < 1 || x.cols() > a.rows()) {
    throw InvalidInput("psi_variational_value: X must be n x m with 1 <= m <= n");
  }
  const RealVector s = singular_values(x);
  if (!(s(s.size() - 1) > kNonsingularRelTol * s(0))) {
    throw InvalidInput("psi_variational_value: X is rank deficient");
  }
  const Matrix compressed = x.adjoint() * a * x;
  Eigen::ComplexEigenSolver<Matrix> es(compressed, false);
  double rough = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) rough += std::arg(es.eigenvalues()(i));

  // Eigenvalue arguments of an ill-conditioned compression are only good to
  // about eps * cond. Their sum is arg det up to a multiple of 2 pi, and arg
  // det from a wide LU is accurate, so the eigenvalues only pick the branch.
  const detail::WideMatrix xw = detail::widen(x);
  const detail::WideMatrix cw = xw.adjoint() * detail::widen(a) * xw;
  const detail::WideComplex det = cw.partialPivLu().determinant();
  using std::atan2;
  const double fine = static_cast<double>(atan2(det.imag(), det.real()));
  return fine + 2 * pi * std::round((rough - fine) / (2 * pi));
}

bool weak_submajorize(std::span<const double> a, std::span<const double> b, double tol) {
  if (a.size() != b.size()) throw InvalidInput("weak_submajorize: length mismatch");
  std::vector<double> as(a.begin(), a.end());
  std::vector<double> bs(b.begin(), b.end());
  std::sort(as.begin(), as.end(), std::greater<>());
  std::sort(bs.begin(), bs.end(), std::greater<>());
  double sa = 0.0;
  double sb = 0.0;
  for (std::size_t i = 0; i < as.size(); ++i) {
    sa += as[i];
    sb += bs[i];
    if (sa > sb + tol) return false;
  }
  return true;
}

}  // namespace phaserank
