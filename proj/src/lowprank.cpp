#include "phaserank/lowprank.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

namespace phaserank {
namespace {

Matrix checked_inverse(const Matrix& e, std::string_view what) {
  const RealVector s = singular_values(e);
  if (!(s(s.size() - 1) > kNonsingularRelTol * s(0))) {
    throw InvalidInput(fmt::format("{}: matrix is numerically singular", what));
  }
  return e.partialPivLu().inverse();
}

}  // namespace

TruncationApproximant truncation_sp(const SectorialDecomposition& dec, int r) {
  const auto n = static_cast<int>(dec.phases.size());
  if (r < 0 || r > n) throw InvalidInput(fmt::format("truncation_sp: r = {} outside 0..{}", r, n));
  Vector half(n);
  for (int k = 0; k < n; ++k) half(k) = k < r ? expj(0.5 * dec.phases[k]) : cplx(1.0, 0.0);
  TruncationApproximant out;
  out.e = dec.t.adjoint() * half.asDiagonal() * dec.t;
  out.r = r;
  out.source = dec;
  return out;
}

TruncationApproximant truncation_sp(const Matrix& a, int r) {
  return truncation_sp(sectorial_decomposition(a), r);
}

Matrix conjugate(const Matrix& a, const Matrix& e) {
  require_square_finite(a, "conjugate");
  require_square_finite(e, "conjugate");
  if (a.rows() != e.rows()) throw InvalidInput("conjugate: dimension mismatch");
  checked_inverse(e, "conjugate");
  // cond(E) is about cond(T)^2 for E = T* L T; the extra bits of long double
  // keep the conjugate's phases at the accuracy of the decomposition.
  using WideMatrix = Eigen::Matrix<std::complex<long double>, Eigen::Dynamic, Eigen::Dynamic>;
  const WideMatrix ew = e.cast<std::complex<long double>>();
  const WideMatrix ew_inv = ew.partialPivLu().inverse();
  const WideMatrix c = ew_inv * a.cast<std::complex<long double>>() * ew_inv;
  return c.cast<cplx>();
}

PhaseVector conjugate_phases(const Matrix& a, const Matrix& e) {
  return phases(conjugate(a, e));
}

PhaseVector conjugate_phases_factored(const Matrix& a, const Matrix& f, const std::vector<double>& l) {
  require_square_finite(a, "conjugate_phases_factored");
  require_square_finite(f, "conjugate_phases_factored");
  if (a.rows() != f.rows()) throw InvalidInput("conjugate_phases_factored: dimension mismatch");
  if (static_cast<Eigen::Index>(l.size()) != a.rows()) {
    throw InvalidInput("conjugate_phases_factored: need one phase per row");
  }
  checked_inverse(f, "conjugate_phases_factored");
  using WideMatrix = Eigen::Matrix<std::complex<long double>, Eigen::Dynamic, Eigen::Dynamic>;
  const WideMatrix fw = f.cast<std::complex<long double>>();
  const WideMatrix f_inv = fw.partialPivLu().inverse();
  WideMatrix m = f_inv.adjoint() * a.cast<std::complex<long double>>() * f_inv;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    const auto li = std::polar(1.0L, -static_cast<long double>(l[i]));
    m.row(i) *= li;
    m.col(i) *= li;
  }
  return phases(Matrix(m.cast<cplx>()));
}

double objective(const Matrix& a, const Matrix& e, const GaugeSpec& g) {
  return gauge_eval(g, conjugate_phases(a, e).span());
}

double optimal_value(const PhaseVector& phases_of_a, int r, const GaugeSpec& g) {
  const auto n = static_cast<int>(phases_of_a.size());
  if (r < 0 || r > n) throw InvalidInput(fmt::format("optimal_value: r = {} outside 0..{}", r, n));
  if (!SectorInterval::positive_imaginary().contains(phases_of_a)) {
    throw SectorError("optimal_value: matrix is not positive-imaginary (phases outside [0, pi))");
  }
  std::vector<double> tail = phases_of_a.values();
  std::fill(tail.begin(), tail.begin() + r, 0.0);
  return gauge_eval(g, tail);
}

double optimal_value(const Matrix& a, int r, const GaugeSpec& g) {
  return optimal_value(phases(a), r, g);
}

FeasibilityReport is_feasible(const Matrix& a, const Matrix& e, int r,
                              bool require_positive_imaginary, const GaugeSpec& g) {
  FeasibilityReport report;
  report.require_positive_imaginary = require_positive_imaginary;
  require_square_finite(a, "is_feasible");
  require_square_finite(e, "is_feasible");
  if (a.rows() != e.rows()) {
    report.diagnostics.push_back("dimension mismatch between A and E");
    return report;
  }
  if (r < 0 || r > a.rows()) {
    report.diagnostics.push_back(fmt::format("r = {} outside 0..{}", r, a.rows()));
    return report;
  }

  try {
    const SectorialDecomposition dec = sectorial_decomposition(e);
    report.e_sectorial = true;
    report.e_prank = prank(dec.phases);
    report.prank_ok = report.e_prank <= r;
    if (!report.prank_ok) {
      report.diagnostics.push_back(fmt::format("prank(E) = {} exceeds r = {}", report.e_prank, r));
    }
  } catch (const NotSectorialError& err) {
    report.diagnostics.push_back(fmt::format("E: {}", err.what()));
  }

  try {
    const PhaseVector ph = conjugate_phases(a, e);
    report.conjugate_sectorial = true;
    report.conjugate_phases = ph.values();
    report.conjugate_in_sector = SectorInterval::positive_imaginary().contains(ph);
    if (require_positive_imaginary && !report.conjugate_in_sector) {
      report.diagnostics.push_back("E^{-1} A E^{-1} is not positive-imaginary");
    }
  } catch (const NotSectorialError& err) {
    report.diagnostics.push_back(fmt::format("E^{{-1}} A E^{{-1}}: {}", err.what()));
  } catch (const InvalidInput& err) {
    report.diagnostics.push_back(err.what());
  }

  if (report.feasible()) report.objective = gauge_eval(g, report.conjugate_phases);
  return report;
}

TruncationApproximant negative_imaginary_solution(const Matrix& a, int r) {
  if (!is_negative_imaginary(a)) {
    throw SectorError("negative_imaginary_solution: matrix is not negative-imaginary");
  }
  TruncationApproximant inv = truncation_sp(checked_inverse(a, "negative_imaginary_solution"), r);
  inv.e = checked_inverse(inv.e, "negative_imaginary_solution");
  return inv;
}

double negative_imaginary_value(const Matrix& a, int r, const GaugeSpec& g) {
  const PhaseVector ph = phases(a);
  const auto n = static_cast<int>(ph.size());
  if (r < 0 || r > n) throw InvalidInput("negative_imaginary_value: r outside 0..n");
  if (!SectorInterval::negative_imaginary().contains(ph)) {
    throw SectorError("negative_imaginary_value: matrix is not negative-imaginary");
  }
  std::vector<double> head = ph.values();
  std::fill(head.begin() + (n - r), head.end(), 0.0);
  return gauge_eval(g, head);
}

RankWitness prank_rank_witness(const Matrix& a) {
  const SectorialDecomposition dec = sectorial_decomposition(a);
  RankWitness w;
  w.m = dec.t.adjoint() * dec.t;
  w.r = a - w.m;
  w.rank_r = numerical_rank(w.r, 1e-9, spectral_norm(a));
  w.prank = prank(dec.phases);
  return w;
}

int numerical_rank(const Matrix& a, double rel_tol, double scale) {
  if (a.size() == 0) return 0;
  const RealVector s = singular_values(a);
  const double threshold = rel_tol * std::max(s(0), scale);
  return static_cast<int>((s.array() > threshold).count());
}

}  // namespace phaserank
