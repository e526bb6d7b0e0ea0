#pragma once

// Symmetric gauge functions, unitarily invariant norms, Ky-Fan phase
// functionals, weak submajorization and the SVD-truncation baseline.

#include "phaserank/types.hpp"

#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace phaserank {

struct KyFan {
  int k = 1;  ///< sum of the k largest |x_i|; 1 <= k <= n
};
struct MaxGauge {};
struct SumGauge {};
struct LpGauge {
  double p = 2.0;  ///< p >= 1
};

using GaugeSpec = std::variant<KyFan, MaxGauge, SumGauge, LpGauge>;

/// "max", "sum", "kyfan:k", "lp:p".
GaugeSpec parse_gauge(std::string_view text);
std::string gauge_name(const GaugeSpec& g);

double gauge_eval(const GaugeSpec& g, std::span<const double> x);
inline double gauge_eval(const GaugeSpec& g, const std::vector<double>& x) {
  return gauge_eval(g, std::span<const double>(x));
}

RealVector singular_values(const Matrix& a);

/// ||A||_Phi = Phi(sigma(A)).
double ui_norm(const GaugeSpec& g, const Matrix& a);

/// Keeps the r largest singular triplets.
Matrix svd_truncate(const Matrix& a, int r);

/// Phi(0, ..., 0, sigma_{r+1}, ..., sigma_n).
double schmidt_mirsky_value(const Matrix& a, int r, const GaugeSpec& g);

/// psi_m(A): Ky-Fan m-norm of the canonical phases.
double kyfan_phase(const Matrix& a, int m);

/// Signed sum of the m largest canonical phases. Equals kyfan_phase on
/// C[0, pi); for sectors reaching below 0 this is the variational form.
double phase_partial_sum(const Matrix& a, int m);

/// Sum of the eigenvalue angles of X* A X for a full-column-rank n x m X.
double psi_variational_value(const Matrix& a, const Matrix& x);

/// a is weakly submajorized by b: every prefix sum of a sorted
/// nonincreasingly is at most the matching prefix sum of b (within tol).
bool weak_submajorize(std::span<const double> a, std::span<const double> b, double tol = 1e-9);

}  // namespace phaserank
