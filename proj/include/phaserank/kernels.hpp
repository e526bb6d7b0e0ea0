#pragma once

// Data-parallel inner loops. Each kernel has an OpenMP version in
// `phaserank::kernels` and a plain loop in `phaserank::kernels::serial`
// that is kept as the reference the parallel path is tested against.
// Parallel kernels write per-index results and reduce in index order, so
// both paths produce bit-identical output.

#include "phaserank/types.hpp"

#include <span>
#include <vector>

namespace phaserank::kernels {

/// Smallest eigenvalue of cos(theta)*h + sin(theta)*k, i.e. of the Hermitian
/// part of e^{-j theta} A when h, k are the Hermitian parts of A.
double rotated_lambda_min(const Matrix& h, const Matrix& k, double theta);

/// x* A x for a unit eigenvector x of the largest eigenvalue of
/// Herm(e^{-j theta} A).
cplx support_point(const Matrix& a, const Matrix& h, const Matrix& k, double theta);

/// sum_i w_i n (e^{s_i} n + e^{-s_i} m)^{-1} m, summed in node order.
Matrix pencil_mean_sum(const Matrix& m, const Matrix& n, std::span<const double> nodes,
                       std::span<const double> weights);

std::vector<double> lambda_min_scan(const Matrix& h, const Matrix& k,
                                    std::span<const double> thetas);
std::vector<cplx> support_points(const Matrix& a, std::span<const double> thetas);

struct GridMax {
  std::size_t index = 0;
  double value = 0.0;
  std::size_t evaluations = 0;
};

/// First index of the maximum of rotated_lambda_min over an equispaced
/// periodic grid. Branch and bound (a gap is dropped once its Lipschitz
/// upper bound cannot beat the running best) until a clearly positive value
/// turns up; from there f is concave on its positive arc, so a bracketed
/// search and a verified local maximum finish the job. Agrees with the
/// full-scan argmax up to eigensolver rounding. `lipschitz` must bound
/// |df/dtheta| (the spectral norm of A does).
GridMax pruned_grid_max(const Matrix& h, const Matrix& k, std::span<const double> thetas,
                        double lipschitz);

namespace serial {

std::vector<double> lambda_min_scan(const Matrix& h, const Matrix& k,
                                    std::span<const double> thetas);
std::vector<cplx> support_points(const Matrix& a, std::span<const double> thetas);
Matrix pencil_mean_sum(const Matrix& m, const Matrix& n, std::span<const double> nodes,
                       std::span<const double> weights);

}  // namespace serial

/// Equispaced angles start + 2*pi*k/count, k = 0..count-1.
std::vector<double> angle_grid(int count, double start);

}  // namespace phaserank::kernels
