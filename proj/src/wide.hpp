#pragma once

// Extended working precision for the few places where double runs out:
// quad where the toolchain has libquadmath, long double otherwise.

#include "phaserank/types.hpp"

#ifdef PHASERANK_HAVE_FLOAT128
#include <boost/multiprecision/float128.hpp>
#endif

#include <complex>

namespace phaserank::detail {

#ifdef PHASERANK_HAVE_FLOAT128
using WideReal = boost::multiprecision::float128;
#else
using WideReal = long double;
#endif
using WideComplex = std::complex<WideReal>;
using WideMatrix = Eigen::Matrix<WideComplex, Eigen::Dynamic, Eigen::Dynamic>;

inline WideMatrix widen(const Matrix& a) {
  WideMatrix w(a.rows(), a.cols());
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      w(i, j) = WideComplex(WideReal(a(i, j).real()), WideReal(a(i, j).imag()));
  return w;
}

inline Matrix narrow(const WideMatrix& w) {
  Matrix a(w.rows(), w.cols());
  for (Eigen::Index j = 0; j < w.cols(); ++j)
    for (Eigen::Index i = 0; i < w.rows(); ++i)
      a(i, j) = cplx(static_cast<double>(w(i, j).real()), static_cast<double>(w(i, j).imag()));
  return a;
}

}  // namespace phaserank::detail
