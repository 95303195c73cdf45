// Reference kernels. These define the results the SIMD variants must match.

#include <algorithm>
#include <cmath>

#include "tables.hpp"

namespace swnoon::kernels::detail {

namespace {

void sincos_scalar(const double* x, double* s, double* c, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    s[i] = std::sin(x[i]);
    c[i] = std::cos(x[i]);
  }
}

void fringe_model_scalar(const double* x, std::size_t n, double x0, double kappa, double* p) {
  for (std::size_t i = 0; i < n; ++i) {
    const double half = 0.5 * kappa * (x[i] - x0);
    const double s = std::sin(half);
    p[i] = s * s;
  }
}

FringeSums fringe_normal_equations_scalar(const double* x, const double* fraction, const double* shots,
                                          std::size_t n, double x0, double kappa) {
  FringeSums acc;
  for (std::size_t i = 0; i < n; ++i) {
    const double half = 0.5 * kappa * (x[i] - x0);
    const double s = std::sin(half);
    const double c = std::cos(half);
    const double p = s * s;
    const double jac = -kappa * s * c;
    const double w = shots[i] / std::max(p * c * c, kVarianceFloor);
    const double r = fraction[i] - p;
    acc.information += w * jac * jac;
    acc.score += w * jac * r;
    acc.cost += w * r * r;
  }
  return acc;
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable t{&sincos_scalar, &fringe_model_scalar, &fringe_normal_equations_scalar};
  return t;
}

}  // namespace swnoon::kernels::detail
