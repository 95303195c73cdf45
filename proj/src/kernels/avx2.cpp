// AVX2+FMA kernels. Compiled with -mavx2 -mfma; only reached after a CPUID check.

#include <immintrin.h>

#include <algorithm>
#include <cmath>

#include "tables.hpp"

namespace swnoon::kernels::detail {

namespace {

// Three-part Cody-Waite split of pi/2 and the fdlibm minimax polynomials on
// [-pi/4, pi/4]. Accurate to a few ulp for |x| < 2^20 * pi/2.
constexpr double kTwoOverPi = 6.36619772367581382433e-01;
constexpr double kPio2Hi = 1.57079632673412561417e+00;
constexpr double kPio2Mid = 6.07710050630396597660e-11;
constexpr double kPio2Lo = 2.02226624879595063154e-21;

constexpr double S1 = -1.66666666666666324348e-01, S2 = 8.33333333332248946124e-03,
                 S3 = -1.98412698298579493134e-04, S4 = 2.75573137070700676789e-06,
                 S5 = -2.50507602534068634195e-08, S6 = 1.58969099521155010221e-10;
constexpr double C1 = 4.16666666666666019037e-02, C2 = -1.38888888888741095749e-03,
                 C3 = 2.48015872894767294178e-05, C4 = -2.75573143513906633035e-07,
                 C5 = 2.08757232129817482790e-09, C6 = -1.13596475577881948265e-11;

// Scalar twin of sincos4 for loop tails, so tails match the vector lanes.
void sincos1(double x, double& s_out, double& c_out) {
  const double j = std::nearbyint(x * kTwoOverPi);
  double r = std::fma(-j, kPio2Hi, x);
  r = std::fma(-j, kPio2Mid, r);
  r = std::fma(-j, kPio2Lo, r);
  const double z = r * r;
  const double ps = std::fma(z, std::fma(z, std::fma(z, std::fma(z, std::fma(z, S6, S5), S4), S3), S2), S1);
  const double s = std::fma(r * z, ps, r);
  const double pc = std::fma(z, std::fma(z, std::fma(z, std::fma(z, std::fma(z, C6, C5), C4), C3), C2), C1);
  const double c = std::fma(z * z, pc, std::fma(-0.5, z, 1.0));
  const double q = j - 4.0 * std::floor(j * 0.25);
  const bool swap = q == 1.0 || q == 3.0;
  const bool sin_neg = q >= 2.0;
  const bool cos_neg = q == 1.0 || q == 2.0;
  const double ss = swap ? c : s;
  const double cc = swap ? s : c;
  s_out = sin_neg ? -ss : ss;
  c_out = cos_neg ? -cc : cc;
}

inline __m256d poly6(__m256d z, double k1, double k2, double k3, double k4, double k5, double k6) {
  __m256d p = _mm256_fmadd_pd(z, _mm256_set1_pd(k6), _mm256_set1_pd(k5));
  p = _mm256_fmadd_pd(z, p, _mm256_set1_pd(k4));
  p = _mm256_fmadd_pd(z, p, _mm256_set1_pd(k3));
  p = _mm256_fmadd_pd(z, p, _mm256_set1_pd(k2));
  return _mm256_fmadd_pd(z, p, _mm256_set1_pd(k1));
}

inline void sincos4(__m256d x, __m256d& s_out, __m256d& c_out) {
  const __m256d j = _mm256_round_pd(_mm256_mul_pd(x, _mm256_set1_pd(kTwoOverPi)),
                                    _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  __m256d r = _mm256_fnmadd_pd(j, _mm256_set1_pd(kPio2Hi), x);
  r = _mm256_fnmadd_pd(j, _mm256_set1_pd(kPio2Mid), r);
  r = _mm256_fnmadd_pd(j, _mm256_set1_pd(kPio2Lo), r);
  const __m256d z = _mm256_mul_pd(r, r);

  const __m256d s = _mm256_fmadd_pd(_mm256_mul_pd(r, z), poly6(z, S1, S2, S3, S4, S5, S6), r);
  const __m256d one_minus = _mm256_fnmadd_pd(_mm256_set1_pd(0.5), z, _mm256_set1_pd(1.0));
  const __m256d c = _mm256_fmadd_pd(_mm256_mul_pd(z, z), poly6(z, C1, C2, C3, C4, C5, C6), one_minus);

  const __m256d floor_quarter = _mm256_floor_pd(_mm256_mul_pd(j, _mm256_set1_pd(0.25)));
  const __m256d q = _mm256_fnmadd_pd(_mm256_set1_pd(4.0), floor_quarter, j);
  const __m256d one = _mm256_set1_pd(1.0), two = _mm256_set1_pd(2.0), three = _mm256_set1_pd(3.0);
  const __m256d is1 = _mm256_cmp_pd(q, one, _CMP_EQ_OQ);
  const __m256d is2 = _mm256_cmp_pd(q, two, _CMP_EQ_OQ);
  const __m256d is3 = _mm256_cmp_pd(q, three, _CMP_EQ_OQ);
  const __m256d swap = _mm256_or_pd(is1, is3);
  const __m256d sin_neg = _mm256_or_pd(is2, is3);
  const __m256d cos_neg = _mm256_or_pd(is1, is2);
  const __m256d sign = _mm256_set1_pd(-0.0);

  const __m256d ss = _mm256_blendv_pd(s, c, swap);
  const __m256d cc = _mm256_blendv_pd(c, s, swap);
  s_out = _mm256_xor_pd(ss, _mm256_and_pd(sin_neg, sign));
  c_out = _mm256_xor_pd(cc, _mm256_and_pd(cos_neg, sign));
}

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d pair = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(pair, _mm_unpackhi_pd(pair, pair)));
}

void sincos_avx2(const double* x, double* s, double* c, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d vs, vc;
    sincos4(_mm256_loadu_pd(x + i), vs, vc);
    _mm256_storeu_pd(s + i, vs);
    _mm256_storeu_pd(c + i, vc);
  }
  for (; i < n; ++i) sincos1(x[i], s[i], c[i]);
}

void fringe_model_avx2(const double* x, std::size_t n, double x0, double kappa, double* p) {
  const __m256d vx0 = _mm256_set1_pd(x0);
  const __m256d vhalf = _mm256_set1_pd(0.5 * kappa);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d half = _mm256_mul_pd(vhalf, _mm256_sub_pd(_mm256_loadu_pd(x + i), vx0));
    __m256d vs, vc;
    sincos4(half, vs, vc);
    _mm256_storeu_pd(p + i, _mm256_mul_pd(vs, vs));
  }
  for (; i < n; ++i) {
    double s, c;
    sincos1(0.5 * kappa * (x[i] - x0), s, c);
    p[i] = s * s;
  }
}

FringeSums fringe_normal_equations_avx2(const double* x, const double* fraction, const double* shots,
                                        std::size_t n, double x0, double kappa) {
  const __m256d vx0 = _mm256_set1_pd(x0);
  const __m256d vhalf = _mm256_set1_pd(0.5 * kappa);
  const __m256d vneg_kappa = _mm256_set1_pd(-kappa);
  const __m256d vfloor = _mm256_set1_pd(kVarianceFloor);
  __m256d info = _mm256_setzero_pd(), score = _mm256_setzero_pd(), cost = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d half = _mm256_mul_pd(vhalf, _mm256_sub_pd(_mm256_loadu_pd(x + i), vx0));
    __m256d s, c;
    sincos4(half, s, c);
    const __m256d p = _mm256_mul_pd(s, s);
    const __m256d jac = _mm256_mul_pd(vneg_kappa, _mm256_mul_pd(s, c));
    const __m256d var = _mm256_max_pd(_mm256_mul_pd(p, _mm256_mul_pd(c, c)), vfloor);
    const __m256d w = _mm256_div_pd(_mm256_loadu_pd(shots + i), var);
    const __m256d r = _mm256_sub_pd(_mm256_loadu_pd(fraction + i), p);
    const __m256d wj = _mm256_mul_pd(w, jac);
    info = _mm256_fmadd_pd(wj, jac, info);
    score = _mm256_fmadd_pd(wj, r, score);
    cost = _mm256_fmadd_pd(_mm256_mul_pd(w, r), r, cost);
  }
  FringeSums acc{hsum(info), hsum(score), hsum(cost)};
  for (; i < n; ++i) {
    double s, c;
    sincos1(0.5 * kappa * (x[i] - x0), s, c);
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

const KernelTable& avx2_table() {
  static const KernelTable t{&sincos_avx2, &fringe_model_avx2, &fringe_normal_equations_avx2};
  return t;
}

}  // namespace swnoon::kernels::detail
