// AVX2/FMA Wigner kernel: the scalar algorithm over four grid points per
// iteration. Table values broadcast; exp stays on libm per lane so results
// track the scalar kernel to rounding.

#include <immintrin.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qkerr/wigner_kernel.hpp"

namespace qkerr::detail {

namespace {

inline __m256d exp4(__m256d v) {
  alignas(32) double t[4];
  _mm256_store_pd(t, v);
  t[0] = std::exp(t[0]);
  t[1] = std::exp(t[1]);
  t[2] = std::exp(t[2]);
  t[3] = std::exp(t[3]);
  return _mm256_load_pd(t);
}

void kernel4(const WignerTables& tb, const double* xs, const double* ys, double* out) {
  const int dim = tb.dim;
  const __m256d x = _mm256_loadu_pd(xs);
  const __m256d y = _mm256_loadu_pd(ys);
  const __m256d r2 = _mm256_fmadd_pd(y, y, _mm256_mul_pd(x, x));
  const __m256d u = _mm256_mul_pd(_mm256_set1_pd(4.0), r2);
  const __m256d su = _mm256_mul_pd(_mm256_set1_pd(2.0), _mm256_sqrt_pd(r2));
  const __m256d m0 = exp4(_mm256_mul_pd(_mm256_set1_pd(-0.5), u));

  const __m256d zero = _mm256_setzero_pd();
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d origin = _mm256_cmp_pd(r2, zero, _CMP_EQ_OQ);
  const __m256d inv_r = _mm256_div_pd(_mm256_set1_pd(2.0), su);
  const __m256d c1 = _mm256_blendv_pd(_mm256_mul_pd(x, inv_r), one, origin);
  const __m256d s1 = _mm256_blendv_pd(_mm256_mul_pd(y, inv_r), zero, origin);

  __m256d acc = zero;
  __m256d m0d = m0, cd = one, sd = zero;
  for (int d = 0; d < dim; ++d) {
    if (d > 0) {
      m0d = _mm256_mul_pd(m0d, _mm256_mul_pd(su, _mm256_set1_pd(tb.seed_step[d - 1])));
      const __m256d cn = _mm256_fmsub_pd(cd, c1, _mm256_mul_pd(sd, s1));
      sd = _mm256_fmadd_pd(sd, c1, _mm256_mul_pd(cd, s1));
      cd = cn;
    }
    const double* tr = tb.tr[d].data();
    const double* ti = tb.ti[d].data();
    const double* inv = tb.inv_ll[d].data();
    const double* sq = tb.sq[d].data();
    const int len = dim - d;
    __m256d mkm2 = zero, mkm1 = m0d;
    __m256d sr = _mm256_mul_pd(_mm256_set1_pd(tr[0]), m0d);
    __m256d si = _mm256_mul_pd(_mm256_set1_pd(ti[0]), m0d);
    for (int l = 1; l < len; ++l) {
      const __m256d coef = _mm256_sub_pd(_mm256_set1_pd(2.0 * l - 1.0 + d), u);
      __m256d ml = _mm256_fmsub_pd(coef, mkm1, _mm256_mul_pd(_mm256_set1_pd(sq[l]), mkm2));
      ml = _mm256_mul_pd(ml, _mm256_set1_pd(inv[l]));
      sr = _mm256_fmadd_pd(_mm256_set1_pd(tr[l]), ml, sr);
      si = _mm256_fmadd_pd(_mm256_set1_pd(ti[l]), ml, si);
      mkm2 = mkm1;
      mkm1 = ml;
    }
    acc = _mm256_add_pd(acc, _mm256_fmsub_pd(cd, sr, _mm256_mul_pd(sd, si)));
  }
  _mm256_storeu_pd(out, _mm256_mul_pd(acc, _mm256_set1_pd(2.0 * std::numbers::inv_pi)));
}

}  // namespace

void wigner_row_avx2(const WignerTables& tb, const double* b1, const double* b2, int count,
                     double* out) {
  int p = 0;
  for (; p + 4 <= count; p += 4) kernel4(tb, b1 + p, b2 + p, out + p);
  if (p < count) {
    alignas(32) double xs[4], ys[4], ws[4];
    for (int i = 0; i < 4; ++i) {
      const int j = std::min(p + i, count - 1);
      xs[i] = b1[j];
      ys[i] = b2[j];
    }
    kernel4(tb, xs, ys, ws);
    for (int i = 0; p + i < count; ++i) out[p + i] = ws[i];
  }
}

}  // namespace qkerr::detail
