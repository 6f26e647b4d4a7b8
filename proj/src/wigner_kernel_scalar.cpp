#include <cmath>
#include <numbers>

#include "qkerr/wigner_kernel.hpp"

namespace qkerr::detail {

void wigner_row_scalar(const WignerTables& tb, const double* b1, const double* b2, int count,
                       double* out) {
  const int dim = tb.dim;
  constexpr double two_over_pi = 2.0 * std::numbers::inv_pi;
  for (int p = 0; p < count; ++p) {
    const double x = b1[p], y = b2[p];
    const double r2 = x * x + y * y;
    const double u = 4.0 * r2;
    const double su = 2.0 * std::sqrt(r2);  // sqrt(u)
    const double m0 = std::exp(-0.5 * u);   // M_0^0
    double c1 = 1.0, s1 = 0.0;              // (cos, sin) of arg(beta)
    if (r2 > 0.0) {
      const double inv_r = 2.0 / su;
      c1 = x * inv_r;
      s1 = y * inv_r;
    }

    double acc = 0.0;
    double m0d = m0, cd = 1.0, sd = 0.0;  // seed and (cos, sin) of d*arg(beta)
    for (int d = 0; d < dim; ++d) {
      if (d > 0) {
        m0d *= su * tb.seed_step[d - 1];
        const double cn = cd * c1 - sd * s1;
        sd = sd * c1 + cd * s1;
        cd = cn;
      }
      const double* tr = tb.tr[d].data();
      const double* ti = tb.ti[d].data();
      const double* inv = tb.inv_ll[d].data();
      const double* sq = tb.sq[d].data();
      const int len = dim - d;
      double mkm2 = 0.0, mkm1 = m0d;
      double sr = tr[0] * m0d;
      double si = ti[0] * m0d;
      for (int l = 1; l < len; ++l) {
        const double ml = ((2.0 * l - 1.0 + d - u) * mkm1 - sq[l] * mkm2) * inv[l];
        sr += tr[l] * ml;
        si += ti[l] * ml;
        mkm2 = mkm1;
        mkm1 = ml;
      }
      acc += cd * sr - sd * si;
    }
    out[p] = acc * two_over_pi;
  }
}

}  // namespace qkerr::detail
