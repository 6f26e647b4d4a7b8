#include <cmath>
#include <stdexcept>

#include "qkerr/wigner_kernel.hpp"

namespace qkerr::detail {

WignerTables prepare_tables(const DensityMatrix& rho) {
  if (rho.dim < 1) throw std::invalid_argument("prepare_tables: empty density matrix");
  if (rho.dim > 256)
    throw std::invalid_argument("prepare_tables: dimension above 256 is not supported");
  if (rho.a.size() != static_cast<size_t>(rho.dim) * rho.dim)
    throw std::invalid_argument("prepare_tables: storage does not match dim");

  WignerTables tb;
  const int dim = rho.dim;
  tb.dim = dim;
  tb.tr.resize(dim);
  tb.ti.resize(dim);
  tb.inv_ll.resize(dim);
  tb.sq.resize(dim);
  tb.seed_step.resize(dim - 1);
  for (int d = 0; d < dim; ++d) {
    const int len = dim - d;
    tb.tr[d].resize(len);
    tb.ti[d].resize(len);
    tb.inv_ll[d].resize(len);
    tb.sq[d].resize(len);
    const double weight = (d == 0) ? 1.0 : 2.0;
    for (int l = 0; l < len; ++l) {
      const cplx v = rho.at(l, l + d);
      const double sgn = (l % 2 == 0) ? 1.0 : -1.0;
      tb.tr[d][l] = sgn * weight * v.real();
      tb.ti[d][l] = sgn * weight * v.imag();
      tb.inv_ll[d][l] =
          (l == 0) ? 0.0 : 1.0 / std::sqrt(static_cast<double>(l) * (l + d));
      tb.sq[d][l] =
          (l == 0) ? 0.0 : std::sqrt(static_cast<double>(l - 1) * (l - 1 + d));
    }
  }
  for (int d = 0; d + 1 < dim; ++d) tb.seed_step[d] = 1.0 / std::sqrt(d + 1.0);
  return tb;
}

namespace {

row_fn select_row_fn() {
#if defined(QKERR_HAVE_AVX2_TU) && (defined(__x86_64__) || defined(_M_X64))
  if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) return wigner_row_avx2;
#endif
  return wigner_row_scalar;
}

}  // namespace

row_fn wigner_row() {
  static const row_fn fn = select_row_fn();
  return fn;
}

bool using_avx2() { return wigner_row() != wigner_row_scalar; }

}  // namespace qkerr::detail
