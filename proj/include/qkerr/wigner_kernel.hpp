#pragma once

// Internal Wigner grid kernel. The series is reorganized by diagonal d = n - l
// around normalized displaced-parity elements
//   M_l^d(u) = e^{-u/2} u^{d/2} sqrt(l!/(l+d)!) L_l^d(u),  u = 4|beta|^2,
// each bounded by 1, evaluated by a rescaled three-term recurrence in l:
//   M_l = [ (2l-1+d-u) M_{l-1} - sqrt((l-1)(l-1+d)) M_{l-2} ] / sqrt(l(l+d)).
// Then W(beta) = (2/pi) sum_d [ cos(d phi) Re S_d - sin(d phi) Im S_d ],
// phi = arg(2 beta), S_d = sum_l (-1)^l (2 - delta_d0) rho_{l,l+d} M_l^d(u).
// The density factors and recurrence scale factors are point-independent and
// precomputed once per grid.

#include <vector>

#include "qkerr/fock.hpp"

namespace qkerr::detail {

struct WignerTables {
  int dim = 0;
  // Per diagonal d: tr[d][l] = (-1)^l (2 - delta_d0) Re rho_{l,l+d}, ti likewise.
  std::vector<std::vector<double>> tr, ti;
  // Recurrence scales, indexed [d][l]: inv_ll = 1/sqrt(l(l+d)), sq = sqrt((l-1)(l-1+d)).
  std::vector<std::vector<double>> inv_ll, sq;
  // seed_step[d] = 1/sqrt(d+1): M_0^{d+1} = M_0^d * sqrt(u) / sqrt(d+1).
  std::vector<double> seed_step;
};

// Requires rho.dim <= 256 (overflow-free bound for the M recurrence).
WignerTables prepare_tables(const DensityMatrix& rho);

// Evaluate W at `count` points (b1[i], b2[i]), writing to out[i].
using row_fn = void (*)(const WignerTables&, const double* b1, const double* b2, int count,
                        double* out);

void wigner_row_scalar(const WignerTables&, const double* b1, const double* b2, int count,
                       double* out);
#if defined(__x86_64__) || defined(_M_X64)
void wigner_row_avx2(const WignerTables&, const double* b1, const double* b2, int count,
                     double* out);
#endif

// Runtime-dispatched entry point (AVX2 when the CPU supports it).
row_fn wigner_row();
bool using_avx2();

}  // namespace qkerr::detail
