#pragma once

// Truncated Fock-basis state construction: coherent states and m-photon-added
// coherent states, their density matrices, and the cutoff selection rule.

#include <complex>
#include <stdexcept>
#include <vector>

#include "qkerr/special.hpp"

namespace qkerr {

struct ModelParams {
  double chi = 5.0;    // Kerr strength, rad per unit time, > 0
  double nu = 1.0;     // mean photon number of the underlying coherent state, >= 0
  double theta = 0.0;  // argument of alpha, rad
  int m = 0;           // photons added, >= 0
  int cutoff = 0;      // Fock truncation N_max, >= 1 once set
};

inline cplx alpha_of(const ModelParams& p) {
  return std::polar(std::sqrt(p.nu), p.theta);
}
inline double x0_of(const ModelParams& p) { return std::sqrt(2.0 * p.nu) * std::cos(p.theta); }
inline double p0_of(const ModelParams& p) { return std::sqrt(2.0 * p.nu) * std::sin(p.theta); }

// Smallest N_max with photon-number mass above N_max below tail_epsilon,
// never below m + 1. Tail mass is accumulated from above in log-space, so
// epsilons far below 1e-16 stay meaningful. Throws std::runtime_error if the
// search exceeds 1e6 levels, std::invalid_argument on bad arguments.
int choose_cutoff(double nu, int m, double tail_epsilon);

struct FockVector {
  std::vector<cplx> c;  // amplitudes c_0 .. c_N

  int cutoff() const { return static_cast<int>(c.size()) - 1; }
  double norm2() const;
};

// c_n = e^{-nu/2} alpha^n / sqrt(n!), renormalized on the truncated basis.
// params.m is ignored. Throws std::invalid_argument if cutoff < 1.
FockVector make_coherent(const ModelParams& params);

// c_n = e^{-nu/2} alpha^{n-m} sqrt(n!) / ((n-m)! sqrt(m! L_m(-nu))) for n >= m,
// zero below; renormalized. Equals make_coherent when m = 0. Throws
// std::invalid_argument if cutoff <= m.
FockVector make_pacs(const ModelParams& params);

struct DensityMatrix {
  int dim = 0;                  // N_max + 1
  std::vector<cplx> a;          // row-major dim x dim

  DensityMatrix() = default;
  explicit DensityMatrix(int d) : dim(d), a(static_cast<size_t>(d) * d) {}
  cplx& at(int l, int n) { return a[static_cast<size_t>(l) * dim + n]; }
  const cplx& at(int l, int n) const { return a[static_cast<size_t>(l) * dim + n]; }
  double trace_real() const;
  double hermiticity_defect() const;  // max |rho_ln - conj(rho_nl)|
};

// rho_ln = c_l conj(c_n); Hermitian by construction.
DensityMatrix density_from_pure(const FockVector& state);

// Residual norm of (1 - m/(1+N)) a |state> - alpha |state> on the truncated
// basis; < 1e-8 for an adequate cutoff when state = make_pacs(params).
double verify_nonlinear_eigenstate(const FockVector& state, const ModelParams& params);

}  // namespace qkerr
