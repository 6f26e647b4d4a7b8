#pragma once

// Moments <a+^r a^{r+s}> of evolved coherent and photon-added coherent states,
// each available two ways: closed form in (r, s, t) and brute-force summation
// on the truncated basis. Quadrature statistics come from the numeric path.

#include <array>

#include "qkerr/fock.hpp"

namespace qkerr {

struct MomentSpec {
  int r = 0;  // >= 0
  int s = 0;  // >= 0
};

// Exact truncated-basis <a+^p a^q>, ascending-n summation. Throws
// std::invalid_argument when the cutoff cannot hold the requested order.
cplx moment_numeric_pq(const FockVector& state, int p, int q);

// <a+^r a^{r+s}> == moment_numeric_pq(state, r, r+s).
cplx moment_numeric(const FockVector& state, const MomentSpec& spec);

// Coherent state closed form:
//   alpha^s nu^r e^{-nu(1-cos 2s chi t)} e^{-i chi [s(s-1)+2rs] t - i nu sin 2s chi t}.
// params.m is ignored.
cplx moment_cs(const MomentSpec& spec, double t, const ModelParams& params);

// Photon-added closed form: the same prefactor family times
//   sum_{n=0}^{r} C(r,n) m! (nu e^{-2is chi t})^n / (m-r+n)! * L_m^{s+n}(-nu e^{-2is chi t}) / L_m(-nu),
// terms with (m-r+n) < 0 dropped. Reduces to moment_cs at m = 0.
cplx moment_pacs(const MomentSpec& spec, double t, const ModelParams& params);

// <x(t)> closed forms; x = (a + a+)/sqrt(2), x0 = sqrt(2 nu) cos theta,
// p0 = sqrt(2 nu) sin theta. The m = 1, 2 variants fix params.m themselves.
double mean_x_cs(double t, const ModelParams& params);
double mean_x_pacs_m1(double t, const ModelParams& params);
double mean_x_pacs_m2(double t, const ModelParams& params);

// <x^2(t)> closed form for the coherent state.
double mean_x2_cs(double t, const ModelParams& params);

struct QuadratureStats {
  int max_order = 4;
  double mean_x = 0.0, mean_p = 0.0;
  // raw_x[k] = <x^k>, central_x[k] = <(x - <x>)^k>, k = 0..max_order; same for p.
  std::array<double, 9> raw_x{}, central_x{}, raw_p{}, central_p{};
  double var_x = 0.0, var_p = 0.0;
  double skew2_x = 0.0, skew2_p = 0.0;  // (mu3 / sigma^3)^2
  double kurt_x = 0.0, kurt_p = 0.0;    // mu4 / sigma^4
};

// Tridiagonal x (and p) matrix applied repeatedly on the truncated basis;
// max_order <= 8. Throws std::invalid_argument when the cutoff is too small.
QuadratureStats quadrature_stats(const FockVector& state, int max_order = 4);

}  // namespace qkerr
