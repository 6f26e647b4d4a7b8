#pragma once

// q-th power amplitude squeezing. With Z1 = (e^{i phase} a^q + e^{-i phase} a+^q)/sqrt(2)
// and F_q(N) = [a^q, a+^q],
//   D_q = [ (dZ1)^2 - <F_q(N)>/2 ] / <F_q(N)>
//       = [ Re<e^{2 i phase} a^{2q}> - 2 (Re<e^{i phase} a^q>)^2 + <a+^q a^q> ] / <F_q(N)>,
// squeezed iff -1 <= D_q < 0. phase = 0 is the Z1 of interest; phase = -pi/2
// gives the conjugate quadrature Z2. Also: Hong-Mandel fourth-moment squeezing.

#include <vector>

#include "qkerr/fock.hpp"
#include "qkerr/moments.hpp"

namespace qkerr {

struct CommutatorPoly {
  int q = 1;
  std::vector<long long> coeff;  // F_q(N) = sum_k coeff[k] N^k, exact integers

  double eval(double n) const;
};

// Exact integer coefficients of F_q(N) = (N+1)...(N+q) - N(N-1)...(N-q+1),
// degree q-1. Throws std::invalid_argument unless 1 <= q <= 12.
CommutatorPoly commutator_poly(int q);

// <F_q(N)> on a state (numeric) and on CS / PACS photon statistics (closed
// form via factorial moments; time-invariant under the Kerr evolution).
double fq_mean_numeric(const FockVector& state, int q);
double fq_mean_cs(int q, double nu);
double fq_mean_pacs(int q, int m, double nu);

struct SqueezingReport {
  int q = 1;
  double t = 0.0;        // filled by time-scan drivers; NaN when unknown
  double dq = 0.0;
  bool squeezed = false;  // -1 <= dq < 0
  double var_z1 = 0.0;    // (dZ1)^2
  double half_fq = 0.0;   // <F_q(N)>/2
};

// Numeric D_q from truncated-basis moments. Assembled both directly from the
// moment combination and through (dZ1)^2; the two agree to ~1e-12 and the
// variance route is what is reported.
SqueezingReport dq_numeric(const FockVector& state, int q, double phase = 0.0);

// Coherent state at t = T_rev/2, closed form:
//   (2 nu^q / <F_q(N)>) (sin^2 q theta - e^{-4 nu} cos^2 q theta)  for odd q,
//   exactly 0 for even q.
double dq_cs_half_revival(int q, double nu, double theta);

// Photon-added closed form at general t (m >= 1), the three-term expansion
// divided by L_m(-nu) <F_q(N)>; phase enters as theta -> theta + phase/q.
double dq_pacs(int q, double t, const ModelParams& params, double phase = 0.0);

// Same at t = T_rev/2 via the reduced expression; equals
// dq_pacs(q, T_rev/2, params) to ~1e-10.
double dq_pacs_half_revival(int q, const ModelParams& params);

struct HongMandelReport {
  double moment4 = 0.0;  // <(x - <x>)^4>
  bool squeezed = false;  // moment4 < 3/4 (vacuum value)
};

HongMandelReport hong_mandel_m4(const FockVector& state);

}  // namespace qkerr
