#pragma once

// Exact evolution under H = hbar chi N(N-1) (diagonal in the number basis)
// and the revival-time calendar.

#include <vector>

#include "qkerr/fock.hpp"

namespace qkerr {

struct TimeGrid {
  double start = 0.0;
  double end = 1.0;
  int samples = 2;            // >= 2, endpoints included
  bool in_revival_units = false;  // when true, start/end are fractions of T_rev

  // Sample times in absolute units for the given chi.
  std::vector<double> times(double chi) const;
};

// c_n(t) = c_n(0) e^{-i chi n(n-1) t}; exponent reduced mod 2pi per level in
// long double so large t keeps full phase accuracy.
FockVector evolve(const FockVector& state, double t, double chi);

// rho_ln(t) = rho_ln(0) e^{-i chi [l(l-1) - n(n-1)] t}.
DensityMatrix evolve_density(const DensityMatrix& rho, double t, double chi);

// T_rev = pi / chi.
double revival_time(double chi);

// {pi j / (k chi) : j = 1..k-1, gcd(j, k) = 1}, increasing. Times whose
// fraction j/k reduces to a smaller denominator belong to that smaller k.
std::vector<double> fractional_revival_times(int k, double chi);

// |<a|b>|^2. Throws std::invalid_argument on mismatched cutoffs.
double autocorrelation(const FockVector& a, const FockVector& b);

}  // namespace qkerr
