#pragma once

// Laguerre / associated Laguerre polynomials with complex argument, plus the
// log-factorial and binomial helpers used throughout the library.

#include <complex>

namespace qkerr {

using cplx = std::complex<double>;

// ln(n!); cached table, safe for concurrent readers after first use.
double log_factorial(int n);

// C(n, k); 0 when k < 0 or k > n; exact integer arithmetic for n <= 60,
// rounded log-factorial form above that.
double binomial(long long n, long long k);

// L_m^k(z) by the three-term recurrence in the degree m:
//   i * L_i^k = (2i - 1 + k - z) * L_{i-1}^k - (i - 1 + k) * L_{i-2}^k,
// seeded L_0^k = 1, L_1^k = 1 + k - z. Degree capped at m <= 10000.
cplx assoc_laguerre(int m, int k, cplx z);
double assoc_laguerre(int m, int k, double z);  // real fast path, same recurrence

// L_m(z) == assoc_laguerre(m, 0, z).
cplx laguerre(int m, cplx z);
double laguerre(int m, double z);

}  // namespace qkerr
