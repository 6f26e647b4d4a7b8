#include "qkerr/evolution.hpp"

#include <cmath>
#include <numeric>

namespace qkerr {

namespace {

constexpr long double kTwoPi = 6.283185307179586476925286766559005768L;

// e^{-i chi k t} with the exponent reduced mod 2pi in long double; k is an
// exact integer (n(n-1) or l(l-1)-n(n-1)), so accuracy is limited only by the
// rounding of chi*t itself.
cplx kerr_phase(double chi, double t, long long k) {
  long double ang = std::remainder(static_cast<long double>(chi) * static_cast<long double>(t) *
                                       static_cast<long double>(k),
                                   kTwoPi);
  return {static_cast<double>(std::cos(ang)), static_cast<double>(-std::sin(ang))};
}

}  // namespace

std::vector<double> TimeGrid::times(double chi) const {
  if (samples < 2) throw std::invalid_argument("TimeGrid: samples must be >= 2");
  if (!(start < end)) throw std::invalid_argument("TimeGrid: start must be < end");
  const double scale = in_revival_units ? revival_time(chi) : 1.0;
  std::vector<double> out(samples);
  for (int i = 0; i < samples; ++i)
    out[i] = scale * (start + (end - start) * i / (samples - 1));
  return out;
}

FockVector evolve(const FockVector& state, double t, double chi) {
  FockVector out = state;
  for (int n = 0; n <= out.cutoff(); ++n) {
    long long k = static_cast<long long>(n) * (n - 1);
    out.c[n] *= kerr_phase(chi, t, k);
  }
  return out;
}

DensityMatrix evolve_density(const DensityMatrix& rho, double t, double chi) {
  DensityMatrix out(rho.dim);
  // The pair (l, n) and (n, l) pick up exactly conjugate phases; multiplying by
  // p and conj(p) through the same code path keeps a Hermitian input Hermitian
  // to the bit, independent of how the compiler contracts the complex products.
  for (int l = 0; l < rho.dim; ++l) {
    long long kl = static_cast<long long>(l) * (l - 1);
    for (int n = l; n < rho.dim; ++n) {
      long long kn = static_cast<long long>(n) * (n - 1);
      const cplx p = kerr_phase(chi, t, kl - kn);
      out.at(l, n) = rho.at(l, n) * p;
      if (n != l) out.at(n, l) = rho.at(n, l) * std::conj(p);
    }
  }
  return out;
}

double revival_time(double chi) {
  if (!(chi > 0)) throw std::invalid_argument("revival_time: chi must be > 0");
  return M_PI / chi;
}

std::vector<double> fractional_revival_times(int k, double chi) {
  if (k < 2) throw std::invalid_argument("fractional_revival_times: k must be >= 2");
  const double trev = revival_time(chi);
  std::vector<double> out;
  for (int j = 1; j < k; ++j)
    if (std::gcd(j, k) == 1) out.push_back(trev * j / k);
  return out;
}

double autocorrelation(const FockVector& a, const FockVector& b) {
  if (a.cutoff() != b.cutoff())
    throw std::invalid_argument("autocorrelation: states have mismatched cutoffs");
  cplx s = 0;
  for (size_t n = 0; n < a.c.size(); ++n) s += std::conj(a.c[n]) * b.c[n];
  return std::norm(s);
}

}  // namespace qkerr
