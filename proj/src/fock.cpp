#include "qkerr/fock.hpp"

#include <cmath>
#include <limits>

namespace qkerr {

namespace {

constexpr int kSearchCap = 1000000;

// ln of the photon-number weight p_n for a PACS (CS at m = 0); -inf below m.
// p_n = e^{-nu} nu^{n-m} n! / ( ((n-m)!)^2 m! L_m(-nu) )
double log_weight(double nu, int m, double log_lm, int n) {
  if (n < m) return -std::numeric_limits<double>::infinity();
  return -nu + (n - m) * std::log(nu) + log_factorial(n) - 2.0 * log_factorial(n - m) -
         log_factorial(m) - log_lm;
}

}  // namespace

int choose_cutoff(double nu, int m, double tail_epsilon) {
  if (nu < 0 || m < 0 || !(tail_epsilon > 0) || !(tail_epsilon < 1))
    throw std::invalid_argument("choose_cutoff: need nu >= 0, m >= 0, 0 < tail_epsilon < 1");
  if (nu == 0.0) return m + 1;  // state is exactly |m>

  const double log_lm = std::log(laguerre(m, -nu));
  const double log_eps = std::log(tail_epsilon);
  // Collect log-weights out to where they are negligible even against
  // tail_epsilon itself, then form suffix sums from above so tiny epsilons
  // are never hit by 1 - cumsum cancellation.
  std::vector<double> lw;
  int n = m;
  for (;; ++n) {
    if (n - m > kSearchCap) throw std::runtime_error("choose_cutoff: search exceeded 1e6 levels");
    double w = log_weight(nu, m, log_lm, n);
    lw.push_back(w);
    bool past_mode = n > 2 * m + nu + 10;
    if (past_mode && w < log_eps - 45.0) break;  // e^{-45} ~ 3e-20 relative headroom
  }
  long double tail = 0.0L;
  int best = n;  // beyond the last collected level the tail is negligible
  for (int idx = static_cast<int>(lw.size()) - 1; idx >= 0; --idx) {
    tail += std::exp(static_cast<long double>(lw[idx]));
    int level = m + idx;
    // tail currently holds the mass of levels >= `level`, i.e. above level-1
    if (static_cast<double>(tail) < tail_epsilon)
      best = level - 1;
    else
      break;
  }
  return std::max(best, m + 1);
}

double FockVector::norm2() const {
  double s = 0;
  for (const auto& x : c) s += std::norm(x);
  return s;
}

namespace {

void renormalize(FockVector& v) {
  double inv = 1.0 / std::sqrt(v.norm2());
  for (auto& x : v.c) x *= inv;
}

}  // namespace

FockVector make_coherent(const ModelParams& params) {
  if (params.cutoff < 1) throw std::invalid_argument("make_coherent: cutoff must be >= 1");
  if (params.nu < 0) throw std::invalid_argument("make_coherent: nu must be >= 0");
  FockVector v;
  v.c.assign(params.cutoff + 1, cplx(0));
  if (params.nu == 0.0) {
    v.c[0] = 1.0;
    return v;
  }
  const double log_nu = std::log(params.nu);
  for (int n = 0; n <= params.cutoff; ++n) {
    double logmag = -0.5 * params.nu + 0.5 * n * log_nu - 0.5 * log_factorial(n);
    v.c[n] = std::polar(std::exp(logmag), n * params.theta);
  }
  renormalize(v);
  return v;
}

FockVector make_pacs(const ModelParams& params) {
  if (params.m < 0) throw std::invalid_argument("make_pacs: m must be >= 0");
  if (params.cutoff <= params.m) throw std::invalid_argument("make_pacs: cutoff must exceed m");
  if (params.nu < 0) throw std::invalid_argument("make_pacs: nu must be >= 0");
  if (params.m == 0) return make_coherent(params);  // zero added photons, same amplitudes
  const int m = params.m;
  FockVector v;
  v.c.assign(params.cutoff + 1, cplx(0));
  if (params.nu == 0.0) {
    v.c[m] = 1.0;  // (a+)^m |0> normalized
    return v;
  }
  const double log_nu = std::log(params.nu);
  const double log_lm = std::log(laguerre(m, -params.nu));
  for (int n = m; n <= params.cutoff; ++n) {
    double logmag = -0.5 * params.nu + 0.5 * (n - m) * log_nu + 0.5 * log_factorial(n) -
                    log_factorial(n - m) - 0.5 * (log_factorial(m) + log_lm);
    v.c[n] = std::polar(std::exp(logmag), (n - m) * params.theta);
  }
  renormalize(v);
  return v;
}

double DensityMatrix::trace_real() const {
  double s = 0;
  for (int n = 0; n < dim; ++n) s += at(n, n).real();
  return s;
}

double DensityMatrix::hermiticity_defect() const {
  double worst = 0;
  for (int l = 0; l < dim; ++l)
    for (int n = l; n < dim; ++n) worst = std::max(worst, std::abs(at(l, n) - std::conj(at(n, l))));
  return worst;
}

DensityMatrix density_from_pure(const FockVector& state) {
  const int dim = state.cutoff() + 1;
  DensityMatrix rho(dim);
  // Fill the upper triangle and mirror it so Hermiticity holds to the bit,
  // independent of how the compiler contracts the complex products.
  for (int l = 0; l < dim; ++l)
    for (int n = l; n < dim; ++n) {
      const cplx v = state.c[l] * std::conj(state.c[n]);
      rho.at(l, n) = v;
      rho.at(n, l) = std::conj(v);
    }
  return rho;
}

double verify_nonlinear_eigenstate(const FockVector& state, const ModelParams& params) {
  const cplx alpha = alpha_of(params);
  const int dim = state.cutoff() + 1;
  double r2 = 0;
  for (int n = 0; n < dim; ++n) {
    cplx lowered = (n + 1 < dim) ? std::sqrt(n + 1.0) * state.c[n + 1] : cplx(0);
    cplx lhs = (1.0 - static_cast<double>(params.m) / (1.0 + n)) * lowered;
    r2 += std::norm(lhs - alpha * state.c[n]);
  }
  return std::sqrt(r2);
}

}  // namespace qkerr
