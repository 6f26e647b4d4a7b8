#include "qkerr/squeezing.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "qkerr/evolution.hpp"

namespace qkerr {

double CommutatorPoly::eval(double n) const {
  double v = 0;
  for (int k = static_cast<int>(coeff.size()) - 1; k >= 0; --k)
    v = v * n + static_cast<double>(coeff[k]);
  return v;
}

CommutatorPoly commutator_poly(int q) {
  if (q < 1 || q > 12) throw std::invalid_argument("commutator_poly: q must be in [1, 12]");
  // (N+1)(N+2)...(N+q) - N(N-1)...(N-q+1), exact integer coefficient arithmetic
  std::vector<long long> rising{1}, falling{1};
  for (int j = 1; j <= q; ++j) {
    auto mul_linear = [](const std::vector<long long>& p, long long root) {
      std::vector<long long> out(p.size() + 1, 0);
      for (size_t k = 0; k < p.size(); ++k) {
        out[k + 1] += p[k];
        out[k] += root * p[k];
      }
      return out;
    };
    rising = mul_linear(rising, j);
    falling = mul_linear(falling, -(j - 1));
  }
  CommutatorPoly poly;
  poly.q = q;
  poly.coeff.resize(q);
  for (int k = 0; k < q; ++k) poly.coeff[k] = rising[k] - falling[k];
  // degree q cancels exactly
  if (rising[q] != falling[q]) throw std::logic_error("commutator_poly: leading term must cancel");
  return poly;
}

double fq_mean_numeric(const FockVector& state, int q) {
  const CommutatorPoly poly = commutator_poly(q);
  double s = 0;
  for (int n = 0; n <= state.cutoff(); ++n) s += std::norm(state.c[n]) * poly.eval(n);
  return s;
}

// <a^q a+^q> = sum_{k=0}^{q} C(q,k)^2 k! <a+^{q-k} a^{q-k}> (normal ordering),
// so <F_q> needs only the factorial moments <a+^j a^j>.
namespace {

double fq_from_factorial_moments(int q, const std::vector<double>& fmom) {
  double s = 0;
  for (int k = 1; k <= q; ++k) {
    double c = binomial(q, k);
    double kfact = 1;
    for (int i = 2; i <= k; ++i) kfact *= i;
    s += c * c * kfact * fmom[q - k];
  }
  return s;
}

// <a+^j a^j> on a PACS: sum_{n=max(0,j-m)}^{j} C(j,n) (m!/(m-j+n)!) nu^n
//                        L_m^n(-nu) / L_m(-nu)
double factorial_moment_pacs(int j, int m, double nu) {
  const double lm = laguerre(m, -nu);
  double s = 0;
  for (int n = std::max(0, j - m); n <= j; ++n) {
    double fall = 1.0;
    for (int i = m - j + n + 1; i <= m; ++i) fall *= i;
    s += binomial(j, n) * fall * std::pow(nu, n) * assoc_laguerre(m, n, -nu);
  }
  return s / lm;
}

}  // namespace

double fq_mean_cs(int q, double nu) {
  if (q < 1 || q > 12) throw std::invalid_argument("fq_mean_cs: q must be in [1, 12]");
  std::vector<double> fmom(q);
  for (int j = 0; j < q; ++j) fmom[j] = std::pow(nu, j);  // Poisson factorial moments
  return fq_from_factorial_moments(q, fmom);
}

double fq_mean_pacs(int q, int m, double nu) {
  if (q < 1 || q > 12) throw std::invalid_argument("fq_mean_pacs: q must be in [1, 12]");
  if (m < 0) throw std::invalid_argument("fq_mean_pacs: m must be >= 0");
  std::vector<double> fmom(q);
  for (int j = 0; j < q; ++j) fmom[j] = factorial_moment_pacs(j, m, nu);
  return fq_from_factorial_moments(q, fmom);
}

SqueezingReport dq_numeric(const FockVector& state, int q, double phase) {
  if (q < 1 || q > 12) throw std::invalid_argument("dq_numeric: q must be in [1, 12]");
  if (state.cutoff() < 2 * q)
    throw std::invalid_argument("dq_numeric: cutoff too small for 2q-th moment");
  const cplx m2q = moment_numeric_pq(state, 0, 2 * q);
  const cplx mq = moment_numeric_pq(state, 0, q);
  const double nqq = moment_numeric_pq(state, q, q).real();
  const double fq = fq_mean_numeric(state, q);

  const double a2 = (std::polar(1.0, 2.0 * phase) * m2q).real();
  const double a1 = (std::polar(1.0, phase) * mq).real();
  const double var_z1 = a2 + nqq + 0.5 * fq - 2.0 * a1 * a1;  // <Z1^2> - <Z1>^2

  SqueezingReport rep;
  rep.q = q;
  rep.t = std::numeric_limits<double>::quiet_NaN();
  rep.var_z1 = var_z1;
  rep.half_fq = 0.5 * fq;
  rep.dq = (var_z1 - 0.5 * fq) / fq;
  rep.squeezed = rep.dq < 0.0 && rep.dq >= -1.0 - 1e-12;
  return rep;
}

double dq_cs_half_revival(int q, double nu, double theta) {
  if (q < 1 || q > 12) throw std::invalid_argument("dq_cs_half_revival: q must be in [1, 12]");
  if (q % 2 == 0) return 0.0;
  const double c = std::cos(q * theta), s = std::sin(q * theta);
  return 2.0 * std::pow(nu, q) * (s * s - std::exp(-4.0 * nu) * c * c) / fq_mean_cs(q, nu);
}

namespace {

// The three closed-form numerator pieces, each multiplied by L_m(-nu):
//   T1 = L_m(-nu) Re<a^{2q}>,  T2 = -2 L_m(-nu) (Re<a^q>)^2,  T3 = L_m(-nu) <a+^q a^q>.
// D_q = (T1 + T2 + T3) / (L_m(-nu) <F_q(N)>).

double term3_l_times_nqq(int q, int m, double nu) {
  double s = 0;
  for (int n = std::max(0, q - m); n <= q; ++n) {
    double fall = 1.0;
    for (int i = m - q + n + 1; i <= m; ++i) fall *= i;
    s += binomial(q, n) * fall * std::pow(nu, n) * assoc_laguerre(m, n, -nu);
  }
  return s;
}

}  // namespace

double dq_pacs(int q, double t, const ModelParams& params, double phase) {
  if (q < 1 || q > 12) throw std::invalid_argument("dq_pacs: q must be in [1, 12]");
  if (params.m < 1) throw std::invalid_argument("dq_pacs: m must be >= 1 (use the CS path for m=0)");
  const int m = params.m;
  const double nu = params.nu;
  const double theta = params.theta + phase / q;
  const double chi_t = params.chi * t;
  const double lm = laguerre(m, -nu);

  // T1: nu^q e^{-nu(1-cos 4q chi t)} sum_n C(m+2q, n+2q) (nu^n/n!)
  //     cos( 2q chi t (2m+2n+2q-1) + nu sin 4q chi t - 2q theta )
  const double w4 = 4.0 * q * chi_t;
  const double env1 = std::exp(-nu * (1.0 - std::cos(w4)));
  double t1 = 0;
  {
    double nun_over_nf = 1.0;  // nu^n / n!
    for (int n = 0; n <= m; ++n) {
      if (n > 0) nun_over_nf *= nu / n;
      double ang = 2.0 * q * chi_t * (2.0 * m + 2.0 * n + 2.0 * q - 1.0) + nu * std::sin(w4) -
                   2.0 * q * theta;
      t1 += binomial(m + 2 * q, n + 2 * q) * nun_over_nf * std::cos(ang);
    }
    t1 *= std::pow(nu, q) * env1;
  }

  // T2: -(2/L_m(-nu)) nu^q e^{-2nu(1-cos 2q chi t)}
  //     { sum_n C(m+q, n+q) (nu^n/n!) cos( (q-1+2m+2n) q chi t + nu sin 2q chi t - q theta ) }^2
  const double w2 = 2.0 * q * chi_t;
  const double env2 = std::exp(-2.0 * nu * (1.0 - std::cos(w2)));
  double t2 = 0;
  {
    double inner = 0;
    double nun_over_nf = 1.0;
    for (int n = 0; n <= m; ++n) {
      if (n > 0) nun_over_nf *= nu / n;
      double ang = (q - 1.0 + 2.0 * m + 2.0 * n) * q * chi_t + nu * std::sin(w2) - q * theta;
      inner += binomial(m + q, n + q) * nun_over_nf * std::cos(ang);
    }
    t2 = -2.0 / lm * std::pow(nu, q) * env2 * inner * inner;
  }

  const double t3 = term3_l_times_nqq(q, m, nu);
  return (t1 + t2 + t3) / (lm * fq_mean_pacs(q, m, nu));
}

double dq_pacs_half_revival(int q, const ModelParams& params) {
  if (q < 1 || q > 12)
    throw std::invalid_argument("dq_pacs_half_revival: q must be in [1, 12]");
  if (params.m < 1)
    throw std::invalid_argument("dq_pacs_half_revival: m must be >= 1");
  const int m = params.m;
  const double nu = params.nu;
  const double theta = params.theta;
  const double lm = laguerre(m, -nu);

  const double sign_q = (q % 2 == 0) ? 1.0 : -1.0;  // (-1)^q
  const double t1 = sign_q * std::pow(nu, q) * assoc_laguerre(m, 2 * q, -nu) *
                    std::cos(2.0 * q * theta);
  // e^{-2nu(1-cos q pi)}: 1 for even q, e^{-4nu} for odd q; squared Laguerre
  // argument is (-1)^{q+1} nu.
  const double env = (q % 2 == 0) ? 1.0 : std::exp(-4.0 * nu);
  const double lag = assoc_laguerre(m, q, (q % 2 == 0) ? -nu : nu);
  const double cq = std::cos(q * theta);
  const double t2 = -2.0 / lm * std::pow(nu, q) * env * lag * lag * cq * cq;

  const double t3 = term3_l_times_nqq(q, m, nu);
  return (t1 + t2 + t3) / (lm * fq_mean_pacs(q, m, nu));
}

HongMandelReport hong_mandel_m4(const FockVector& state) {
  const QuadratureStats st = quadrature_stats(state, 4);
  HongMandelReport rep;
  rep.moment4 = st.central_x[4];
  rep.squeezed = rep.moment4 < 0.75;
  return rep;
}

}  // namespace qkerr
