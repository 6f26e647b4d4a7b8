#include "qkerr/moments.hpp"

#include <cmath>

namespace qkerr {

cplx moment_numeric_pq(const FockVector& state, int p, int q) {
  if (p < 0 || q < 0) throw std::invalid_argument("moment_numeric: orders must be >= 0");
  const int N = state.cutoff();
  if (p > N || q > N)
    throw std::invalid_argument("moment_numeric: cutoff too small for requested moment");
  // <a+^p a^q> = sum_{n>=q} conj(c_{n-q+p}) c_n sqrt(n!/(n-q)!) sqrt((n-q+p)!/(n-q)!),
  // ascending n for a deterministic summation order.
  cplx s = 0;
  for (int n = q; n <= N; ++n) {
    int left = n - q + p;
    if (left > N) break;
    double logmag = 0.5 * (log_factorial(n) - log_factorial(n - q)) +
                    0.5 * (log_factorial(left) - log_factorial(n - q));
    s += std::conj(state.c[left]) * state.c[n] * std::exp(logmag);
  }
  return s;
}

cplx moment_numeric(const FockVector& state, const MomentSpec& spec) {
  if (spec.r < 0 || spec.s < 0) throw std::invalid_argument("moment_numeric: r, s must be >= 0");
  return moment_numeric_pq(state, spec.r, spec.r + spec.s);
}

cplx moment_cs(const MomentSpec& spec, double t, const ModelParams& params) {
  const int r = spec.r, s = spec.s;
  const double nu = params.nu;
  const double w = 2.0 * s * params.chi * t;
  const double envelope = std::exp(-nu * (1.0 - std::cos(w)));
  const double phase = params.chi * (static_cast<double>(s) * (s - 1) + 2.0 * r * s) * t +
                       nu * std::sin(w);
  const double mag = std::pow(nu, 0.5 * s + r);  // |alpha|^s nu^r
  return std::polar(mag * envelope, s * params.theta - phase);
}

cplx moment_pacs(const MomentSpec& spec, double t, const ModelParams& params) {
  const int r = spec.r, s = spec.s, m = params.m;
  if (m < 0) throw std::invalid_argument("moment_pacs: m must be >= 0");
  const double nu = params.nu;
  const double w = 2.0 * s * params.chi * t;
  const double envelope = std::exp(-nu * (1.0 - std::cos(w)));
  const double phase = params.chi * (s - 1.0 + 2.0 * m) * s * t + nu * std::sin(w);
  const cplx prefactor =
      std::polar(std::pow(nu, 0.5 * s) * envelope, s * params.theta - phase);
  // z = nu e^{-2 i s chi t}; sum_{n} C(r,n) m! z^n / (m-r+n)! * L_m^{s+n}(-z) / L_m(-nu)
  const cplx z = std::polar(nu, -w);
  const double lm = laguerre(m, -nu);
  cplx zn = 1.0;
  cplx sum = 0;
  for (int n = 0; n <= r; ++n) {
    if (n > 0) zn *= z;
    if (m - r + n >= 0) {
      // m! / (m-r+n)! as an exact falling product
      double fall = 1.0;
      for (int j = m - r + n + 1; j <= m; ++j) fall *= j;
      sum += binomial(r, n) * fall * zn * assoc_laguerre(m, s + n, -z);
    }
  }
  return prefactor * sum / lm;
}

namespace {

// <x(t)> = e^{-nu(1-cos 2 chi t)} [ x0 Re z(t) + p0 Im z(t) ], where z is the
// conjugated Laguerre-ratio factor of <a(t)> for the given m.
double mean_x_from_z(double t, const ModelParams& params, cplx z) {
  const double env = std::exp(-params.nu * (1.0 - std::cos(2.0 * params.chi * t)));
  return env * (x0_of(params) * z.real() + p0_of(params) * z.imag());
}

}  // namespace

double mean_x_cs(double t, const ModelParams& params) {
  const double ph = params.nu * std::sin(2.0 * params.chi * t);
  return mean_x_from_z(t, params, std::polar(1.0, ph));
}

double mean_x_pacs_m1(double t, const ModelParams& params) {
  const double nu = params.nu;
  const cplx rot = std::polar(1.0, 2.0 * params.chi * t);
  const cplx z1 = (2.0 + nu * rot) / (1.0 + nu) *
                  std::polar(1.0, 2.0 * params.chi * t + nu * std::sin(2.0 * params.chi * t));
  return mean_x_from_z(t, params, z1);
}

double mean_x_pacs_m2(double t, const ModelParams& params) {
  const double nu = params.nu;
  const cplx rot = std::polar(1.0, 2.0 * params.chi * t);
  const cplx z2 = (6.0 + 6.0 * nu * rot + nu * nu * rot * rot) / (2.0 + 4.0 * nu + nu * nu) *
                  std::polar(1.0, 4.0 * params.chi * t + nu * std::sin(2.0 * params.chi * t));
  return mean_x_from_z(t, params, z2);
}

double mean_x2_cs(double t, const ModelParams& params) {
  const double nu = params.nu;
  const double x0 = x0_of(params), p0 = p0_of(params);
  const double w = 4.0 * params.chi * t;
  const double env = std::exp(-nu * (1.0 - std::cos(w)));
  const double arg = 2.0 * params.chi * t + nu * std::sin(w);
  const double rhs = 1.0 + x0 * x0 + p0 * p0 +
                     env * ((x0 * x0 - p0 * p0) * std::cos(arg) + 2.0 * x0 * p0 * std::sin(arg));
  return 0.5 * rhs;
}

QuadratureStats quadrature_stats(const FockVector& state, int max_order) {
  if (max_order < 2 || max_order > 8)
    throw std::invalid_argument("quadrature_stats: max_order must be in [2, 8]");
  const int N = state.cutoff();
  if (N < max_order)
    throw std::invalid_argument("quadrature_stats: cutoff too small for requested order");

  // The amplitudes describe an exact finite superposition, so each ladder
  // application must be allowed to climb past the stored cutoff. Working in a
  // basis extended by max_order levels keeps every x^k (p^k) exact instead of
  // silently projecting back onto the stored levels.
  const int M = N + max_order;
  // x = (a + a+)/sqrt(2): (x v)_n = (sqrt(n) v_{n-1} + sqrt(n+1) v_{n+1})/sqrt(2)
  auto apply_x = [M](const std::vector<cplx>& v) {
    std::vector<cplx> out(M + 1);
    for (int n = 0; n <= M; ++n) {
      cplx lo = (n > 0) ? std::sqrt(static_cast<double>(n)) * v[n - 1] : cplx(0);
      cplx hi = (n < M) ? std::sqrt(n + 1.0) * v[n + 1] : cplx(0);
      out[n] = (lo + hi) * M_SQRT1_2;
    }
    return out;
  };
  // p = (a - a+)/(i sqrt(2)): (p v)_n = -i (sqrt(n+1) v_{n+1} - sqrt(n) v_{n-1})/sqrt(2)
  auto apply_p = [M](const std::vector<cplx>& v) {
    std::vector<cplx> out(M + 1);
    for (int n = 0; n <= M; ++n) {
      cplx lo = (n > 0) ? std::sqrt(static_cast<double>(n)) * v[n - 1] : cplx(0);
      cplx hi = (n < M) ? std::sqrt(n + 1.0) * v[n + 1] : cplx(0);
      out[n] = cplx(0, -1) * (hi - lo) * M_SQRT1_2;
    }
    return out;
  };
  auto raw_moments = [&](auto&& apply, std::array<double, 9>& raw) {
    raw[0] = 1.0;
    std::vector<cplx> phi(state.c);
    phi.resize(M + 1, cplx(0));
    for (int k = 1; k <= max_order; ++k) {
      phi = apply(phi);
      cplx v = 0;
      for (int n = 0; n <= N; ++n) v += std::conj(state.c[n]) * phi[n];
      raw[k] = v.real();  // Hermitian observable
    }
  };

  QuadratureStats st;
  st.max_order = max_order;
  raw_moments(apply_x, st.raw_x);
  raw_moments(apply_p, st.raw_p);
  st.mean_x = st.raw_x[1];
  st.mean_p = st.raw_p[1];

  auto centralize = [max_order](const std::array<double, 9>& raw, std::array<double, 9>& central) {
    const double mu = raw[1];
    for (int k = 0; k <= max_order; ++k) {
      double s = 0;
      for (int j = 0; j <= k; ++j) s += binomial(k, j) * raw[j] * std::pow(-mu, k - j);
      central[k] = s;
    }
  };
  centralize(st.raw_x, st.central_x);
  centralize(st.raw_p, st.central_p);

  st.var_x = st.central_x[2];
  st.var_p = st.central_p[2];
  auto skew2 = [](const std::array<double, 9>& c) {
    double v3 = c[2] * c[2] * c[2];
    return v3 > 0 ? c[3] * c[3] / v3 : 0.0;
  };
  auto kurt = [](const std::array<double, 9>& c) {
    double v2 = c[2] * c[2];
    return v2 > 0 ? c[4] / v2 : 0.0;
  };
  if (max_order >= 3) {
    st.skew2_x = skew2(st.central_x);
    st.skew2_p = skew2(st.central_p);
  }
  if (max_order >= 4) {
    st.kurt_x = kurt(st.central_x);
    st.kurt_p = kurt(st.central_p);
  }
  return st;
}

}  // namespace qkerr
