#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "qkerr/evolution.hpp"
#include "qkerr/fock.hpp"
#include "qkerr/moments.hpp"

using qkerr::cplx;
using qkerr::FockVector;
using qkerr::ModelParams;
using qkerr::MomentSpec;

namespace {

constexpr double kChi = 5.0;

ModelParams params_for(double nu, double theta, int m, double eps) {
  ModelParams p;
  p.chi = kChi;
  p.nu = nu;
  p.theta = theta;
  p.m = m;
  p.cutoff = qkerr::choose_cutoff(nu, m, eps);
  return p;
}

FockVector make_state(const ModelParams& p) {
  return p.m == 0 ? qkerr::make_coherent(p) : qkerr::make_pacs(p);
}

// Brute force <adag^r a^(r+s)> on the truncated evolved state.
cplx brute_moment(const ModelParams& p, const MomentSpec& spec, double t) {
  const FockVector ev = qkerr::evolve(make_state(p), t, p.chi);
  return oracle::moment_pq(oracle::vec(ev.c), spec.r, spec.r + spec.s);
}

std::vector<double> time_grid(double tmax, int n) {
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = tmax * i / (n - 1);
  return out;
}

}  // namespace

TEST_SUITE("moments") {

TEST_CASE("numeric moments match the ladder oracle on random states") {
  auto g = oracle::rng(20260821u);
  for (int dim : {8, 20}) {
    for (int rep = 0; rep < 3; ++rep) {
      const oracle::vec v = oracle::random_state(g, dim);
      FockVector state;
      state.c = v;
      for (int p = 0; p <= 4; ++p)
        for (int q = 0; q <= 4; ++q) {
          CAPTURE(dim);
          CAPTURE(p);
          CAPTURE(q);
          const cplx got = qkerr::moment_numeric_pq(state, p, q);
          CHECK(oracle::near_c(got, oracle::moment_pq(v, p, q), 1e-12));
        }
      CHECK(oracle::near_c(qkerr::moment_numeric_pq(state, 0, 0), cplx(1.0, 0.0), 1e-12));
    }
  }
}

TEST_CASE("numeric moment guards") {
  const auto p = params_for(1.0, 0.0, 0, 1e-10);
  const FockVector state = qkerr::make_coherent(p);
  const int n = state.cutoff();
  CHECK_THROWS_AS(qkerr::moment_numeric_pq(state, -1, 0), std::invalid_argument);
  CHECK_THROWS_AS(qkerr::moment_numeric_pq(state, 0, -2), std::invalid_argument);
  CHECK_THROWS_AS(qkerr::moment_numeric_pq(state, n + 1, 0), std::invalid_argument);
  CHECK_THROWS_AS(qkerr::moment_numeric_pq(state, 0, n + 1), std::invalid_argument);
  // The spec form addresses <adag^r a^(r+s)>.
  const cplx a = qkerr::moment_numeric(state, MomentSpec{1, 2});
  const cplx b = qkerr::moment_numeric_pq(state, 1, 3);
  CHECK(std::abs(a - b) == 0.0);
}

TEST_CASE("moments pair up under conjugation") {
  auto g = oracle::rng(77001u);
  for (int rep = 0; rep < 4; ++rep) {
    const oracle::vec v = oracle::random_state(g, 16);
    FockVector state;
    state.c = v;
    for (int p = 0; p <= 3; ++p)
      for (int q = 0; q <= 3; ++q) {
        const cplx fwd = qkerr::moment_numeric_pq(state, p, q);
        const cplx rev = qkerr::moment_numeric_pq(state, q, p);
        CAPTURE(p);
        CAPTURE(q);
        CHECK(std::abs(rev - std::conj(fwd)) <= 1e-12 * (1.0 + std::abs(fwd)));
      }
  }
}

TEST_CASE("coherent closed form matches brute force") {
  const double trev = qkerr::revival_time(kChi);
  const std::vector<double> ts{0.0,          0.05 * trev, 0.13 * trev, 0.25 * trev,
                               0.37 * trev,  0.5 * trev,  0.61 * trev, 0.75 * trev,
                               0.89 * trev,  trev,        1.23 * trev, 2.0 * trev};
  for (double nu : {0.1, 1.0, 4.0})
    for (double theta : {0.0, M_PI / 7.0}) {
      const auto p = params_for(nu, theta, 0, 1e-18);
      for (double t : ts)
        for (int r = 0; r <= 2; ++r)
          for (int s = 0; s <= 2; ++s) {
            CAPTURE(nu);
            CAPTURE(theta);
            CAPTURE(t);
            CAPTURE(r);
            CAPTURE(s);
            const MomentSpec spec{r, s};
            CHECK(oracle::near_c(qkerr::moment_cs(spec, t, p), brute_moment(p, spec, t), 1e-10));
          }
    }
}

TEST_CASE("photon added closed form matches brute force") {
  const double trev = qkerr::revival_time(kChi);
  const std::vector<double> ts{0.0,         0.07 * trev, 0.25 * trev, trev / 3.0,
                               0.5 * trev,  0.75 * trev, 0.93 * trev, trev};
  for (int m : {1, 2, 10})
    for (double nu : {0.5, 1.0}) {
      const auto p = params_for(nu, 0.3, m, 1e-18);
      for (double t : ts)
        for (int r = 0; r <= 2; ++r)
          for (int s = 0; s <= 2; ++s) {
            CAPTURE(m);
            CAPTURE(nu);
            CAPTURE(t);
            CAPTURE(r);
            CAPTURE(s);
            const MomentSpec spec{r, s};
            CHECK(oracle::near_c(qkerr::moment_pacs(spec, t, p), brute_moment(p, spec, t), 1e-10));
          }
    }
}

TEST_CASE("zero added photons reduces to the coherent closed form") {
  const double trev = qkerr::revival_time(kChi);
  for (double nu : {0.1, 1.0, 4.0})
    for (double theta : {0.0, M_PI / 7.0}) {
      const auto p = params_for(nu, theta, 0, 1e-12);
      for (double t : time_grid(trev, 21))
        for (int r = 0; r <= 3; ++r)
          for (int s = 0; s <= 3; ++s) {
            const cplx cs = qkerr::moment_cs(MomentSpec{r, s}, t, p);
            const cplx pa = qkerr::moment_pacs(MomentSpec{r, s}, t, p);
            CAPTURE(nu);
            CAPTURE(theta);
            CAPTURE(t);
            CAPTURE(r);
            CAPTURE(s);
            CHECK(std::abs(pa - cs) <= 1e-12 * (1.0 + std::abs(cs)));
          }
    }
}

TEST_CASE("mean position closed forms agree with the moment forms") {
  const double trev = qkerr::revival_time(kChi);
  for (double nu : {0.5, 2.0})
    for (double theta : {0.0, 0.9}) {
      auto p = params_for(nu, theta, 0, 1e-14);
      for (double t : time_grid(1.1 * trev, 45)) {
        CAPTURE(nu);
        CAPTURE(theta);
        CAPTURE(t);
        const double via_moment = M_SQRT2 * qkerr::moment_cs(MomentSpec{0, 1}, t, p).real();
        CHECK(std::abs(qkerr::mean_x_cs(t, p) - via_moment) <= 1e-12 * (1.0 + std::abs(via_moment)));
        p.m = 1;
        const double m1 = M_SQRT2 * qkerr::moment_pacs(MomentSpec{0, 1}, t, p).real();
        CHECK(std::abs(qkerr::mean_x_pacs_m1(t, p) - m1) <= 1e-10 * (1.0 + std::abs(m1)));
        p.m = 2;
        const double m2 = M_SQRT2 * qkerr::moment_pacs(MomentSpec{0, 1}, t, p).real();
        CHECK(std::abs(qkerr::mean_x_pacs_m2(t, p) - m2) <= 1e-10 * (1.0 + std::abs(m2)));
        p.m = 0;
      }
    }
}

TEST_CASE("mean position pins at time zero") {
  for (double nu : {0.3, 1.0, 4.0})
    for (double theta : {0.0, 0.7}) {
      const auto p = params_for(nu, theta, 0, 1e-14);
      const double x0 = qkerr::x0_of(p);
      CAPTURE(nu);
      CAPTURE(theta);
      CHECK(oracle::near_rel(qkerr::mean_x_cs(0.0, p), x0, 1e-12));
      CHECK(oracle::near_rel(qkerr::mean_x_pacs_m1(0.0, p), x0 * (2.0 + nu) / (1.0 + nu), 1e-12));
      CHECK(oracle::near_rel(qkerr::mean_x_pacs_m2(0.0, p),
                             x0 * (6.0 + 6.0 * nu + nu * nu) / (2.0 + 4.0 * nu + nu * nu), 1e-12));
    }
}

TEST_CASE("mean position closed forms agree with brute force") {
  const double trev = qkerr::revival_time(kChi);
  const std::vector<double> ts{0.0, 0.11 * trev, 0.33 * trev, 0.5 * trev, 0.86 * trev};
  for (double t : ts) {
    CAPTURE(t);
    {
      const auto p = params_for(1.3, 0.4, 0, 1e-18);
      const FockVector ev = qkerr::evolve(qkerr::make_coherent(p), t, kChi);
      const double want = M_SQRT2 * oracle::moment_pq(oracle::vec(ev.c), 0, 1).real();
      CHECK(std::abs(qkerr::mean_x_cs(t, p) - want) <= 1e-10 * (1.0 + std::abs(want)));
    }
    {
      const auto p = params_for(1.3, 0.4, 1, 1e-18);
      const FockVector ev = qkerr::evolve(qkerr::make_pacs(p), t, kChi);
      const double want = M_SQRT2 * oracle::moment_pq(oracle::vec(ev.c), 0, 1).real();
      CHECK(std::abs(qkerr::mean_x_pacs_m1(t, p) - want) <= 1e-10 * (1.0 + std::abs(want)));
    }
    {
      const auto p = params_for(1.3, 0.4, 2, 1e-18);
      const FockVector ev = qkerr::evolve(qkerr::make_pacs(p), t, kChi);
      const double want = M_SQRT2 * oracle::moment_pq(oracle::vec(ev.c), 0, 1).real();
      CHECK(std::abs(qkerr::mean_x_pacs_m2(t, p) - want) <= 1e-10 * (1.0 + std::abs(want)));
    }
  }
}

TEST_CASE("second moment closed form for the coherent state") {
  const double trev = qkerr::revival_time(kChi);
  for (double nu : {0.5, 2.0, 20.0})
    for (double theta : {0.0, 0.9}) {
      const auto p = params_for(nu, theta, 0, 1e-14);
      for (double t : time_grid(1.1 * trev, 100)) {
        const double want = qkerr::moment_cs(MomentSpec{0, 2}, t, p).real() +
                            qkerr::moment_cs(MomentSpec{1, 0}, t, p).real() + 0.5;
        CAPTURE(nu);
        CAPTURE(theta);
        CAPTURE(t);
        CHECK(std::abs(qkerr::mean_x2_cs(t, p) - want) <= 1e-10 * (1.0 + std::abs(want)));
      }
      if (theta == 0.0) {
        const double x0 = qkerr::x0_of(p);
        CHECK(oracle::near_rel(qkerr::mean_x2_cs(0.0, p), 0.5 + x0 * x0, 1e-12));
      }
    }
}

TEST_CASE("the collapsed plateau pins the quadratures") {
  // Large field, middle of the collapse window: the oscillating envelopes are
  // dead and the distribution is phase randomized around the origin.
  const auto p = params_for(20.0, 0.0, 0, 1e-12);
  const double trev = qkerr::revival_time(kChi);
  const double x0 = qkerr::x0_of(p);
  const double plateau = 0.5 * (1.0 + x0 * x0);
  for (int i = 0; i <= 40; ++i) {
    const double t = trev * (0.2 + 0.2 * i / 40.0);
    CAPTURE(t);
    CHECK(std::abs(qkerr::mean_x_cs(t, p)) < 1e-3);
    CHECK(std::abs(qkerr::mean_x2_cs(t, p) - plateau) < 1e-3);
  }
}

TEST_CASE("closed forms are periodic in the revival time") {
  const double trev = qkerr::revival_time(kChi);
  const std::vector<MomentSpec> specs{{1, 2}, {2, 1}, {0, 3}};
  const std::vector<double> ts{0.07, 0.29, 0.5, 0.84};
  auto pcs = params_for(1.7, 0.6, 0, 1e-12);
  auto ppa = params_for(1.7, 0.6, 2, 1e-12);
  for (double f : ts) {
    const double t = f * trev;
    CAPTURE(t);
    for (const auto& spec : specs) {
      const cplx a = qkerr::moment_cs(spec, t, pcs);
      const cplx b = qkerr::moment_cs(spec, t + trev, pcs);
      CHECK(std::abs(a - b) <= 1e-12 * (1.0 + std::abs(a)));
      const cplx c = qkerr::moment_pacs(spec, t, ppa);
      const cplx d = qkerr::moment_pacs(spec, t + trev, ppa);
      CHECK(std::abs(c - d) <= 1e-12 * (1.0 + std::abs(c)));
    }
    CHECK(std::abs(qkerr::mean_x_cs(t, pcs) - qkerr::mean_x_cs(t + trev, pcs)) <= 1e-12);
    CHECK(std::abs(qkerr::mean_x2_cs(t, pcs) - qkerr::mean_x2_cs(t + trev, pcs)) <= 1e-11);
    auto p1 = ppa;
    p1.m = 1;
    CHECK(std::abs(qkerr::mean_x_pacs_m1(t, p1) - qkerr::mean_x_pacs_m1(t + trev, p1)) <= 1e-12);
    CHECK(std::abs(qkerr::mean_x_pacs_m2(t, ppa) - qkerr::mean_x_pacs_m2(t + trev, ppa)) <= 1e-12);
  }
}

TEST_CASE("quadrature statistics of the vacuum") {
  ModelParams p;
  p.nu = 0.0;
  p.cutoff = 8;
  const FockVector vac = qkerr::make_coherent(p);
  const auto st = qkerr::quadrature_stats(vac, 4);
  CHECK(std::abs(st.mean_x) <= 1e-15);
  CHECK(std::abs(st.mean_p) <= 1e-15);
  CHECK(std::abs(st.var_x - 0.5) <= 1e-14);
  CHECK(std::abs(st.central_x[4] - 0.75) <= 1e-14);
  CHECK(std::abs(st.skew2_x) <= 1e-14);
  CHECK(std::abs(st.kurt_x - 3.0) <= 1e-12);
  CHECK(std::abs(st.central_p[2] - 0.5) <= 1e-14);
}

TEST_CASE("quadrature statistics of a fresh packet") {
  const auto p = params_for(1.44, 0.35, 0, 1e-16);
  const auto st = qkerr::quadrature_stats(qkerr::make_coherent(p), 4);
  CHECK(std::abs(st.mean_x - qkerr::x0_of(p)) <= 1e-10);
  CHECK(std::abs(st.mean_p - qkerr::p0_of(p)) <= 1e-10);
  CHECK(std::abs(st.var_x - 0.5) <= 1e-10);
  CHECK(std::abs(st.kurt_x - 3.0) <= 1e-9);
}

TEST_CASE("quadrature statistics track the closed forms in time") {
  const double trev = qkerr::revival_time(kChi);
  const auto p = params_for(2.0, 0.0, 0, 1e-16);
  const FockVector state = qkerr::make_coherent(p);
  for (double f : {0.1, 0.37}) {
    const double t = f * trev;
    CAPTURE(t);
    const FockVector ev = qkerr::evolve(state, t, kChi);
    const auto st = qkerr::quadrature_stats(ev, 4);
    const double mx = qkerr::mean_x_cs(t, p);
    const double mx2 = qkerr::mean_x2_cs(t, p);
    CHECK(std::abs(st.mean_x - mx) <= 1e-9);
    CHECK(std::abs(st.raw_x[2] - mx2) <= 1e-9);
    CHECK(std::abs(st.var_x - (mx2 - mx * mx)) <= 1e-9);
    const cplx a2 = oracle::moment_pq(oracle::vec(ev.c), 0, 2);
    const cplx n1 = oracle::moment_pq(oracle::vec(ev.c), 1, 1);
    CHECK(std::abs(st.raw_p[2] - (-a2.real() + n1.real() + 0.5)) <= 1e-9);
  }
}

TEST_CASE("quadrature statistics stay sane on random states") {
  auto g = oracle::rng(4422u);
  for (int rep = 0; rep < 10; ++rep) {
    FockVector state;
    state.c = oracle::random_state(g, 12);
    const auto st = qkerr::quadrature_stats(state, 4);
    CAPTURE(rep);
    CHECK(st.var_x > 0.0);
    CHECK(st.skew2_x >= 0.0);
    CHECK(st.kurt_x >= 0.0);
    CHECK(st.central_x[2] == st.var_x);
  }
}

TEST_CASE("quadrature statistics guards") {
  const auto p = params_for(1.0, 0.0, 0, 1e-12);
  const FockVector state = qkerr::make_coherent(p);
  CHECK_THROWS_AS(qkerr::quadrature_stats(state, 1), std::invalid_argument);
  CHECK_THROWS_AS(qkerr::quadrature_stats(state, 9), std::invalid_argument);
  ModelParams tiny;
  tiny.nu = 0.0;
  tiny.cutoff = 3;
  const FockVector small = qkerr::make_coherent(tiny);
  CHECK_THROWS_AS(qkerr::quadrature_stats(small, 4), std::invalid_argument);
}

}  // TEST_SUITE
