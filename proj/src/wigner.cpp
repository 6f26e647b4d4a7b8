#include "qkerr/wigner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <stdexcept>

#include "qkerr/parallel.hpp"
#include "qkerr/special.hpp"
#include "qkerr/wigner_kernel.hpp"

namespace qkerr {

void GridSpec::validate() const {
  if (!(half_extent > 0.0)) throw std::invalid_argument("GridSpec: half_extent must be > 0");
  if (points_per_axis < 9 || points_per_axis % 2 == 0)
    throw std::invalid_argument("GridSpec: points_per_axis must be odd and >= 9");
}

GridSpec default_grid(const ModelParams& params, int points_per_axis) {
  GridSpec g;
  g.center = 0.0;
  g.half_extent =
      std::sqrt(params.nu) + 4.0 * std::max(1.0, std::sqrt(params.nu + params.m));
  g.points_per_axis = points_per_axis;
  g.validate();
  return g;
}

double WignerField::min_value() const { return *std::min_element(w.begin(), w.end()); }

double WignerField::max_value() const { return *std::max_element(w.begin(), w.end()); }

int WignerField::negative_cells() const {
  return static_cast<int>(std::count_if(w.begin(), w.end(), [](double v) { return v < 0.0; }));
}

double wigner_point(const DensityMatrix& rho, cplx beta) {
  const detail::WignerTables tables = detail::prepare_tables(rho);
  const double b1 = beta.real(), b2 = beta.imag();
  double out = 0.0;
  detail::wigner_row()(tables, &b1, &b2, 1, &out);
  return out;
}

double wigner_cs_closed(cplx beta, const ModelParams& params) {
  const cplx alpha = alpha_of(params);
  return 2.0 * std::numbers::inv_pi * std::exp(-2.0 * std::norm(beta - alpha));
}

double wigner_pacs_closed(cplx beta, const ModelParams& params) {
  const cplx alpha = alpha_of(params);
  const int m = params.m;
  const double sign = (m % 2 == 0) ? 1.0 : -1.0;
  const double arg = std::norm(2.0 * beta - alpha);
  return 2.0 * std::numbers::inv_pi * sign / laguerre(m, -params.nu) * laguerre(m, arg) *
         std::exp(-2.0 * std::norm(beta - alpha));
}

WignerField wigner_grid(const DensityMatrix& rho, const GridSpec& grid, int n_threads) {
  grid.validate();
  const detail::WignerTables tables = detail::prepare_tables(rho);
  const int n = grid.points_per_axis;

  WignerField field;
  field.grid = grid;
  field.w.assign(static_cast<size_t>(n) * n, 0.0);

  std::vector<double> b2(n);
  for (int j = 0; j < n; ++j) b2[j] = grid.beta2(j);

  const detail::row_fn row = detail::wigner_row();
  parallel_for(n, n_threads, [&](int i) {
    std::vector<double> b1(n, grid.beta1(i));
    row(tables, b1.data(), b2.data(), n, field.w.data() + static_cast<size_t>(i) * n);
  });
  return field;
}

int count_lobes(const WignerField& field, double rel_threshold) {
  const int n = field.grid.points_per_axis;
  const double floor_value = rel_threshold * field.max_value();
  int lobes = 0;
  for (int i = 1; i + 1 < n; ++i)
    for (int j = 1; j + 1 < n; ++j) {
      const double v = field.at(i, j);
      if (v <= floor_value) continue;
      bool dominant = true;
      for (int di = -1; di <= 1 && dominant; ++di)
        for (int dj = -1; dj <= 1; ++dj) {
          if (di == 0 && dj == 0) continue;
          if (field.at(i + di, j + dj) >= v) {
            dominant = false;
            break;
          }
        }
      if (dominant) ++lobes;
    }
  return lobes;
}

double simpson_integral(const WignerField& field, bool absolute) {
  const int n = field.grid.points_per_axis;
  const double h = field.grid.spacing();
  auto weight = [n](int k) {
    if (k == 0 || k == n - 1) return 1.0;
    return (k % 2 == 1) ? 4.0 : 2.0;
  };
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    double row = 0.0;
    for (int j = 0; j < n; ++j) {
      const double v = field.at(i, j);
      row += weight(j) * (absolute ? std::abs(v) : v);
    }
    total += weight(i) * row;
  }
  return total * (h / 3.0) * (h / 3.0);
}

DeltaResult delta(const DensityMatrix& rho, const GridSpec& grid, int n_threads) {
  const WignerField field = wigner_grid(rho, grid, n_threads);
  const int n = grid.points_per_axis;

  double max_abs = 0.0, boundary_abs = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double v = std::abs(field.at(i, j));
      max_abs = std::max(max_abs, v);
      if (i == 0 || j == 0 || i == n - 1 || j == n - 1) boundary_abs = std::max(boundary_abs, v);
    }
  if (!(boundary_abs < 1e-8 * max_abs))
    throw std::runtime_error(
        "delta: grid boundary carries non-negligible |W|; enlarge half_extent");

  DeltaResult result;
  result.raw = simpson_integral(field, true) - 1.0;
  if (result.raw >= 0.0)
    result.clamped = result.raw;
  else if (result.raw >= -2e-3)
    result.clamped = 0.0;  // within quadrature tolerance of the exact 0 floor
  else
    result.clamped = result.raw;
  return result;
}

std::vector<DeltaSample> delta_timescan(const FockVector& state0, const TimeGrid& times,
                                        const GridSpec& grid, double chi, int n_threads) {
  std::vector<DeltaSample> series;
  for (double t : times.times(chi)) {
    const FockVector psi = evolve(state0, t, chi);
    const DeltaResult dr = delta(density_from_pure(psi), grid, n_threads);
    series.push_back({t, dr.raw, dr.clamped});
  }
  return series;
}

namespace {

void write_csv_lines(const std::string& path, const std::string& header,
                     const std::vector<std::string>& lines) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path);
  out << header << '\n';
  for (const auto& line : lines) out << line << '\n';
  if (!out.flush()) throw std::runtime_error("write failed for " + path);
}

std::string format_fields(const std::vector<double>& fields) {
  std::string line;
  char buf[32];
  for (size_t k = 0; k < fields.size(); ++k) {
    if (k) line += ',';
    std::snprintf(buf, sizeof buf, "%.17g", fields[k]);
    line += buf;
  }
  return line;
}

}  // namespace

void write_wigner_csv(const WignerField& field, const std::string& path) {
  const int n = field.grid.points_per_axis;
  std::vector<std::string> lines;
  lines.reserve(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      lines.push_back(format_fields({field.grid.beta1(i), field.grid.beta2(j), field.at(i, j)}));
  write_csv_lines(path, "beta1,beta2,w", lines);
}

void write_delta_csv(const std::vector<DeltaSample>& series, double chi, const std::string& path) {
  const double t_rev = revival_time(chi);
  std::vector<std::string> lines;
  lines.reserve(series.size());
  for (const auto& s : series)
    lines.push_back(format_fields({s.t, s.t / t_rev, s.delta_raw, s.delta}));
  write_csv_lines(path, "t,t_over_Trev,delta_raw,delta", lines);
}

}  // namespace qkerr
