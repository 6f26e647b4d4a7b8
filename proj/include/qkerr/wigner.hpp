#pragma once

// Wigner function from the density matrix, closed-form initial-state Wigner
// functions, and the non-classicality indicator delta = int |W| d^2beta - 1.

#include <string>
#include <vector>

#include "qkerr/evolution.hpp"
#include "qkerr/fock.hpp"

namespace qkerr {

struct GridSpec {
  cplx center = 0.0;
  double half_extent = 6.0;   // > 0
  int points_per_axis = 201;  // odd, >= 9, so the center is a sample

  double spacing() const { return 2.0 * half_extent / (points_per_axis - 1); }
  double beta1(int i) const { return center.real() - half_extent + i * spacing(); }
  double beta2(int j) const { return center.imag() - half_extent + j * spacing(); }
  void validate() const;
};

// Default grid for a state: center 0, half_extent = |alpha| + 4 max(1, sqrt(nu+m)).
GridSpec default_grid(const ModelParams& params, int points_per_axis = 201);

struct WignerField {
  GridSpec grid;
  double time = 0.0;
  std::vector<double> w;  // row-major: w[i * n + j] = W(beta1_i, beta2_j)

  double at(int i, int j) const { return w[static_cast<size_t>(i) * grid.points_per_axis + j]; }
  double min_value() const;
  double max_value() const;
  int negative_cells() const;
};

// W(beta) = (2/pi) e^{-2|beta|^2} Re sum_{l<=n} (-1)^l (2 - delta_ln)
//           sqrt(l!/n!) (2 beta)^{n-l} rho_ln L_l^{n-l}(4|beta|^2).
// Requires dim <= 256 (overflow-free kernel bound).
double wigner_point(const DensityMatrix& rho, cplx beta);

// Initial-state closed forms (t = 0 only).
double wigner_cs_closed(cplx beta, const ModelParams& params);
double wigner_pacs_closed(cplx beta, const ModelParams& params);

// Every grid node; deterministic values for any thread count (each node is an
// independent write; n_threads = 0 means hardware concurrency).
WignerField wigner_grid(const DensityMatrix& rho, const GridSpec& grid, int n_threads = 0);

// Local maxima above rel_threshold * max W, strict 8-neighbor dominance.
int count_lobes(const WignerField& field, double rel_threshold = 0.1);

// Composite 2-D Simpson of f over the grid (points_per_axis odd), fixed
// ascending reduction order.
double simpson_integral(const WignerField& field, bool absolute);

struct DeltaResult {
  double raw = 0.0;      // int |W| - 1 as integrated
  double clamped = 0.0;  // max(raw, 0) when raw > -tolerance
};

// Throws std::runtime_error when the grid fails the boundary criterion
// max boundary |W| < 1e-8 max |W| (grid too small for the state).
DeltaResult delta(const DensityMatrix& rho, const GridSpec& grid, int n_threads = 0);

struct DeltaSample {
  double t = 0.0;
  double delta_raw = 0.0;
  double delta = 0.0;
};

std::vector<DeltaSample> delta_timescan(const FockVector& state0, const TimeGrid& times,
                                        const GridSpec& grid, double chi, int n_threads = 0);

// CSV writers, "%.17g", LF endings. WignerField: header beta1,beta2,w,
// row-major (beta1 outer); delta series: t,t_over_Trev,delta_raw,delta.
void write_wigner_csv(const WignerField& field, const std::string& path);
void write_delta_csv(const std::vector<DeltaSample>& series, double chi, const std::string& path);

}  // namespace qkerr
