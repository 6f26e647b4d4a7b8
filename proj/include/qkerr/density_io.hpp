#pragma once

// Density-matrix JSON serialization:
//   { "dim": N+1, "entries": [[l, n, re, im], ...] }
// The writer emits only the upper triangle (l <= n) with |rho_ln| > 1e-15;
// the reader symmetrizes missing Hermitian partners.

#include <string>

#include "qkerr/fock.hpp"

namespace qkerr {

std::string density_to_json(const DensityMatrix& rho);
DensityMatrix density_from_json(const std::string& text);

void write_density_file(const DensityMatrix& rho, const std::string& path);
DensityMatrix read_density_file(const std::string& path);

}  // namespace qkerr
