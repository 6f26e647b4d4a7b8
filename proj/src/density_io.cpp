#include "qkerr/density_io.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace qkerr {

std::string density_to_json(const DensityMatrix& rho) {
  nlohmann::json doc;
  doc["dim"] = rho.dim;
  auto& entries = doc["entries"] = nlohmann::json::array();
  for (int l = 0; l < rho.dim; ++l)
    for (int n = l; n < rho.dim; ++n) {
      const cplx v = rho.at(l, n);
      if (std::abs(v) > 1e-15)
        entries.push_back(nlohmann::json::array({l, n, v.real(), v.imag()}));
    }
  return doc.dump(1);
}

DensityMatrix density_from_json(const std::string& text) {
  const nlohmann::json doc = nlohmann::json::parse(text);
  const int dim = doc.at("dim").get<int>();
  if (dim < 1) throw std::invalid_argument("density_from_json: dim must be >= 1");
  DensityMatrix rho;
  rho.dim = dim;
  rho.a.assign(static_cast<size_t>(dim) * dim, cplx{0.0, 0.0});
  for (const auto& e : doc.at("entries")) {
    const int l = e.at(0).get<int>();
    const int n = e.at(1).get<int>();
    if (l < 0 || n < 0 || l >= dim || n >= dim)
      throw std::invalid_argument("density_from_json: entry index out of range");
    const cplx v{e.at(2).get<double>(), e.at(3).get<double>()};
    rho.a[static_cast<size_t>(l) * dim + n] = v;
    if (l != n) rho.a[static_cast<size_t>(n) * dim + l] = std::conj(v);
  }
  return rho;
}

void write_density_file(const DensityMatrix& rho, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("write_density_file: cannot open " + path);
  out << density_to_json(rho) << '\n';
  if (!out.flush()) throw std::runtime_error("write_density_file: write failed for " + path);
}

DensityMatrix read_density_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("read_density_file: cannot open " + path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return density_from_json(text);
}

}  // namespace qkerr
