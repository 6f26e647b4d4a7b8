#include "qkerr/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <stdexcept>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "qkerr/evolution.hpp"
#include "qkerr/moments.hpp"
#include "qkerr/squeezing.hpp"
#include "qkerr/wigner.hpp"

namespace fs = std::filesystem;

namespace qkerr {

ScanAxis parse_scan_axis(const std::string& text) {
  const size_t c1 = text.find(':');
  const size_t c2 = (c1 == std::string::npos) ? std::string::npos : text.find(':', c1 + 1);
  if (c1 == std::string::npos || c2 == std::string::npos || text.find(':', c2 + 1) != std::string::npos)
    throw std::invalid_argument("scan axis must be MIN:MAX:N, got '" + text + "'");
  ScanAxis axis;
  try {
    size_t used = 0;
    const std::string f1 = text.substr(0, c1), f2 = text.substr(c1 + 1, c2 - c1 - 1),
                      f3 = text.substr(c2 + 1);
    axis.min = std::stod(f1, &used);
    if (used != f1.size()) throw std::invalid_argument(text);
    axis.max = std::stod(f2, &used);
    if (used != f2.size()) throw std::invalid_argument(text);
    axis.n = std::stoi(f3, &used);
    if (used != f3.size()) throw std::invalid_argument(text);
  } catch (const std::exception&) {
    throw std::invalid_argument("scan axis must be MIN:MAX:N, got '" + text + "'");
  }
  if (axis.n < 2) throw std::invalid_argument("scan axis needs N >= 2, got '" + text + "'");
  if (!std::isfinite(axis.min) || !std::isfinite(axis.max))
    throw std::invalid_argument("scan axis bounds must be finite, got '" + text + "'");
  return axis;
}

namespace {

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

void write_csv(const fs::path& path, const std::string& header,
               const std::vector<std::string>& lines) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string());
  out << header << '\n';
  for (const auto& line : lines) out << line << '\n';
  if (!out.flush()) throw std::runtime_error("write failed for " + path.string());
}

// Defaults that the struct leaves empty, materialized in one place so the
// sidecar records exactly what ran.
void finalize_defaults(ScenarioConfig& cfg) {
  if (cfg.m_list.empty()) cfg.m_list = {0};
  if (cfg.q_list.empty()) cfg.q_list = {1};
  if (cfg.at_times.empty()) cfg.at_times = {0.0, 0.5};
  if (!cfg.nu_scan) cfg.nu_scan = ScanAxis{0.05, 10.0, 200};
  if (!cfg.theta_scan) cfg.theta_scan = ScanAxis{0.0, std::numbers::pi, 181};
  for (int m : cfg.m_list)
    if (m < 0) throw std::invalid_argument("m must be >= 0");
  for (int q : cfg.q_list)
    if (q < 1 || q > 12) throw std::invalid_argument("q must be in [1, 12]");
  if (!(cfg.params.chi > 0)) throw std::invalid_argument("chi must be > 0");
  if (cfg.params.nu < 0) throw std::invalid_argument("nu must be >= 0");
  if (!(cfg.tail_epsilon > 0) || cfg.tail_epsilon >= 1)
    throw std::invalid_argument("cutoff-eps must be in (0, 1)");
  if (!(cfg.tmax > 0)) throw std::invalid_argument("tmax must be > 0");
  if (cfg.samples < 2) throw std::invalid_argument("samples must be >= 2");
}

nlohmann::json axis_json(const std::optional<ScanAxis>& axis) {
  if (!axis) return nullptr;
  return {{"min", axis->min}, {"max", axis->max}, {"n", axis->n}};
}

std::string write_run_config(const ScenarioConfig& cfg, const std::string& command) {
  nlohmann::json doc;
  doc["command"] = command;
  doc["chi"] = cfg.params.chi;
  doc["nu"] = cfg.params.nu;
  doc["theta"] = cfg.params.theta;
  doc["m"] = cfg.m_list;
  doc["q"] = cfg.q_list;
  doc["cutoff_eps"] = cfg.tail_epsilon;
  doc["tmax"] = cfg.tmax;
  doc["samples"] = cfg.samples;
  doc["nu_scan"] = axis_json(cfg.nu_scan);
  doc["theta_scan"] = axis_json(cfg.theta_scan);
  doc["at"] = cfg.at_times;
  doc["grid_extent"] = cfg.grid_extent;
  doc["grid_points"] = cfg.grid_points;
  doc["threads"] = cfg.threads;
  doc["out"] = cfg.out_dir;
  std::ofstream out(fs::path(cfg.out_dir) / "run_config.json", std::ios::binary);
  if (!out) throw std::runtime_error("cannot open run_config.json in " + cfg.out_dir);
  out << doc.dump(1) << '\n';
  if (!out.flush()) throw std::runtime_error("write failed for run_config.json");
  return "run_config.json";
}

int scenario_cutoff(const ModelParams& p, double tail_epsilon, int floor_n) {
  return std::max(choose_cutoff(p.nu, p.m, tail_epsilon), floor_n);
}

FockVector make_state(const ModelParams& p) {
  return p.m == 0 ? make_coherent(p) : make_pacs(p);
}

GridSpec scenario_grid(const ModelParams& p, const ScenarioConfig& cfg) {
  GridSpec grid = default_grid(p, cfg.grid_points);
  if (cfg.grid_extent > 0) grid.half_extent = cfg.grid_extent;
  grid.validate();
  return grid;
}

}  // namespace

std::vector<std::string> cmd_revival_scan(const ScenarioConfig& config) {
  ScenarioConfig cfg = config;
  finalize_defaults(cfg);
  fs::create_directories(cfg.out_dir);
  std::vector<std::string> files{write_run_config(cfg, "revival-scan")};

  const TimeGrid tg{0.0, cfg.tmax, cfg.samples, true};
  const double t_rev = revival_time(cfg.params.chi);
  for (int m : cfg.m_list) {
    ModelParams p = cfg.params;
    p.m = m;
    p.cutoff = scenario_cutoff(p, cfg.tail_epsilon, 8);
    const FockVector psi0 = make_state(p);
    std::vector<std::string> lines;
    lines.reserve(cfg.samples);
    for (double t : tg.times(p.chi)) {
      const FockVector psi = evolve(psi0, t, p.chi);
      const double ac = autocorrelation(psi0, psi);
      const QuadratureStats st = quadrature_stats(psi, 4);
      lines.push_back(format_fields(
          {t, t / t_rev, ac, st.mean_x, st.mean_p, st.var_x, st.skew2_x, st.kurt_x}));
    }
    const std::string name = "revival_scan_m" + std::to_string(m) + ".csv";
    write_csv(fs::path(cfg.out_dir) / name,
              "t,t_over_Trev,autocorr,mean_x,mean_p,var_x,skew2_x,kurt_x", lines);
    files.push_back(name);
  }
  return files;
}

std::vector<std::string> cmd_squeezing(const ScenarioConfig& config) {
  ScenarioConfig cfg = config;
  finalize_defaults(cfg);
  fs::create_directories(cfg.out_dir);
  std::vector<std::string> files{write_run_config(cfg, "squeezing")};

  const double chi = cfg.params.chi;
  const double t_half = 0.5 * revival_time(chi);
  const int q_floor = 2 * *std::max_element(cfg.q_list.begin(), cfg.q_list.end());

  auto scan_rows = [&](const ScanAxis& axis, bool vary_nu) {
    std::vector<std::string> lines;
    for (int m : cfg.m_list)
      for (int q : cfg.q_list)
        for (int i = 0; i < axis.n; ++i) {
          ModelParams p = cfg.params;
          p.m = m;
          (vary_nu ? p.nu : p.theta) = axis.at(i);
          if (p.nu < 0) throw std::invalid_argument("nu scan must stay >= 0");
          p.cutoff = scenario_cutoff(p, cfg.tail_epsilon, std::max(8, q_floor));
          const FockVector psi = evolve(make_state(p), t_half, chi);
          const SqueezingReport rep = dq_numeric(psi, q);
          lines.push_back(format_fields({static_cast<double>(m), static_cast<double>(q),
                                         vary_nu ? p.nu : p.theta, rep.dq, rep.var_z1,
                                         rep.half_fq}));
        }
    return lines;
  };
  write_csv(fs::path(cfg.out_dir) / "dq_vs_nu.csv", "m,q,nu,dq,var_z1,half_fq",
            scan_rows(*cfg.nu_scan, true));
  files.push_back("dq_vs_nu.csv");
  write_csv(fs::path(cfg.out_dir) / "dq_vs_theta.csv", "m,q,theta,dq,var_z1,half_fq",
            scan_rows(*cfg.theta_scan, false));
  files.push_back("dq_vs_theta.csv");

  const TimeGrid tg{0.0, cfg.tmax, cfg.samples, true};
  const double t_rev = revival_time(chi);
  std::vector<std::string> varx_lines, m4_lines;
  for (int m : cfg.m_list) {
    ModelParams p = cfg.params;
    p.m = m;
    p.cutoff = scenario_cutoff(p, cfg.tail_epsilon, 8);
    const FockVector psi0 = make_state(p);
    for (double t : tg.times(chi)) {
      const QuadratureStats st = quadrature_stats(evolve(psi0, t, chi), 4);
      varx_lines.push_back(format_fields(
          {static_cast<double>(m), t, t / t_rev, std::sqrt(st.var_x), std::sqrt(0.5)}));
      m4_lines.push_back(
          format_fields({static_cast<double>(m), t, t / t_rev, st.central_x[4], 0.75}));
    }
  }
  write_csv(fs::path(cfg.out_dir) / "varx_vs_t.csv", "m,t,t_over_Trev,delta_x,delta_x_vacuum",
            varx_lines);
  files.push_back("varx_vs_t.csv");
  write_csv(fs::path(cfg.out_dir) / "m4_vs_t.csv", "m,t,t_over_Trev,m4,m4_vacuum", m4_lines);
  files.push_back("m4_vs_t.csv");
  return files;
}

std::vector<std::string> cmd_wigner(const ScenarioConfig& config) {
  ScenarioConfig cfg = config;
  finalize_defaults(cfg);
  fs::create_directories(cfg.out_dir);
  std::vector<std::string> files{write_run_config(cfg, "wigner")};

  const double chi = cfg.params.chi;
  const double t_rev = revival_time(chi);
  std::vector<std::string> summary;
  for (int m : cfg.m_list) {
    ModelParams p = cfg.params;
    p.m = m;
    p.cutoff = scenario_cutoff(p, cfg.tail_epsilon, 8);
    const FockVector psi0 = make_state(p);
    const GridSpec grid = scenario_grid(p, cfg);
    for (double f : cfg.at_times) {
      const double t = f * t_rev;
      const FockVector psi = evolve(psi0, t, chi);
      WignerField field = wigner_grid(density_from_pure(psi), grid, cfg.threads);
      field.time = t;
      char tag[32];
      std::snprintf(tag, sizeof tag, "%.6g", f);
      const std::string name = "wigner_m" + std::to_string(m) + "_t" + tag + ".csv";
      write_wigner_csv(field, (fs::path(cfg.out_dir) / name).string());
      files.push_back(name);
      summary.push_back(format_fields({static_cast<double>(m), t, f, field.min_value(),
                                       field.max_value(),
                                       static_cast<double>(field.negative_cells()),
                                       static_cast<double>(count_lobes(field))}));
    }
  }
  write_csv(fs::path(cfg.out_dir) / "wigner_summary.csv",
            "m,t,t_over_Trev,min_w,max_w,negative_cells,lobes", summary);
  files.push_back("wigner_summary.csv");
  return files;
}

std::vector<std::string> cmd_delta(const ScenarioConfig& config) {
  ScenarioConfig cfg = config;
  finalize_defaults(cfg);
  fs::create_directories(cfg.out_dir);
  std::vector<std::string> files{write_run_config(cfg, "delta")};

  const double chi = cfg.params.chi;
  const double t_rev = revival_time(chi);
  const TimeGrid tg{0.0, cfg.tmax, cfg.samples, true};
  std::vector<std::string> all_lines;
  for (int m : cfg.m_list) {
    ModelParams p = cfg.params;
    p.m = m;
    p.cutoff = scenario_cutoff(p, cfg.tail_epsilon, 8);
    const FockVector psi0 = make_state(p);
    const GridSpec grid = scenario_grid(p, cfg);
    const auto series = delta_timescan(psi0, tg, grid, chi, cfg.threads);
    const std::string name = "delta_m" + std::to_string(m) + ".csv";
    write_delta_csv(series, chi, (fs::path(cfg.out_dir) / name).string());
    files.push_back(name);
    for (const auto& s : series)
      all_lines.push_back(
          format_fields({static_cast<double>(m), s.t, s.t / t_rev, s.delta_raw, s.delta}));
  }
  write_csv(fs::path(cfg.out_dir) / "delta_all.csv", "m,t,t_over_Trev,delta_raw,delta",
            all_lines);
  files.push_back("delta_all.csv");
  return files;
}

namespace {

void apply_config_axis(const nlohmann::json& doc, const char* key,
                       std::optional<ScanAxis>& axis) {
  if (!doc.contains(key) || doc.at(key).is_null()) return;
  const auto& v = doc.at(key);
  if (v.is_string()) {
    axis = parse_scan_axis(v.get<std::string>());
  } else {
    ScanAxis a;
    a.min = v.at("min").get<double>();
    a.max = v.at("max").get<double>();
    a.n = v.at("n").get<int>();
    if (a.n < 2) throw std::invalid_argument(std::string(key) + ": n must be >= 2");
    axis = a;
  }
}

void apply_config_file(const std::string& path, ScenarioConfig& cfg) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open config file " + path);
  nlohmann::json doc;
  in >> doc;
  if (doc.contains("chi")) cfg.params.chi = doc.at("chi").get<double>();
  if (doc.contains("nu")) cfg.params.nu = doc.at("nu").get<double>();
  if (doc.contains("theta")) cfg.params.theta = doc.at("theta").get<double>();
  if (doc.contains("m")) {
    if (doc.at("m").is_array())
      cfg.m_list = doc.at("m").get<std::vector<int>>();
    else
      cfg.m_list = {doc.at("m").get<int>()};
  }
  if (doc.contains("q")) {
    if (doc.at("q").is_array())
      cfg.q_list = doc.at("q").get<std::vector<int>>();
    else
      cfg.q_list = {doc.at("q").get<int>()};
  }
  if (doc.contains("cutoff_eps")) cfg.tail_epsilon = doc.at("cutoff_eps").get<double>();
  if (doc.contains("tmax")) cfg.tmax = doc.at("tmax").get<double>();
  if (doc.contains("samples")) cfg.samples = doc.at("samples").get<int>();
  apply_config_axis(doc, "nu_scan", cfg.nu_scan);
  apply_config_axis(doc, "theta_scan", cfg.theta_scan);
  if (doc.contains("at")) cfg.at_times = doc.at("at").get<std::vector<double>>();
  if (doc.contains("grid_extent")) cfg.grid_extent = doc.at("grid_extent").get<double>();
  if (doc.contains("grid_points")) cfg.grid_points = doc.at("grid_points").get<int>();
  if (doc.contains("threads")) cfg.threads = doc.at("threads").get<int>();
  if (doc.contains("out")) cfg.out_dir = doc.at("out").get<std::string>();
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  ScenarioConfig cfg;
  cfg.m_list = {0};
  cfg.q_list = {1};
  cfg.at_times = {0.0, 0.5};

  try {
    // Config file defaults load before flag parsing so explicit flags win.
    for (int i = 1; i < argc; ++i) {
      const std::string arg = argv[i];
      if (arg == "--config" && i + 1 < argc)
        apply_config_file(argv[i + 1], cfg);
      else if (arg.rfind("--config=", 0) == 0)
        apply_config_file(arg.substr(9), cfg);
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }

  CLI::App app{"Kerr-medium evolution of coherent and photon-added coherent states"};
  app.require_subcommand(1);

  std::string config_path, nu_scan_text, theta_scan_text;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON file with flag defaults (flags override)");
    sub->add_option("--chi", cfg.params.chi, "Kerr coefficient (> 0)")
        ->check(CLI::PositiveNumber);
    sub->add_option("--nu", cfg.params.nu, "|alpha|^2 of the seed coherent state (>= 0)")
        ->check(CLI::NonNegativeNumber);
    sub->add_option("--theta", cfg.params.theta, "phase of alpha");
    sub->add_option("--m", cfg.m_list, "photon additions, repeatable");
    sub->add_option("--cutoff-eps", cfg.tail_epsilon, "basis truncation tail bound");
    sub->add_option("--tmax", cfg.tmax, "scan end time in units of T_rev");
    sub->add_option("--samples", cfg.samples, "time samples (>= 2)");
    sub->add_option("--grid-extent", cfg.grid_extent, "grid half extent (0 = per-state default)");
    sub->add_option("--grid-points", cfg.grid_points, "grid points per axis (odd, >= 9)");
    sub->add_option("--threads", cfg.threads, "worker threads (0 = hardware)");
    sub->add_option("--out", cfg.out_dir, "output directory");
    return sub;
  };

  auto* sc_rev = add_common(app.add_subcommand(
      "revival-scan", "autocorrelation and quadrature statistics over one revival"));
  auto* sc_sq = add_common(
      app.add_subcommand("squeezing", "half-revival D_q scans and x-quadrature time series"));
  sc_sq->add_option("--q", cfg.q_list, "squeezing orders, repeatable");
  sc_sq->add_option("--nu-scan", nu_scan_text, "MIN:MAX:N nu scan axis");
  sc_sq->add_option("--theta-scan", theta_scan_text, "MIN:MAX:N theta scan axis");
  auto* sc_wig =
      add_common(app.add_subcommand("wigner", "Wigner function fields at chosen times"));
  sc_wig->add_option("--at", cfg.at_times, "evaluation times in units of T_rev, repeatable");
  auto* sc_del = add_common(
      app.add_subcommand("delta", "negativity indicator delta(t) over one revival"));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (!nu_scan_text.empty()) cfg.nu_scan = parse_scan_axis(nu_scan_text);
    if (!theta_scan_text.empty()) cfg.theta_scan = parse_scan_axis(theta_scan_text);
    std::vector<std::string> files;
    if (app.got_subcommand(sc_rev)) files = cmd_revival_scan(cfg);
    if (app.got_subcommand(sc_sq)) files = cmd_squeezing(cfg);
    if (app.got_subcommand(sc_wig)) files = cmd_wigner(cfg);
    if (app.got_subcommand(sc_del)) files = cmd_delta(cfg);
    for (const auto& f : files) std::printf("%s\n", f.c_str());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}

}  // namespace qkerr
