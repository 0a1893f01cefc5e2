// qavg: compute and verify finite-field quadric averaging objects from the
// command line. Subcommands run the experiment sweeps, write CSV reports,
// and print one-line pass/fail summaries.
//
// Exit codes: 0 all checks passed, 1 a mathematical check failed (that is
// reportable data), 2 configuration or usage error.

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include "qavg/experiments.hpp"

using namespace qavg;

namespace {

struct CommonOpts {
  std::string config_path;
  std::vector<std::uint32_t> q_list;
  int dim = 0;
  std::vector<std::int64_t> coeffs;
  std::uint64_t seed = 0;
  std::string out_dir;
  int trials = 0;
  int sets_per_regime = 0;
};

void add_common_options(CLI::App* sub, CommonOpts& o) {
  sub->add_option("--config", o.config_path, "JSON config file");
  sub->add_option("--q", o.q_list, "field sizes (odd prime powers)")
      ->delimiter(',');
  sub->add_option("--dim", o.dim, "dimension d");
  sub->add_option("--coeffs", o.coeffs,
                  "diagonal coefficients as signed integers mod p")
      ->delimiter(',');
  sub->add_option("--seed", o.seed, "base RNG seed");
  sub->add_option("--out", o.out_dir, "output directory for CSV files");
  sub->add_option("--trials", o.trials, "random grids per Fourier check");
  sub->add_option("--sets-per-regime", o.sets_per_regime,
                  "random sets per size regime");
}

std::uint64_t env_budget() {
  if (const char* env = std::getenv("QAVG_GRID_BUDGET")) {
    try {
      return std::stoull(env);
    } catch (const std::logic_error&) {
      throw ConfigError("QAVG_GRID_BUDGET is not a number");
    }
  }
  return kDefaultGridBudget;
}

ExperimentConfig build_config(const CommonOpts& o, const CLI::App* sub) {
  ExperimentConfig base;
  base.grid_budget = env_budget();
  ExperimentConfig cfg =
      o.config_path.empty() ? base : load_config_file(o.config_path, base);
  if (!o.q_list.empty()) cfg.q_list = o.q_list;
  if (o.dim != 0) {
    cfg.d = o.dim;
    if (sub->count("--coeffs") == 0 && o.config_path.empty()) cfg.coeffs.clear();
  }
  if (sub->count("--coeffs") > 0) cfg.coeffs = o.coeffs;
  if (sub->count("--seed") > 0) cfg.seeds = {o.seed};
  if (!o.out_dir.empty()) cfg.output_dir = o.out_dir;
  if (o.trials > 0) cfg.trials = o.trials;
  if (o.sets_per_regime > 0) cfg.sets_per_regime = o.sets_per_regime;
  validate_config(cfg);
  set_grid_budget(cfg.grid_budget);
  return cfg;
}

int finish(const ExperimentConfig& cfg, const std::string& csv_name,
           const RunResult& res, const std::string& label) {
  write_csv_atomic(cfg.output_dir, csv_name, res.table);
  for (const auto& f : res.failures) std::cout << "FAIL " << f << '\n';
  std::cout << label << ": " << res.table.rows.size() << " rows -> "
            << (std::filesystem::path(cfg.output_dir) / csv_name).string()
            << (res.ok ? " [all checks passed]" : " [CHECKS FAILED]") << '\n';
  return res.ok ? 0 : 1;
}

RatPoint parse_point(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos)
    throw ConfigError("point must look like 4/5,1/5");
  return {Rational::parse(text.substr(0, comma)),
          Rational::parse(text.substr(comma + 1))};
}

int cmd_region(int d, bool general, const std::string& point_text, bool json) {
  const ExponentRegion region = region_for(d, !general);
  std::optional<RatPoint> pt;
  if (!point_text.empty()) pt = parse_point(point_text);

  if (json) {
    std::cout << "{\"d\":" << d
              << ",\"hyperbolic\":" << (general ? "false" : "true")
              << ",\"vertices\":[";
    for (std::size_t i = 0; i < region.vertices.size(); ++i) {
      if (i) std::cout << ',';
      std::cout << "[\"" << region.vertices[i].x.str() << "\",\""
                << region.vertices[i].y.str() << "\"]";
    }
    std::cout << "]";
    if (pt)
      std::cout << ",\"point\":{\"x\":\"" << pt->x.str() << "\",\"y\":\""
                << pt->y.str() << "\",\"location\":\""
                << location_name(region_classify(region, *pt)) << "\"}";
    std::cout << "}\n";
    return 0;
  }

  std::cout << "region d=" << d << (general ? " general" : " hyperbolic")
            << "\nvertices:";
  for (const auto& v : region.vertices)
    std::cout << " (" << v.x.str() << ", " << v.y.str() << ")";
  std::cout << '\n';
  if (pt)
    std::cout << "point (" << pt->x.str() << ", " << pt->y.str()
              << "): " << location_name(region_classify(region, *pt)) << '\n';
  return 0;
}

int cmd_dump_grid(std::uint32_t q, const std::vector<std::int64_t>& coeffs,
                  const std::string& which, const std::string& out_path) {
  set_grid_budget(env_budget());
  auto field = make_field_q(q);
  const QuadraticSurface s = make_surface(field, coeffs);
  const SurfaceData sd = make_surface_data(s);
  const GridFunction* g = nullptr;
  if (which == "indicator") g = &sd.indicator;
  else if (which == "dual-indicator") g = &sd.dual_indicator;
  else if (which == "sigma") g = &sd.sigma_check;
  else if (which == "kernel") g = &sd.kernel;
  else if (which == "kernel-hat") g = &sd.kernel_hat;
  else
    throw ConfigError("unknown grid '" + which +
                      "' (indicator, dual-indicator, sigma, kernel, kernel-hat)");
  if (out_path.empty()) {
    dump_csv(*g, std::cout);
  } else {
    std::ofstream os(out_path);
    if (!os) throw ConfigError("cannot open " + out_path);
    dump_csv(*g, os);
    std::cout << which << " grid (" << g->size() << " points) -> " << out_path
              << '\n';
  }
  return 0;
}

int cmd_plot_script(const std::string& csv, const std::string& out,
                    const std::string& xcol, const std::string& ycol) {
  std::ofstream os(out);
  if (!os) throw ConfigError("cannot open " + out);
  os << "set datafile separator ','\n"
     << "set key autotitle columnhead\n"
     << "set logscale xy\n"
     << "set xlabel '" << xcol << "'\n"
     << "set ylabel '" << ycol << "'\n"
     << "plot '" << csv << "' using '" << xcol << "':'" << ycol
     << "' with points pt 7\n";
  std::cout << "gnuplot script -> " << out << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite-field quadric averaging laboratory"};
  app.require_subcommand(1);

  CommonOpts fourier_o, sigma_o, kernel_o, avg_o, sharp_o;
  auto* fourier = app.add_subcommand(
      "verify-fourier", "orthogonality, Plancherel, round-trip, fast-vs-naive");
  add_common_options(fourier, fourier_o);
  auto* sigma = app.add_subcommand(
      "verify-sigma", "point counts, (d sigma)^vee closed form, decay table");
  add_common_options(sigma, sigma_o);
  auto* kernel = app.add_subcommand(
      "verify-kernel-bounds", "kernel-norm lemma certification sweeps");
  add_common_options(kernel, kernel_o);
  auto* avg =
      app.add_subcommand("verify-averaging", "critical-vertex averaging battery");
  add_common_options(avg, avg_o);
  auto* sharp =
      app.add_subcommand("sharpness", "growth-slope probe outside the region");
  add_common_options(sharp, sharp_o);
  std::string sharp_point;
  sharp->add_option("--point", sharp_point, "exponent pair, e.g. 4/5,1/5")
      ->required();

  auto* region = app.add_subcommand("region", "exponent-region vertices");
  int region_d = 4;
  bool region_general = false, region_json = false;
  std::string region_point;
  region->add_option("--dim", region_d, "dimension d");
  region->add_flag("--general", region_general,
                   "use the four-vertex general region");
  region->add_option("--point", region_point, "classify a point, e.g. 4/5,1/5");
  region->add_flag("--json", region_json, "emit JSON");

  auto* plot =
      app.add_subcommand("plot-script", "emit a gnuplot script for a CSV report");
  std::string plot_csv, plot_out = "plot.gp", plot_x = "q", plot_y = "ratio";
  plot->add_option("--csv", plot_csv, "CSV file to plot")->required();
  plot->add_option("--out", plot_out, "script path");
  plot->add_option("--x", plot_x, "x column name");
  plot->add_option("--y", plot_y, "y column name");

  auto* dump =
      app.add_subcommand("dump-grid", "dump a surface-derived grid as CSV");
  std::uint32_t dump_q = 3;
  std::vector<std::int64_t> dump_coeffs;
  std::string dump_which = "sigma", dump_out;
  dump->add_option("--q", dump_q, "field size")->required();
  dump->add_option("--coeffs", dump_coeffs, "diagonal coefficients")
      ->delimiter(',')
      ->required();
  dump->add_option("--grid", dump_which,
                   "indicator, dual-indicator, sigma, kernel, kernel-hat");
  dump->add_option("--out", dump_out, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (fourier->parsed()) {
      const auto cfg = build_config(fourier_o, fourier);
      return finish(cfg, "fourier.csv", run_verify_fourier(cfg),
                    "verify-fourier");
    }
    if (sigma->parsed()) {
      const auto cfg = build_config(sigma_o, sigma);
      return finish(cfg, "sigma.csv", run_verify_sigma(cfg), "verify-sigma");
    }
    if (kernel->parsed()) {
      const auto cfg = build_config(kernel_o, kernel);
      return finish(cfg, "kernel_bounds.csv", run_verify_kernel_bounds(cfg),
                    "verify-kernel-bounds");
    }
    if (avg->parsed()) {
      const auto cfg = build_config(avg_o, avg);
      return finish(cfg, "averaging.csv", run_verify_averaging(cfg),
                    "verify-averaging");
    }
    if (sharp->parsed()) {
      const auto cfg = build_config(sharp_o, sharp);
      return finish(cfg, "sharpness.csv",
                    run_sharpness(cfg, parse_point(sharp_point)), "sharpness");
    }
    if (region->parsed())
      return cmd_region(region_d, region_general, region_point, region_json);
    if (plot->parsed())
      return cmd_plot_script(plot_csv, plot_out, plot_x, plot_y);
    if (dump->parsed())
      return cmd_dump_grid(dump_q, dump_coeffs, dump_which, dump_out);
  } catch (const InternalConsistencyError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
