// Command-line front end: spectra, Bell-violation curves, threshold
// temperatures and field sweeps, with CSV output and optional SVG plots.

#include "spinbell/threshold.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

using nlohmann::json;
using namespace spinbell;

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << text;
}

// CSV to --out or stdout; the resolved RunSpec goes to a sibling
// .runspec.json file, or to stderr when printing to stdout.
void emit(const std::string& out_path, const std::string& csv,
          const json& runspec) {
  if (out_path.empty()) {
    std::cout << csv;
    std::cerr << runspec.dump(2) << "\n";
  } else {
    write_text(out_path, csv);
    write_text(out_path + ".runspec.json", runspec.dump(2) + "\n");
  }
}

std::vector<double> parse_range(const std::string& text) {
  // lo:hi:step, or a single value
  std::vector<double> parts;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ':')) parts.push_back(std::stod(tok));
  if (parts.size() == 1) return parts;
  if (parts.size() != 3 || parts[2] <= 0.0) {
    throw CLI::ValidationError("range must be lo:hi:step");
  }
  std::vector<double> values;
  for (double v = parts[0]; v <= parts[1] + 1e-9; v += parts[2]) {
    values.push_back(v);
  }
  return values;
}

std::vector<double> linspace(double lo, double hi, int steps) {
  if (steps < 1 || !(hi > lo)) {
    throw CLI::ValidationError("need tmax > tmin and steps >= 1");
  }
  std::vector<double> grid(steps);
  for (int i = 0; i < steps; ++i) {
    grid[i] = lo + (hi - lo) * i / std::max(steps - 1, 1);
  }
  return grid;
}

BellExpression expression_for(int sites) {
  if (sites == 4) return zukowski_brukner_n4();
  if (sites == 2) return chsh_n2();
  throw CLI::ValidationError("no Bell expression for this site count");
}

std::string svg_line_plot(const std::vector<ScanPoint>& scan, double bound,
                          const std::string& title) {
  const int w = 640, h = 420, ml = 60, mr = 20, mt = 40, mb = 50;
  double xmin = scan.front().temperature, xmax = scan.back().temperature;
  double ymin = 0.0, ymax = bound;
  for (const auto& p : scan) ymax = std::max(ymax, p.bell_max);
  ymax *= 1.05;
  auto px = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * (w - ml - mr); };
  auto py = [&](double y) { return h - mb - (y - ymin) / (ymax - ymin) * (h - mt - mb); };
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w
      << "\" height=\"" << h << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << w / 2 << "\" y=\"24\" text-anchor=\"middle\" "
         "font-family=\"sans-serif\" font-size=\"15\">" << title << "</text>\n"
      << "<line x1=\"" << ml << "\" y1=\"" << h - mb << "\" x2=\"" << w - mr
      << "\" y2=\"" << h - mb << "\" stroke=\"black\"/>\n"
      << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml
      << "\" y2=\"" << h - mb << "\" stroke=\"black\"/>\n";
  // classical bound reference
  svg << "<line x1=\"" << ml << "\" y1=\"" << py(bound) << "\" x2=\"" << w - mr
      << "\" y2=\"" << py(bound)
      << "\" stroke=\"gray\" stroke-dasharray=\"6 4\"/>\n";
  svg << "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\" points=\"";
  for (const auto& p : scan) svg << px(p.temperature) << "," << py(p.bell_max) << " ";
  svg << "\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    double x = xmin + (xmax - xmin) * i / 4.0;
    double y = ymin + (ymax - ymin) * i / 4.0;
    svg << "<text x=\"" << px(x) << "\" y=\"" << h - mb + 18
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
        << fmt(x) << "</text>\n"
        << "<text x=\"" << ml - 8 << "\" y=\"" << py(y) + 4
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
        << fmt(y) << "</text>\n";
  }
  svg << "<text x=\"" << (ml + w - mr) / 2 << "\" y=\"" << h - 12
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
         "temperature</text>\n</svg>\n";
  return svg.str();
}

struct CommonArgs {
  int sites = 4;
  double field = 0.0;
  int starts = 64;
  std::uint64_t seed = 42;
  std::string out;

  OptimizerConfig optimizer() const {
    OptimizerConfig cfg;
    cfg.starts = starts;
    cfg.seed = seed;
    return cfg;
  }
  json runspec(const std::string& command) const {
    return {{"command", command}, {"n_sites", sites},   {"field", field},
            {"starts", starts},   {"seed", seed},       {"out", out}};
  }
};

// Values from --spec act as defaults; explicitly passed flags win.
void apply_spec_file(CLI::App* cmd, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CLI::ValidationError("cannot read spec file: " + path);
  json doc = json::parse(in);
  static const std::pair<const char*, const char*> keys[] = {
      {"n_sites", "--sites"}, {"field", "--field"},   {"starts", "--starts"},
      {"seed", "--seed"},     {"tmin", "--tmin"},     {"tmax", "--tmax"},
      {"steps", "--steps"},   {"fields", "--fields"}, {"out", "--out"}};
  for (const auto& [key, flag] : keys) {
    auto* opt = cmd->get_option_no_throw(flag);
    if (!opt || opt->count() > 0 || !doc.contains(key)) continue;
    std::string value = doc[key].is_string() ? doc[key].get<std::string>()
                                             : doc[key].dump();
    opt->add_result(value);
    opt->run_callback();
  }
}

int run_spectrum(const CommonArgs& args) {
  std::string csv = "index,eigenvalue,label\n";
  if (args.sites == 4) {
    const auto es = canonical_eigensystem_n4(args.field);
    std::vector<int> order(16);
    for (int i = 0; i < 16; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      return es.values[a] < es.values[b];
    });
    int row = 0;
    for (int mu : order) {
      csv += std::to_string(row++) + "," + fmt(es.values[mu]) + ",phi_" +
             std::to_string(mu) + "\n";
    }
  } else {
    ChainSpec spec = ChainSpec::with_default_couplings(args.sites, args.field);
    const auto es = eigendecompose(build_field_hamiltonian(spec));
    for (std::size_t i = 0; i < es.values.size(); ++i) {
      csv += std::to_string(i) + "," + fmt(es.values[i]) + ",\n";
    }
  }
  emit(args.out, csv, args.runspec("spectrum"));
  return 0;
}

int run_bell_curve(const CommonArgs& args, double tmin, double tmax, int steps,
                   const std::string& plot_path) {
  const auto grid = linspace(tmin, tmax, steps);
  std::vector<ScanPoint> scan;
  double bound;
  if (args.sites == 3) {
    // Full-correlation quantities vanish identically for three sites;
    // report the largest sampled |Q| as the (numerically zero) maximum.
    bound = 8.0;
    ChainSpec spec = ChainSpec::with_default_couplings(3, args.field);
    const auto es = eigendecompose(build_field_hamiltonian(spec));
    std::mt19937_64 rng(args.seed);
    std::uniform_real_distribution<double> uniform(0.0, 2.0 * M_PI);
    for (double t : grid) {
      const auto rho = gibbs_state(es, t);
      double worst = 0.0;
      for (int k = 0; k < 100; ++k) {
        std::vector<double> thetas = {uniform(rng), uniform(rng), uniform(rng)};
        worst = std::max(worst, std::abs(correlation(rho, thetas)));
      }
      scan.push_back({t, worst});
    }
  } else {
    const auto expr = expression_for(args.sites);
    bound = expr.classical_bound;
    ChainSpec spec = ChainSpec::with_default_couplings(args.sites, args.field);
    scan = bell_max_vs_temperature(spec, grid, expr, args.optimizer());
  }
  std::string csv = "temperature,bell_max,violation\n";
  for (const auto& p : scan) {
    csv += fmt(p.temperature) + "," + fmt(p.bell_max) + "," +
           (p.bell_max > bound ? "true" : "false") + "\n";
  }
  json spec_doc = args.runspec("bell-curve");
  spec_doc["tmin"] = tmin;
  spec_doc["tmax"] = tmax;
  spec_doc["steps"] = steps;
  emit(args.out, csv, spec_doc);
  if (!plot_path.empty()) {
    write_text(plot_path, svg_line_plot(scan, bound,
                                        "max Bell quantity vs temperature, B=" +
                                            fmt(args.field)));
  }
  return 0;
}

int run_threshold(const CommonArgs& args, double tmin, double tmax) {
  const auto expr = expression_for(args.sites);
  ChainSpec spec = ChainSpec::with_default_couplings(args.sites, args.field);
  ThresholdConfig search;
  search.t_lo = tmin;
  search.t_hi = tmax;
  const auto report = threshold_temperature(spec, expr, search, args.optimizer());
  std::string csv = "field,threshold\n";
  csv += fmt(report.field) + "," +
         (report.threshold ? fmt(*report.threshold) : "") + "\n";
  json spec_doc = args.runspec("threshold");
  spec_doc["tmin"] = tmin;
  spec_doc["tmax"] = tmax;
  emit(args.out, csv, spec_doc);
  return 0;
}

int run_field_sweep(const CommonArgs& args, const std::string& fields_text,
                    double tmin, double tmax) {
  const auto fields = parse_range(fields_text);
  const auto expr = expression_for(args.sites);
  ChainSpec spec = ChainSpec::with_default_couplings(args.sites, 0.0);
  ThresholdConfig search;
  search.t_lo = tmin;
  search.t_hi = tmax;
  const auto reports = field_sweep(spec, fields, expr, search, args.optimizer());
  std::string csv = "field,threshold\n";
  for (const auto& r : reports) {
    csv += fmt(r.field) + "," + (r.threshold ? fmt(*r.threshold) : "") + "\n";
  }
  json spec_doc = args.runspec("field-sweep");
  spec_doc["fields"] = fields_text;
  spec_doc["tmin"] = tmin;
  spec_doc["tmax"] = tmax;
  emit(args.out, csv, spec_doc);
  return 0;
}

int run_eigenstate_bell(const CommonArgs& args, int index,
                        const std::string& family_name) {
  const auto expr = zukowski_brukner_n4();
  std::string csv;
  json spec_doc = args.runspec("eigenstate-bell");
  if (!family_name.empty()) {
    StateFamily family;
    if (family_name == "single-excitation") family = StateFamily::SingleExcitation;
    else if (family_name == "triple-excitation") family = StateFamily::TripleExcitation;
    else if (family_name == "double-excitation") family = StateFamily::DoubleExcitation;
    else throw CLI::ValidationError("unknown family: " + family_name);
    const auto report = maximize_bell_over_state_family(family, expr,
                                                        args.optimizer());
    csv = "family,bell_max,alphas,angles\n" + family_name + "," +
          fmt(report.best_value) + ",\"";
    for (std::size_t i = 0; i < report.best_alphas.size(); ++i) {
      csv += (i ? " " : "") + fmt(report.best_alphas[i]);
    }
    csv += "\",\"";
    for (int n = 0; n < 4; ++n) {
      csv += (n ? " " : "") + fmt(report.best_settings.angles[n][0]) + " " +
             fmt(report.best_settings.angles[n][1]);
    }
    csv += "\"\n";
    spec_doc["family"] = family_name;
  } else {
    if (index < 0 || index > 15) {
      throw CLI::ValidationError("--index must be in 0..15");
    }
    const auto es = canonical_eigensystem_n4(args.field);
    const DensityOperator rho =
        es.vectors.col(index) * es.vectors.col(index).transpose();
    const auto report = maximize_bell(rho, expr, args.optimizer());
    csv = "index,bell_max,angles\n" + std::to_string(index) + "," +
          fmt(report.best_value) + ",\"";
    for (int n = 0; n < 4; ++n) {
      csv += (n ? " " : "") + fmt(report.best_settings.angles[n][0]) + " " +
             fmt(report.best_settings.angles[n][1]);
    }
    csv += "\"\n";
    spec_doc["index"] = index;
  }
  emit(args.out, csv, spec_doc);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Thermal Bell-inequality analysis of the site-dependent XX chain"};
  app.require_subcommand(1);

  CommonArgs args;
  double tmin = 0.01, tmax = 2.0;
  int steps = 100;
  int index = -1;
  std::string fields_text, family_name, plot_path, spec_path;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--sites", args.sites, "number of chain sites");
    cmd->add_option("--field", args.field, "magnetic field strength B");
    cmd->add_option("--starts", args.starts, "optimizer start count");
    cmd->add_option("--seed", args.seed, "random seed");
    cmd->add_option("--out", args.out, "CSV output path (default stdout)");
    cmd->add_option("--spec", spec_path, "load run parameters from a RunSpec JSON");
  };

  auto* spectrum = app.add_subcommand("spectrum", "eigenvalue listing");
  add_common(spectrum);

  auto* curve = app.add_subcommand("bell-curve", "max Bell quantity over a temperature grid");
  add_common(curve);
  curve->add_option("--tmin", tmin, "lowest temperature");
  curve->add_option("--tmax", tmax, "highest temperature");
  curve->add_option("--steps", steps, "number of grid points");
  curve->add_option("--plot", plot_path, "also write an SVG line plot here");

  auto* thresh = app.add_subcommand("threshold", "threshold temperature at one field");
  add_common(thresh);
  thresh->add_option("--tmin", tmin, "scan range low end");
  thresh->add_option("--tmax", tmax, "scan range high end");

  auto* sweep = app.add_subcommand("field-sweep", "threshold temperature per field value");
  add_common(sweep);
  sweep->add_option("--fields", fields_text, "field list as lo:hi:step")->required();
  sweep->add_option("--tmin", tmin, "scan range low end");
  sweep->add_option("--tmax", tmax, "scan range high end");

  auto* eig = app.add_subcommand("eigenstate-bell", "max Bell quantity of one eigenstate or state family");
  add_common(eig);
  eig->add_option("--index", index, "canonical eigenstate index 0..15");
  eig->add_option("--family", family_name,
                  "single-excitation | triple-excitation | double-excitation");

  try {
    app.parse(argc, argv);
    CLI::App* active = app.get_subcommands().front();
    if (!spec_path.empty()) {
      apply_spec_file(active, spec_path);
    }
    if (spectrum->parsed()) return run_spectrum(args);
    if (curve->parsed()) return run_bell_curve(args, tmin, tmax, steps, plot_path);
    if (thresh->parsed()) return run_threshold(args, tmin, tmax);
    if (sweep->parsed()) return run_field_sweep(args, fields_text, tmin, tmax);
    if (eig->parsed()) {
      if (index < 0 && family_name.empty()) {
        throw CLI::ValidationError("need --index or --family");
      }
      return run_eigenstate_bell(args, index, family_name);
    }
    return 1;
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "computation error: " << e.what() << "\n";
    return 2;
  }
}
