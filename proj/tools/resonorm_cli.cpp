#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "resonorm/bifurcation.hpp"
#include "resonorm/levelset.hpp"
#include "resonorm/normalform.hpp"
#include "resonorm/verify.hpp"

namespace fs = std::filesystem;
using namespace resonorm;

namespace {

struct Common {
  std::string out = "out";
  fs::path root() const {
    if (const char* env = std::getenv("RESONORM_OUT"); env && *env) return env;
    return out;
  }
  fs::path dir(const std::string& sub) const {
    fs::path p = root() / fs::path(sub);
    fs::create_directories(p);
    return p;
  }
};

void write_file(const fs::path& p, const std::string& content) {
  std::ofstream os(p, std::ios::binary);
  if (!os) throw structure_error("cannot write " + p.string());
  os << content;
  std::cout << "wrote " << p.string() << "\n";
}

std::string read_file(const std::string& p) {
  std::ifstream is(p, std::ios::binary);
  if (!is) throw parse_error("cannot read " + p);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

struct Range {
  double lo = 0, hi = 0;
  int steps = 100;
};

Range parse_range(const std::string& s) {
  Range r;
  std::stringstream ss(s);
  std::string part;
  std::vector<std::string> parts;
  while (std::getline(ss, part, ':')) parts.push_back(part);
  if (parts.size() < 2 || parts.size() > 3)
    throw parse_error("range must be lo:hi[:steps], got '" + s + "'");
  r.lo = std::stod(parts[0]);
  r.hi = std::stod(parts[1]);
  if (parts.size() == 3) r.steps = std::stoi(parts[2]);
  if (r.steps < 1) throw parse_error("range needs at least one step");
  return r;
}

std::pair<int, int> parse_grid(const std::string& s) {
  auto x = s.find('x');
  if (x == std::string::npos) throw parse_error("grid must be WxH, got '" + s + "'");
  return {std::stoi(s.substr(0, x)), std::stoi(s.substr(x + 1))};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"resonant normal forms and bifurcation diagrams near a "
               "degenerate elliptic fixed point"};
  app.require_subcommand(1);
  Common common;

  // normalize
  auto* cn = app.add_subcommand("normalize", "reduce a Hamiltonian series to normal form");
  std::string in_path;
  int n_opt = 0, truncation = 0;
  bool alt_n6 = false;
  cn->add_option("input", in_path, "series JSON file")->required();
  cn->add_option("--n", n_opt, "resonance order (checked against the file)");
  cn->add_option("--truncation", truncation, "native grade to carry")->required();
  cn->add_flag("--alt-n6", alt_n6, "use the alternative n = 6 shape");
  cn->add_option("--out", common.out, "output directory");

  // bifurcate
  auto* cb = app.add_subcommand("bifurcate", "boundary curves and parameter-plane domains");
  int n_b = 7, steps_grid = 160, jobs = 1;
  double b0 = 1.0, delta = 0.0, nu = 0.0;
  std::string nu_range = "-0.2:0.2:200", delta_range;
  bool with_critical = false, with_connection = false;
  cb->add_option("--n", n_b, "resonance order")->required();
  cb->add_option("--b0", b0, "n = 6 angular coefficient");
  cb->add_option("--nu-range", nu_range, "lo:hi[:steps]");
  cb->add_option("--delta-range", delta_range, "lo:hi for the domain grid (default from nu)");
  cb->add_option("--grid-steps", steps_grid, "domain grid resolution per axis");
  cb->add_option("--jobs", jobs, "worker threads for the domain grid");
  cb->add_option("--delta", delta, "write critical points for this (delta, nu)");
  cb->add_option("--nu", nu, "write critical points for this (delta, nu)");
  cb->add_flag("--critical-points", with_critical, "write critical points CSV");
  cb->add_flag("--connection", with_connection, "write the saddle connection curve");
  cb->add_option("--out", common.out, "output directory");

  // levels
  auto* cl = app.add_subcommand("levels", "level sets of the model Hamiltonian");
  int n_l = 7;
  double delta_l = 0.001, nu_l = -0.1, b0_l = 1.0;
  std::string grid_s = "512x512", scaled;
  std::vector<double> extra_levels;
  cl->add_option("--n", n_l, "resonance order")->required();
  cl->add_option("--delta", delta_l, "detuning");
  cl->add_option("--nu", nu_l, "twist");
  cl->add_option("--b0", b0_l, "n = 6 angular coefficient");
  cl->add_option("--grid", grid_s, "cells, WxH");
  cl->add_option("--level", extra_levels, "additional explicit levels");
  cl->add_option("--out", common.out, "output directory");

  // verify
  auto* cv = app.add_subcommand("verify", "run a self-check suite");
  std::string suite = "all";
  unsigned seed = 20260826;
  bool dump_matrices = false;
  cv->add_option("--suite", suite, "tables | uniqueness | boundaries | all");
  cv->add_option("--seed", seed, "random seed");
  cv->add_flag("--dump-matrices", dump_matrices, "write homological operator matrices as CSV");
  cv->add_option("--out", common.out, "output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*cn) {
      Series input = series_from_json(read_file(in_path));
      if (n_opt && n_opt != input.n)
        throw parse_error("--n disagrees with the input file");
      bool family = input.scheme == Grading::FamilyDelta || input.scheme == Grading::FamilyPoly;
      NfVariant variant = alt_n6 ? NfVariant::AltN6 : NfVariant::Standard;
      SimplifyResult r = family ? simplify_family(input, truncation, variant)
                                : simplify_autonomous(input, truncation, variant);
      std::string stem = fs::path(in_path).stem().string();
      fs::path dir = common.dir("normalforms");
      write_file(dir / (stem + ".nf.json"), normal_form_to_json(r.nf));
      write_file(dir / (stem + ".table.txt"), normal_form_table(r.nf));
      write_file(dir / (stem + ".series.json"), series_to_json(r.series));
    } else if (*cb) {
      Range nr = parse_range(nu_range);
      fs::path curves = common.dir("curves"), grids = common.dir("grids");
      write_file(curves / ("boundaries_n" + std::to_string(n_b) + ".csv"),
                 boundary_curves_csv(n_b, nr.lo, nr.hi, nr.steps, b0));
      Range dr;
      if (delta_range.empty()) {
        double m = std::max(std::abs(nr.lo), std::abs(nr.hi));
        dr = {-m * m, m * m, steps_grid};
      } else {
        dr = parse_range(delta_range);
      }
      Model proto{n_b, 0, 0, b0};
      write_file(grids / ("domains_n" + std::to_string(n_b) + ".csv"),
                 domain_grid_csv(proto, dr.lo, dr.hi, nr.lo, nr.hi, steps_grid, jobs));
      if (with_critical) {
        Model m{n_b, delta, nu, b0};
        write_file(curves / ("critical_points_n" + std::to_string(n_b) + ".csv"),
                   critical_points_csv(m));
      }
      if (with_connection) {
        std::ostringstream os;
        os << "nu,delta\n";
        for (int k = 0; k <= nr.steps; ++k) {
          double v = nr.lo + (nr.hi - nr.lo) * k / nr.steps;
          if (std::abs(v) < 1e-4) continue;
          try {
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.12g,%.12g\n", v, connection_curve(n_b, v, b0));
            os << buf;
          } catch (const structure_error&) {
          }
        }
        write_file(curves / ("connection_n" + std::to_string(n_b) + ".csv"), os.str());
      }
    } else if (*cl) {
      auto [gw, gh] = parse_grid(grid_s);
      Model m{n_l, delta_l, nu_l, b0_l};
      GridSpec g = auto_grid(m, std::max(gw, gh));
      g.nx = gw;
      g.ny = gh;
      auto sets = critical_level_sets(m, g);
      Field f = model_field(m);
      for (double lv : extra_levels) {
        ContourSet cs = contour(f, lv, g);
        sets.push_back(std::move(cs));
      }
      std::string stem = "levels_n" + std::to_string(n_l);
      write_file(common.dir("figures") / (stem + ".svg"), contours_to_svg(sets, g));
      write_file(common.dir("curves") / (stem + ".csv"), contours_to_csv(sets));
    } else if (*cv) {
      auto results = verify_suite(suite, seed);
      bool all_ok = true;
      std::ostringstream report;
      for (auto& r : results) {
        std::string line = (r.pass ? "PASS  " : "FAIL  ") + r.name +
                           (r.detail.empty() ? "" : "  [" + r.detail + "]");
        std::cout << line << "\n";
        report << line << "\n";
        all_ok = all_ok && r.pass;
      }
      write_file(common.dir("reports") / ("verify_" + suite + ".txt"), report.str());
      if (dump_matrices) {
        fs::path rep = common.dir("reports");
        for (int n : {4, 5, 6, 7})
          for (int p = 2; p <= 8; ++p)
            write_file(rep / ("lambda_n" + std::to_string(n) + "_p" + std::to_string(p) + ".csv"),
                       lambda_matrix_csv(generic_lead(n), p));
      }
      if (!all_ok) return 3;
    }
  } catch (const degeneracy_error& e) {
    std::cerr << "degeneracy: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
