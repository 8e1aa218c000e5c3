#pragma once
#include <functional>
#include <string>
#include <vector>

#include "resonorm/bifurcation.hpp"

namespace resonorm {

struct GridSpec {
  double xmin = -1, xmax = 1, ymin = -1, ymax = 1;
  int nx = 512, ny = 512;  // cells per axis, at least 16
};

struct Polyline {
  std::vector<std::pair<double, double>> pts;
  bool closed = false;
};

struct ContourSet {
  double level = 0;
  bool critical = false;  // passes through a saddle
  std::vector<Polyline> lines;
};

using Field = std::function<double(double, double)>;

// model Hamiltonian as a Cartesian field, I = (x^2 + y^2)/2, phi = atan2
Field model_field(const Model& m);

// marching squares with linear edge interpolation; ambiguous cells resolved
// by the grid-center sample
ContourSet contour(const Field& f, double level, const GridSpec& grid);

// auto grid covering all critical orbits of the model
GridSpec auto_grid(const Model& m, int cells = 512, double margin = 1.5);

// contours through every distinct saddle energy (merged within 1e-12)
std::vector<ContourSet> critical_level_sets(const Model& m, const GridSpec& grid);
std::vector<ContourSet> critical_level_sets(const Model& m, int cells = 512);

std::string contours_to_svg(const std::vector<ContourSet>& sets, const GridSpec& grid);
std::string contours_to_csv(const std::vector<ContourSet>& sets);

}  // namespace resonorm
