#include "resonorm/levelset.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

namespace resonorm {

Field model_field(const Model& m) {
  Model mm = m;
  return [mm](double x, double y) {
    double I = 0.5 * (x * x + y * y);
    double phi = std::atan2(y, x);
    return model_h(mm, I, phi);
  };
}

// edge key: cell corner (i, j) plus axis (0 horizontal, 1 vertical)
struct EdgeKey {
  int i, j, axis;
  friend auto operator<=>(const EdgeKey&, const EdgeKey&) = default;
};

ContourSet contour(const Field& f, double level, const GridSpec& grid) {
  if (grid.nx < 16 || grid.ny < 16)
    throw structure_error("grid must have at least 16 cells per axis");
  int nx = grid.nx, ny = grid.ny;
  double dx = (grid.xmax - grid.xmin) / nx, dy = (grid.ymax - grid.ymin) / ny;
  std::vector<double> v((nx + 1) * (ny + 1));
  auto X = [&](int i) { return grid.xmin + dx * i; };
  auto Y = [&](int j) { return grid.ymin + dy * j; };
  for (int j = 0; j <= ny; ++j)
    for (int i = 0; i <= nx; ++i) v[j * (nx + 1) + i] = f(X(i), Y(j)) - level;
  auto val = [&](int i, int j) { return v[j * (nx + 1) + i]; };

  // interpolated crossing point on an edge
  auto point = [&](const EdgeKey& e) -> std::pair<double, double> {
    double a = val(e.i, e.j);
    double b = e.axis == 0 ? val(e.i + 1, e.j) : val(e.i, e.j + 1);
    double t = a == b ? 0.5 : a / (a - b);
    t = std::clamp(t, 0.0, 1.0);
    return e.axis == 0 ? std::make_pair(X(e.i) + t * dx, Y(e.j))
                       : std::make_pair(X(e.i), Y(e.j) + t * dy);
  };

  // collect segments per cell, as pairs of edge keys
  std::multimap<EdgeKey, EdgeKey> links;
  auto link = [&](EdgeKey a, EdgeKey b) {
    links.emplace(a, b);
    links.emplace(b, a);
  };
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      double c0 = val(i, j), c1 = val(i + 1, j), c2 = val(i + 1, j + 1), c3 = val(i, j + 1);
      int mask = (c0 > 0) | ((c1 > 0) << 1) | ((c2 > 0) << 2) | ((c3 > 0) << 3);
      if (mask == 0 || mask == 15) continue;
      EdgeKey bottom{i, j, 0}, right{i + 1, j, 1}, top{i, j + 1, 0}, left{i, j, 1};
      switch (mask) {
        case 1: case 14: link(bottom, left); break;
        case 2: case 13: link(bottom, right); break;
        case 3: case 12: link(left, right); break;
        case 4: case 11: link(right, top); break;
        case 6: case 9:  link(bottom, top); break;
        case 7: case 8:  link(top, left); break;
        case 5: case 10: {
          // saddle cell: disambiguate with the center sample
          double cx = X(i) + 0.5 * dx, cy = Y(j) + 0.5 * dy;
          bool center_pos = f(cx, cy) - level > 0;
          bool corners_pos = mask == 5;  // corners 0 and 2 positive
          if (center_pos == corners_pos) {
            link(bottom, right);
            link(top, left);
          } else {
            link(bottom, left);
            link(right, top);
          }
          break;
        }
      }
    }

  // stitch linked edges into polylines
  ContourSet out;
  out.level = level;
  std::map<std::pair<EdgeKey, EdgeKey>, bool> seg_used;
  auto seg_key = [](EdgeKey a, EdgeKey b) {
    return a < b ? std::make_pair(a, b) : std::make_pair(b, a);
  };
  for (auto& [start, first] : links) {
    if (seg_used[seg_key(start, first)]) continue;
    // walk both directions from this segment
    std::vector<EdgeKey> chain{start, first};
    seg_used[seg_key(start, first)] = true;
    for (int dir = 0; dir < 2; ++dir) {
      while (true) {
        EdgeKey tail = chain.back(), before = chain[chain.size() - 2];
        auto [lo, hi] = links.equal_range(tail);
        bool extended = false;
        for (auto it = lo; it != hi; ++it) {
          if (it->second == before || seg_used[seg_key(tail, it->second)]) continue;
          seg_used[seg_key(tail, it->second)] = true;
          chain.push_back(it->second);
          extended = true;
          break;
        }
        if (!extended) break;
        if (chain.back() == chain.front()) break;
      }
      std::reverse(chain.begin(), chain.end());
    }
    Polyline pl;
    pl.closed = chain.size() > 2 && chain.front() == chain.back();
    for (auto& e : chain) pl.pts.push_back(point(e));
    out.lines.push_back(std::move(pl));
  }
  return out;
}

GridSpec auto_grid(const Model& m, int cells, double margin) {
  double rmax = 0.3;
  for (auto& cp : critical_points(m)) rmax = std::max(rmax, std::sqrt(2.0 * cp.I));
  GridSpec g;
  g.xmin = g.ymin = -margin * rmax;
  g.xmax = g.ymax = margin * rmax;
  g.nx = g.ny = cells;
  return g;
}

std::vector<ContourSet> critical_level_sets(const Model& m, const GridSpec& grid) {
  std::vector<double> energies;
  for (auto& cp : critical_points(m))
    if (cp.saddle) energies.push_back(cp.energy);
  std::sort(energies.begin(), energies.end());
  std::vector<double> merged;
  for (double e : energies)
    if (merged.empty() || std::abs(e - merged.back()) > 1e-12 * std::max(1.0, std::abs(e)))
      merged.push_back(e);
  // no saddles away from the origin: fall back to the level through the
  // fixed point itself (the separatrix rays of the degenerate cases)
  if (merged.empty()) merged.push_back(0.0);
  Field f = model_field(m);
  std::vector<ContourSet> out;
  for (double e : merged) {
    ContourSet cs = contour(f, e, grid);
    cs.critical = true;
    out.push_back(std::move(cs));
  }
  return out;
}

std::vector<ContourSet> critical_level_sets(const Model& m, int cells) {
  return critical_level_sets(m, auto_grid(m, cells));
}

static std::string fmt(double vv) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", vv);
  return buf;
}

std::string contours_to_svg(const std::vector<ContourSet>& sets, const GridSpec& grid) {
  std::ostringstream os;
  double w = grid.xmax - grid.xmin, h = grid.ymax - grid.ymin;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << fmt(grid.xmin) << " "
     << fmt(-grid.ymax) << " " << fmt(w) << " " << fmt(h) << "\" width=\"640\" height=\"640\">\n";
  os << "<rect x=\"" << fmt(grid.xmin) << "\" y=\"" << fmt(-grid.ymax) << "\" width=\""
     << fmt(w) << "\" height=\"" << fmt(h) << "\" fill=\"white\"/>\n";
  for (auto& cs : sets) {
    double stroke = cs.critical ? 0.004 * w : 0.0015 * w;
    const char* color = cs.critical ? "#c02020" : "#2040a0";
    for (auto& pl : cs.lines) {
      os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\""
         << fmt(stroke) << "\" points=\"";
      for (auto& [x, y] : pl.pts) os << fmt(x) << "," << fmt(-y) << " ";
      os << "\"/>\n";
    }
  }
  os << "</svg>\n";
  return os.str();
}

std::string contours_to_csv(const std::vector<ContourSet>& sets) {
  std::ostringstream os;
  os << "level,polyline,x,y\n";
  for (auto& cs : sets) {
    int id = 0;
    for (auto& pl : cs.lines) {
      for (auto& [x, y] : pl.pts)
        os << fmt(cs.level) << "," << id << "," << fmt(x) << "," << fmt(y) << "\n";
      ++id;
    }
  }
  return os.str();
}

}  // namespace resonorm
