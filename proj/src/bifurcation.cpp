#include "resonorm/bifurcation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <thread>

namespace resonorm {

static constexpr double kPi = 3.14159265358979323846;

void validate_model(const Model& m) {
  if (m.n < 5)
    throw structure_error("model Hamiltonian applies to n >= 5 (lower orders "
                          "bifurcate at leading order)");
  if (m.n == 6) {
    if (std::abs(m.b0) < 1e-12 || std::abs(std::abs(m.b0) - 1.0) < 1e-12)
      throw degeneracy_error("n = 6 model degenerate: b0 in {-1, 0, 1}");
  }
}

double model_g(const Model& m, double I) {
  if (m.n == 5) return std::pow(I, 2.5);
  if (m.n == 6) return m.b0 * I * I * I;
  return std::pow(I, m.n / 2.0);
}

double model_h(const Model& m, double I, double phi) {
  double c = std::cos(m.n * phi);
  if (m.n == 5) return m.delta * I + m.nu * I * I + model_g(m, I) * c;
  return m.delta * I + m.nu * I * I + I * I * I + model_g(m, I) * c;
}

double model_dh_dI(const Model& m, double I, double phi) {
  double c = std::cos(m.n * phi);
  if (m.n == 5) return m.delta + 2 * m.nu * I + 2.5 * std::pow(I, 1.5) * c;
  if (m.n == 6) return m.delta + 2 * m.nu * I + 3 * I * I * (1 + m.b0 * c);
  return m.delta + 2 * m.nu * I + 3 * I * I + (m.n / 2.0) * std::pow(I, m.n / 2.0 - 1) * c;
}

double model_d2h_dI2(const Model& m, double I, double phi) {
  double c = std::cos(m.n * phi);
  if (m.n == 5) return 2 * m.nu + 3.75 * std::sqrt(I) * c;
  if (m.n == 6) return 2 * m.nu + 6 * I * (1 + m.b0 * c);
  return 2 * m.nu + 6 * I +
         (m.n / 2.0) * (m.n / 2.0 - 1) * std::pow(I, m.n / 2.0 - 2) * c;
}

double f_sigma(const Model& m, double I, int sigma) {
  if (m.n == 5) return -2 * m.nu * I - sigma * 2.5 * std::pow(I, 1.5);
  if (m.n == 6) return -2 * m.nu * I - 3 * (1 + sigma * m.b0) * I * I;
  return -2 * m.nu * I - 3 * I * I - sigma * (m.n / 2.0) * std::pow(I, m.n / 2.0 - 1);
}

double f_sigma_prime(const Model& m, double I, int sigma) {
  if (m.n == 5) return -2 * m.nu - sigma * 3.75 * std::sqrt(I);
  if (m.n == 6) return -2 * m.nu - 6 * (1 + sigma * m.b0) * I;
  return -2 * m.nu - 6 * I -
         sigma * (m.n / 2.0) * (m.n / 2.0 - 1) * std::pow(I, m.n / 2.0 - 2);
}

// roots of delta = f_sigma(I) on (0, imax], by sign-change bracketing on a
// log-spaced grid plus bisection
static std::vector<double> radial_roots(const Model& m, int sigma, double imax) {
  auto r = [&](double I) { return m.delta - f_sigma(m, I, sigma); };
  std::vector<double> roots;
  const int grid = 8000;
  double lo = 1e-12;
  double prev_i = lo, prev_v = r(lo);
  for (int k = 1; k <= grid; ++k) {
    double I = lo * std::pow(imax / lo, double(k) / grid);
    double v = r(I);
    if (v == 0.0) roots.push_back(I);
    if (prev_v * v < 0) {
      double a = prev_i, b = I;
      for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (a + b);
        if (r(a) * r(mid) <= 0)
          b = mid;
        else
          a = mid;
        if (b - a < 1e-15 * std::max(1.0, b)) break;
      }
      roots.push_back(0.5 * (a + b));
    }
    prev_i = I;
    prev_v = v;
  }
  return roots;
}

std::vector<CriticalPoint> critical_points(const Model& m, double imax) {
  validate_model(m);
  std::vector<CriticalPoint> out;
  for (int sigma : {+1, -1}) {
    for (double I : radial_roots(m, sigma, imax)) {
      CriticalPoint cp;
      cp.I = I;
      cp.sigma = sigma;
      cp.phi = sigma == 1 ? 0.0 : kPi / m.n;
      double h_II = -f_sigma_prime(m, I, sigma);
      double h_pp = -double(m.n) * m.n * sigma * model_g(m, I);
      cp.saddle = h_II * h_pp < 0;
      cp.near_degenerate = std::abs(f_sigma_prime(m, I, sigma)) < 1e-10;
      cp.energy = model_h(m, I, cp.phi);
      out.push_back(cp);
    }
  }
  std::sort(out.begin(), out.end(), [](auto& a, auto& b) {
    return a.sigma != b.sigma ? a.sigma > b.sigma : a.I < b.I;
  });
  return out;
}

double double_point_curve(int n, double nu, int sigma, double b0) {
  if (n == 5) {
    if (sigma * nu >= 0)
      throw structure_error("n = 5 saddle-center line needs sigma * nu < 0");
    return -(128.0 / 675.0) * nu * nu * nu;
  }
  if (n == 6) {
    double c = 3 * (1 + sigma * b0);
    if (std::abs(c) < 1e-12)
      throw degeneracy_error("n = 6 saddle-center line degenerate at b0 = -sigma");
    double I = -nu / c;
    if (I <= 0)
      throw structure_error("n = 6 saddle-center line: vertex action not positive "
                            "for this (nu, sigma, b0)");
    return nu * nu / c;
  }
  if (nu >= 0)
    throw structure_error("n >= 7 saddle-center line exists for nu < 0");
  double I = -nu / 3.0, half = n / 2.0;
  for (int it = 0; it < 200; ++it) {
    double next = -nu / 3.0 - sigma * (n / 12.0) * (half - 1) * std::pow(I, half - 2);
    if (std::abs(next - I) < 1e-16 * std::max(1.0, std::abs(next))) {
      I = next;
      break;
    }
    I = next;
  }
  Model m{n, 0, nu, 1.0};
  return f_sigma(m, I, sigma);
}

double double_point_asymptote(int n, double nu, int sigma) {
  if (n < 7) throw structure_error("asymptote given for n >= 7");
  return nu * nu / 3.0 - sigma * (n / 2.0) * std::pow(-nu / 3.0, n / 2.0 - 1);
}

std::string domain_name(Domain d) {
  switch (d) {
    case Domain::D0: return "D0";
    case Domain::D1: return "D1";
    case Domain::D1p: return "D1'";
    case Domain::D2: return "D2";
    case Domain::D2p: return "D2'";
  }
  throw structure_error("bad domain enum");
}

// nearness guard: reject parameters within tol of a bifurcation line
static void guard(double x, double scale, const char* what) {
  if (std::abs(x) < 1e-10 * std::max(1.0, std::abs(scale)))
    throw structure_error(std::string("parameters lie on/near the ") + what);
}

Domain classify_domain(const Model& m) {
  validate_model(m);
  double d = m.delta, nu = m.nu;
  int n = m.n;
  if (n == 5) {
    double cubic = -(128.0 / 675.0) * nu * nu * nu;
    guard(d, nu * nu * nu, "delta = 0 axis");
    if (std::abs(nu) > 0) guard(d - cubic, cubic, "saddle-center line");
    if (nu >= 0) {
      if (d > 0) return Domain::D1p;
      return d > cubic ? Domain::D2 : Domain::D1;
    }
    if (d < 0) return Domain::D1;
    return d < cubic ? Domain::D2p : Domain::D1p;
  }
  bool unstable = n == 6 && std::abs(m.b0) > 1;
  auto dp = [&](int sigma) { return double_point_curve(n, nu, sigma, m.b0); };
  guard(d, nu * nu, "delta = 0 axis");
  if (!unstable) {
    // stable leading part: two saddle-center lines in the nu < 0 half-plane
    if (nu >= 0) return d > 0 ? Domain::D0 : Domain::D1;
    if (d < 0) return Domain::D1;
    double dplus = dp(+1), dminus = dp(-1);
    guard(d - dplus, dplus, "saddle-center line (sigma=+1)");
    guard(d - dminus, dminus, "saddle-center line (sigma=-1)");
    if (d < std::min(dplus, dminus)) return Domain::D2;
    if (d > std::max(dplus, dminus)) return Domain::D0;
    return Domain::D1p;
  }
  // n = 6, |b0| > 1: one branch opens downward; no stability domain
  if (nu == 0) return d > 0 ? Domain::D1p : Domain::D1;
  int down = m.b0 > 1 ? -1 : +1;  // family whose parabola lies in delta < 0
  if (nu > 0) {
    double dd = dp(down);  // negative
    guard(d - dd, dd, "saddle-center line");
    if (d > 0) return Domain::D1p;
    return d > dd ? Domain::D2 : Domain::D1;
  }
  double du = dp(-down);  // positive
  guard(d - du, du, "saddle-center line");
  if (d < 0) return Domain::D1;
  return d < du ? Domain::D2p : Domain::D1p;
}

double connection_curve(int n, double nu, double b0) {
  Model probe{n, 0, nu, b0};
  validate_model(probe);
  double lo, hi;
  if (n == 5) {
    double cubic = -(128.0 / 675.0) * nu * nu * nu;
    if (nu > 0) {
      lo = cubic;
      hi = 0;
    } else if (nu < 0) {
      lo = 0;
      hi = cubic;
    } else {
      throw structure_error("connection curve needs nu != 0");
    }
  } else if (n == 6 && std::abs(b0) > 1) {
    int down = b0 > 1 ? -1 : +1;
    if (nu > 0) {
      lo = double_point_curve(6, nu, down, b0);
      hi = 0;
    } else if (nu < 0) {
      lo = 0;
      hi = double_point_curve(6, nu, -down, b0);
    } else {
      throw structure_error("connection curve needs nu != 0");
    }
  } else {
    if (nu >= 0)
      throw structure_error("connection curve lies in nu < 0 for this model");
    lo = 0;
    hi = std::min(double_point_curve(n, nu, +1, b0), double_point_curve(n, nu, -1, b0));
  }
  auto saddle_energy = [&](double delta, int sigma) {
    Model m{n, delta, nu, b0};
    for (auto& cp : critical_points(m))
      if (cp.sigma == sigma && cp.saddle) return cp.energy;
    throw structure_error("connection curve: saddle family missing inside the bracket");
  };
  auto gap = [&](double delta) {
    return saddle_energy(delta, +1) - saddle_energy(delta, -1);
  };
  // stay clear of the endpoints: there a saddle-center pair merges (or a
  // family disappears) and the energies are not defined
  double margin = 1e-4 * (hi - lo);
  double a = lo + margin, b = hi - margin;
  double fa = gap(a), fb = gap(b);
  if (fa * fb > 0)
    throw structure_error("connection curve: energy gap does not change sign");
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (a + b);
    double fm = gap(mid);
    if (fa * fm <= 0) {
      b = mid;
      fb = fm;
    } else {
      a = mid;
      fa = fm;
    }
    if (b - a < 1e-15 * std::max(std::abs(a), std::abs(b))) break;
  }
  return 0.5 * (a + b);
}

RescaleScheme rescale_scheme_from_name(const std::string& s) {
  if (s == "pendulum") return RescaleScheme::Pendulum;
  if (s == "boundary") return RescaleScheme::BoundaryLayer;
  if (s == "n6") return RescaleScheme::N6;
  if (s == "n5-outer") return RescaleScheme::N5Outer;
  if (s == "n5-cubic") return RescaleScheme::N5Cubic;
  throw parse_error("unknown rescale scheme '" + s + "'");
}

Rescaled rescale(const Model& m, RescaleScheme scheme) {
  validate_model(m);
  Rescaled r;
  r.scheme = scheme;
  r.n = m.n;
  r.b0 = m.b0;
  int n = m.n;
  switch (scheme) {
    case RescaleScheme::Pendulum: {
      if (n < 7) throw structure_error("pendulum rescaling applies to n >= 7");
      double disc = m.nu * m.nu - 3 * m.delta;
      if (disc <= 0)
        throw structure_error("pendulum rescaling: nu^2 - 3 delta must be positive");
      double eps = (std::sqrt(disc) - m.nu) / 3.0;
      double mu = m.nu + 3 * eps;
      if (!(eps > 0 && eps < mu))
        throw structure_error("pendulum rescaling needs 0 < eps < mu");
      r.eps = eps;
      r.mu = mu;
      double beta = std::pow(eps, n / 4.0) / std::sqrt(mu);
      r.limit = [n](double J, double phi) { return J * J + std::cos(n * phi); };
      r.full = [m, eps, mu, beta, n](double J, double phi) {
        double I = eps + beta * J;
        return (model_h(m, I, phi) - (m.delta * eps + m.nu * eps * eps + eps * eps * eps)) /
               std::pow(eps, n / 2.0);
      };
      return r;
    }
    case RescaleScheme::BoundaryLayer: {
      if (n < 7) throw structure_error("boundary-layer rescaling applies to n >= 7");
      if (m.nu >= 0) throw structure_error("boundary-layer rescaling needs nu < 0");
      double eps = -m.nu / 3.0;
      r.eps = eps;
      r.eps1 = (n / 2.0) * std::pow(eps, n / 6.0 - 1.0);
      r.a = (m.delta - 3 * eps * eps) / std::pow(eps, n / 3.0);
      double a = r.a, eps1 = r.eps1;
      r.limit = [a, eps1](double J, double psi) {
        return a * J + J * J * J + std::cos(psi) + eps1 * J * std::cos(psi);
      };
      r.full = r.limit;
      return r;
    }
    case RescaleScheme::N6: {
      if (n != 6) throw structure_error("this rescaling applies to n = 6");
      if (m.nu == 0) throw structure_error("n = 6 rescaling needs nu != 0");
      r.eps = m.nu;
      r.a = m.delta / (m.nu * m.nu);
      double a = r.a, b0 = m.b0, sgn = m.nu > 0 ? 1.0 : -1.0;
      // exact: h(|eps| J, phi) = |eps|^3 hbar(J, phi)
      r.limit = [a, b0, sgn](double J, double phi) {
        return a * J + sgn * J * J + J * J * J * (1 + b0 * std::cos(6 * phi));
      };
      Model mm = m;
      double aeps = std::abs(m.nu);
      r.full = [mm, aeps](double J, double phi) {
        return model_h(mm, aeps * J, phi) / (aeps * aeps * aeps);
      };
      return r;
    }
    case RescaleScheme::N5Outer: {
      if (n != 5) throw structure_error("this rescaling applies to n = 5");
      if (m.delta <= 0) throw structure_error("outer rescaling needs delta > 0");
      r.eps = m.nu * std::pow(m.delta, -1.0 / 3.0);  // twist is a correction when small
      r.limit = [](double J, double phi) {
        return J + std::pow(std::max(J, 0.0), 2.5) * std::cos(5 * phi);
      };
      Model mm = m;
      double d = m.delta;
      r.full = [mm, d](double J, double phi) {
        return model_h(mm, std::pow(d, 2.0 / 3.0) * J, phi) / std::pow(d, 5.0 / 3.0);
      };
      return r;
    }
    case RescaleScheme::N5Cubic: {
      if (n != 5) throw structure_error("this rescaling applies to n = 5");
      if (m.nu == 0) throw structure_error("cubic rescaling needs nu != 0");
      r.eps = m.nu;
      r.a = m.delta / (m.nu * m.nu * m.nu);
      double a = r.a, sgn = m.nu > 0 ? 1.0 : -1.0;
      r.limit = [a, sgn](double J, double phi) {
        return a * J + J * J + sgn * std::pow(std::max(J, 0.0), 2.5) * std::cos(5 * phi);
      };
      Model mm = m;
      double nu = m.nu;
      r.full = [mm, nu](double J, double phi) {
        return model_h(mm, nu * nu * J, phi) / std::pow(std::abs(nu), 5.0) /
               (nu > 0 ? 1.0 : -1.0);
      };
      return r;
    }
  }
  throw structure_error("bad rescale scheme");
}

std::vector<double> boundary_layer_saddles(double a, double eps1) {
  // d/dJ at cos psi = sigma: a + 3 J^2 + eps1 sigma = 0; saddles are the
  // classes where the angular second derivative opposes the radial one
  std::vector<double> out;
  for (int sigma : {+1, -1}) {
    double s = -(a + eps1 * sigma) / 3.0;
    if (s <= 0) continue;
    for (double J : {std::sqrt(s), -std::sqrt(s)}) {
      double h_JJ = 6 * J;
      double h_pp = -(1 + eps1 * J) * sigma;  // second angle derivative / 1
      if (h_JJ * h_pp < 0) out.push_back(J);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---- CSV products ----

static std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string critical_points_csv(const Model& m) {
  std::ostringstream os;
  os << "n,delta,nu,b0,I,phi,sigma,kind,energy\n";
  for (auto& cp : critical_points(m))
    os << m.n << "," << fmt(m.delta) << "," << fmt(m.nu) << "," << fmt(m.b0) << ","
       << fmt(cp.I) << "," << fmt(cp.phi) << "," << cp.sigma << ","
       << (cp.saddle ? "saddle" : "center") << "," << fmt(cp.energy) << "\n";
  return os.str();
}

std::string boundary_curves_csv(int n, double nu_lo, double nu_hi, int steps, double b0) {
  std::ostringstream os;
  os << "nu,sigma,delta,delta_asymptote\n";
  for (int sigma : {+1, -1})
    for (int k = 0; k <= steps; ++k) {
      double nu = nu_lo + (nu_hi - nu_lo) * k / steps;
      double d, da = 0;
      try {
        d = double_point_curve(n, nu, sigma, b0);
      } catch (const std::exception&) {
        continue;
      }
      if (n >= 7) da = double_point_asymptote(n, nu, sigma);
      os << fmt(nu) << "," << sigma << "," << fmt(d) << "," << fmt(da) << "\n";
    }
  return os.str();
}

std::string domain_grid_csv(const Model& proto, double delta_lo, double delta_hi,
                            double nu_lo, double nu_hi, int steps, int jobs) {
  int total = (steps + 1) * (steps + 1);
  std::vector<std::string> labels(total);
  jobs = std::max(1, jobs);
  auto work = [&](int tid) {
    for (int idx = tid; idx < total; idx += jobs) {
      int i = idx / (steps + 1), k = idx % (steps + 1);
      Model m = proto;
      m.delta = delta_lo + (delta_hi - delta_lo) * i / steps;
      m.nu = nu_lo + (nu_hi - nu_lo) * k / steps;
      try {
        labels[idx] = domain_name(classify_domain(m));
      } catch (const std::exception&) {
        labels[idx] = "boundary";
      }
    }
  };
  if (jobs == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(work, t);
    for (auto& t : pool) t.join();
  }
  std::ostringstream os;
  os << "delta,nu,domain\n";
  for (int idx = 0; idx < total; ++idx) {
    int i = idx / (steps + 1), k = idx % (steps + 1);
    os << fmt(delta_lo + (delta_hi - delta_lo) * i / steps) << ","
       << fmt(nu_lo + (nu_hi - nu_lo) * k / steps) << "," << labels[idx] << "\n";
  }
  return os.str();
}

}  // namespace resonorm
