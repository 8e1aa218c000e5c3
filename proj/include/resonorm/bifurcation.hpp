#pragma once
#include <functional>
#include <string>
#include <vector>

#include "resonorm/rational.hpp"

namespace resonorm {

// truncated model Hamiltonian in action-angle form,
//  n >= 7 : d I + v I^2 + I^3 + I^(n/2) cos(n phi)
//  n = 6  : d I + v I^2 + I^3 (1 + b0 cos(6 phi)),  b0 not in {-1, 0, 1}
//  n = 5  : d I + v I^2 + I^(5/2) cos(5 phi)
struct Model {
  int n = 7;
  double delta = 0, nu = 0, b0 = 1.0;
};

void validate_model(const Model& m);  // throws degeneracy_error on bad b0 / n < 5

double model_h(const Model& m, double I, double phi);
double model_dh_dI(const Model& m, double I, double phi);
double model_d2h_dI2(const Model& m, double I, double phi);
// coefficient of cos(n phi):  I^(n/2), b0 I^3, or I^(5/2)
double model_g(const Model& m, double I);

// radial balance on the symmetry line cos(n phi) = sigma:
// critical actions solve delta = f_sigma(I)
double f_sigma(const Model& m, double I, int sigma);
double f_sigma_prime(const Model& m, double I, int sigma);

struct CriticalPoint {
  double I = 0;
  double phi = 0;      // representative angle of the orbit class
  int sigma = 0;       // cos(n phi) on the class
  bool saddle = false; // else center
  double energy = 0;
  bool near_degenerate = false;  // |f_sigma'| below classification tolerance
};

// all critical orbit classes with I > 0, both sigma families
std::vector<CriticalPoint> critical_points(const Model& m, double imax = 2.0);

// delta at which the two roots of delta = f_sigma(I) collide (saddle-center
// line); closed form for n = 5, 6, consecutive approximations for n >= 7
double double_point_curve(int n, double nu, int sigma, double b0 = 1.0);
// two-term asymptotics nu^2/3 - sigma (n/2) (-nu/3)^(n/2-1), n >= 7
double double_point_asymptote(int n, double nu, int sigma);

// parameter-plane domains; primes mark the variants with sigma = -1 saddles
enum class Domain { D0, D1, D1p, D2, D2p };
std::string domain_name(Domain d);
Domain classify_domain(const Model& m);

// delta on which the energies of the two saddle families coincide
double connection_curve(int n, double nu, double b0 = 1.0);

// rescaled limit models
enum class RescaleScheme { Pendulum, BoundaryLayer, N6, N5Outer, N5Cubic };
RescaleScheme rescale_scheme_from_name(const std::string& s);

struct Rescaled {
  RescaleScheme scheme;
  int n = 0;
  double eps = 0;   // small parameter
  double eps1 = 0;  // secondary parameter (boundary layer)
  double a = 0;     // rescaled detuning, when applicable
  double mu = 0;    // pendulum twist
  double b0 = 0;
  // limit Hamiltonian in the rescaled variables (J, angle)
  std::function<double(double, double)> limit;
  // full rescaled Hamiltonian including the correction terms
  std::function<double(double, double)> full;
};

Rescaled rescale(const Model& m, RescaleScheme scheme);

// saddle actions of the boundary-layer limit a J + J^3 + cos psi + eps1 J cos psi
std::vector<double> boundary_layer_saddles(double a, double eps1);

std::string critical_points_csv(const Model& m);
std::string boundary_curves_csv(int n, double nu_lo, double nu_hi, int steps, double b0);
std::string domain_grid_csv(const Model& proto, double delta_lo, double delta_hi,
                            double nu_lo, double nu_hi, int steps, int jobs = 1);

}  // namespace resonorm
