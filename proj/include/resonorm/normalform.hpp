#pragma once
#include <complex>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "resonorm/homology.hpp"
#include "resonorm/series.hpp"

namespace resonorm {

// simplified normal form: real Hamiltonian
//   (z zbar)^P * sum a_{kmj} (z zbar)^k d^m v^j
//   + (z^n + zbar^n) * sum b_{kmj} (z zbar)^k d^m v^j
// with P = 4 for n = 4 and P = 3 otherwise; family kind carries the fixed
// prefix d z zbar + v (z zbar)^2.  For n = 4 the invariant (z zbar)^2
// coefficient is stored in the a-table at k = -2.
struct NormalForm {
  int n = 0;
  bool family = false;
  NfVariant variant = NfVariant::Standard;
  double gauge = 0.0;  // rotation angle applied to the input, mod 2*pi/n
  int truncation = 0;  // native grade carried
  std::map<std::tuple<int, int, int>, Rat> a, b;  // (k, m, j) -> value

  Rat a_at(int k, int m = 0, int j = 0) const;
  Rat b_at(int k, int m = 0, int j = 0) const;
  int prefix_power() const { return n == 4 ? 4 : 3; }
};

struct ShapeReport {
  bool ok = true;
  std::vector<std::string> violations;
};
ShapeReport validate_shape(const NormalForm& nf);

// admissible (z zbar)-index sets of the shape
bool a_index_ok(int n, NfVariant v, bool family, int k);
bool b_index_ok(int n, NfVariant v, int k);

struct SimplifyResult {
  NormalForm nf;
  Series series;  // the transformed Hamiltonian, in the native scheme
};

// reduce a real-valued resonant Hamiltonian (fixed parameter values) to the
// simplified normal form, inductively over the native grading; truncation is
// the native grade carried through
SimplifyResult simplify_autonomous(const Series& input, int truncation,
                                   NfVariant variant = NfVariant::Standard);

// two-parameter version: input in the family grading with unit d z zbar and
// v (z zbar)^2 terms; truncation counts the family grade
SimplifyResult simplify_family(const Series& input, int truncation,
                               NfVariant variant = NfVariant::Standard);

Series normal_form_series(const NormalForm& nf);

std::string normal_form_to_json(const NormalForm& nf);
NormalForm normal_form_from_json(const std::string& text);
std::string normal_form_table(const NormalForm& nf);  // human-readable listing

// map whose z-component is e^{2 pi i rot/n} * mz(z, zbar), mz resonant
// (k - l = 1 mod n) and tangent to identity
struct RotationMap {
  int n = 0;
  int rot = 1;  // numerator of the rotation number rot/n
  Series mz;
};

// z-component of the time-1 flow of H, composed with the rotation
RotationMap map_from_hamiltonian(const Series& h, int rot);

// Takens interpolation: recover the real-valued interpolating Hamiltonian,
// order by order, exactly; throws if the map is not canonical/resonant
Series interpolate(const RotationMap& map, int truncation);

std::string rotation_map_to_json(const RotationMap& m);
RotationMap rotation_map_from_json(const std::string& text);

// detuning parameters from the multiplier and twist of a prenormalized
// family: d = -arg(lambda_p / lambda_0), v = Re(i a'(0) / lambda_p);
// imaginary parts beyond tol are rejected
std::pair<double, double> extract_params(std::complex<double> lambda0,
                                         std::complex<double> lambda_p,
                                         std::complex<double> a_prime0,
                                         double tol = 1e-12);

}  // namespace resonorm
