#pragma once
#include <complex>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "resonorm/rational.hpp"

namespace resonorm {

// monomial z^k zbar^l delta^m nu^j
struct Mono {
  int k = 0, l = 0, m = 0, j = 0;
  friend auto operator<=>(const Mono&, const Mono&) = default;
  Mono bar() const { return {l, k, m, j}; }
};

enum class Grading {
  Poly,        // k + l                       (n = 3, 5 autonomous)
  Half,        // (k + l)/2                   (n = 4, 6 autonomous)
  Delta,       // 3|k-l|/n + min(k,l)         (n >= 7 autonomous)
  FamilyDelta, // Delta + 3m + 2j             (n >= 6 family)
  FamilyPoly,  // k + l + 4m + 2j             (n <= 5 family)
};

std::string grading_name(Grading g);
Grading grading_from_name(const std::string& s);

// grade scaled by 2n so every scheme is integral on every monomial
long grade_x2n(Grading g, int n, const Mono& mo);

inline bool mono_resonant(int n, const Mono& mo) { return (mo.k - mo.l) % n == 0; }

// truncated power series in z, zbar (and optionally delta, nu) with exact
// complex-rational coefficients, resonant support, carried to a fixed grade.
// `res` is the resonance class: every term must satisfy k - l = res (mod n).
// Hamiltonians live in class 0, map z-components in class 1.
struct Series {
  int n = 0;
  Grading scheme = Grading::Poly;
  int truncation = 0;  // integer grade; terms above are unknown and dropped
  int res = 0;
  std::map<Mono, CRat> terms;

  Series() = default;
  Series(int n_, Grading g, int trunc, int res_ = 0)
      : n(n_), scheme(g), truncation(trunc), res(res_) {}

  bool in_range(const Mono& mo) const {
    return grade_x2n(scheme, n, mo) <= 2L * n * truncation;
  }
  void set(const Mono& mo, CRat c);
  CRat coeff(const Mono& mo) const {
    auto it = terms.find(mo);
    return it == terms.end() ? CRat(0) : it->second;
  }
  bool empty() const { return terms.empty(); }
};

// sentinel for exactly-known polynomials (generators, basis elements)
inline constexpr int kExactTruncation = 1 << 20;

Series s_add(const Series& a, const Series& b);
Series s_sub(const Series& a, const Series& b);
Series s_scale(const Series& a, const CRat& c);
Series s_mul(const Series& a, const Series& b);
Series s_monomial(int n, Grading g, int trunc, const Mono& mo, const CRat& c);

// L_chi h = -2i (dh/dz dchi/dzbar - dh/dzbar dchi/dz)
Series lie_derivative(const Series& h, const Series& chi);

// sum_k t^k/k! L_chi^k h, t a monomial coefficient-1 weight (default 1).
// Terminates when each application raises the grade; guarded by max-iter.
Series lie_transform(const Series& h, const Series& chi, const Mono& t = Mono{});

Series project_grade(const Series& h, int p);  // exact-grade slice
Series truncate_to(const Series& h, int trunc);
Series convert_scheme(const Series& h, Grading g, int trunc);

// largest native-scheme grade to which a series truncated at `h.truncation`
// in its own scheme determines the converted series exactly
int exact_grade_after_conversion(const Series& h, Grading g);

bool is_resonant(const Series& h);
bool is_real_valued(const Series& h);  // h(k,l,m,j) == conj(h(l,k,m,j))
bool is_homogeneous(const Series& h, int* grade_out = nullptr);
int min_poly_order(const Series& h);  // min k+l over support, -1 if empty

// multiply coefficient of z^k zbar^l by w^((k-l)/n); |w| must be 1 exactly
Series rotate_by_root(const Series& h, const CRat& w);

std::complex<double> evaluate_polar(const Series& h, double I, double phi,
                                    double delta = 0, double nu = 0);

std::string series_to_json(const Series& h);
Series series_from_json(const std::string& text);

}  // namespace resonorm
