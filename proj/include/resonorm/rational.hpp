#pragma once
#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <stdexcept>
#include <string>

namespace resonorm {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

struct parse_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct structure_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
// a hypothesis of the normalization (or a model precondition) fails;
// the message names the regime that applies instead
struct degeneracy_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline std::string rat_to_string(const Rat& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

inline Rat rat_from_string(const std::string& s) {
  try {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rat(Int(s));
    Int num(s.substr(0, slash)), den(s.substr(slash + 1));
    if (den == 0) throw parse_error("rational with zero denominator: " + s);
    return Rat(num, den);
  } catch (const std::exception& e) {
    throw parse_error("bad rational '" + s + "': " + e.what());
  }
}

// exact square root of a non-negative rational, if it is a perfect square
inline std::optional<Rat> rat_sqrt(const Rat& r) {
  if (r < 0) return std::nullopt;
  Int n = numerator(r), d = denominator(r);
  Int sn = sqrt(n), sd = sqrt(d);
  if (sn * sn != n || sd * sd != d) return std::nullopt;
  return Rat(sn, sd);
}

// complex number with exact rational real/imaginary parts
struct CRat {
  Rat re, im;
  CRat() = default;
  CRat(Rat r) : re(std::move(r)) {}
  CRat(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}
  CRat(int r) : re(r) {}
  bool is_zero() const { return re == 0 && im == 0; }
  bool is_real() const { return im == 0; }
  CRat conj() const { return {re, -im}; }
  Rat norm2() const { return re * re + im * im; }
  friend CRat operator+(const CRat& a, const CRat& b) { return {a.re + b.re, a.im + b.im}; }
  friend CRat operator-(const CRat& a, const CRat& b) { return {a.re - b.re, a.im - b.im}; }
  friend CRat operator-(const CRat& a) { return {-a.re, -a.im}; }
  friend CRat operator*(const CRat& a, const CRat& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend CRat operator/(const CRat& a, const CRat& b) {
    Rat n2 = b.norm2();
    if (n2 == 0) throw structure_error("complex division by zero");
    CRat p = a * b.conj();
    return {p.re / n2, p.im / n2};
  }
  CRat& operator+=(const CRat& o) { re += o.re; im += o.im; return *this; }
  CRat& operator-=(const CRat& o) { re -= o.re; im -= o.im; return *this; }
  friend bool operator==(const CRat& a, const CRat& b) { return a.re == b.re && a.im == b.im; }
  friend bool operator!=(const CRat& a, const CRat& b) { return !(a == b); }
};

inline CRat crat_i() { return {Rat(0), Rat(1)}; }

inline CRat pow(const CRat& base, long e) {
  if (e < 0) return CRat(1) / pow(base, -e);
  CRat acc(1), b = base;
  while (e) {
    if (e & 1) acc = acc * b;
    b = b * b;
    e >>= 1;
  }
  return acc;
}

inline double to_double(const Rat& r) {
  return r.convert_to<double>();
}

}  // namespace resonorm
