#include "resonorm/series.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "json.hpp"

namespace resonorm {

std::string grading_name(Grading g) {
  switch (g) {
    case Grading::Poly: return "poly";
    case Grading::Half: return "half";
    case Grading::Delta: return "delta";
    case Grading::FamilyDelta: return "family-delta";
    case Grading::FamilyPoly: return "family-poly";
  }
  throw structure_error("bad grading enum");
}

Grading grading_from_name(const std::string& s) {
  if (s == "poly") return Grading::Poly;
  if (s == "half") return Grading::Half;
  if (s == "delta") return Grading::Delta;
  if (s == "family-delta") return Grading::FamilyDelta;
  if (s == "family-poly") return Grading::FamilyPoly;
  throw parse_error("unknown grading scheme '" + s + "'");
}

long grade_x2n(Grading g, int n, const Mono& mo) {
  long k = mo.k, l = mo.l, m = mo.m, j = mo.j;
  switch (g) {
    case Grading::Poly: return 2L * n * (k + l);
    case Grading::Half: return n * (k + l);
    case Grading::Delta:
      return 2L * 3 * std::abs(k - l) + 2L * n * std::min(k, l);
    case Grading::FamilyDelta:
      return 2L * 3 * std::abs(k - l) + 2L * n * (std::min(k, l) + 3 * m + 2 * j);
    case Grading::FamilyPoly: return 2L * n * (k + l + 4 * m + 2 * j);
  }
  throw structure_error("bad grading enum");
}

static int norm_res(int n, int r) {
  r %= n;
  return r < 0 ? r + n : r;
}

void Series::set(const Mono& mo, CRat c) {
  if (mo.k < 0 || mo.l < 0 || mo.m < 0 || mo.j < 0)
    throw structure_error("negative monomial exponent");
  if (norm_res(n, mo.k - mo.l - res) != 0)
    throw structure_error("non-resonant monomial z^" + std::to_string(mo.k) +
                          " zbar^" + std::to_string(mo.l) + " for n=" + std::to_string(n));
  if (!in_range(mo)) return;  // beyond carried grade: unknown, drop
  if (c.is_zero())
    terms.erase(mo);
  else
    terms[mo] = std::move(c);
}

static void check_compat(const Series& a, const Series& b, const char* op) {
  if (a.n != b.n || a.scheme != b.scheme)
    throw structure_error(std::string(op) + ": operands differ in n or grading scheme");
}

Series s_add(const Series& a, const Series& b) {
  check_compat(a, b, "add");
  if (a.res != b.res)
    throw structure_error("add: operands live in different resonance classes");
  Series r(a.n, a.scheme, std::min(a.truncation, b.truncation), a.res);
  for (auto& [mo, c] : a.terms) r.set(mo, c);
  for (auto& [mo, c] : b.terms) r.set(mo, r.coeff(mo) + c);
  return r;
}

Series s_sub(const Series& a, const Series& b) { return s_add(a, s_scale(b, CRat(-1))); }

Series s_scale(const Series& a, const CRat& c) {
  Series r(a.n, a.scheme, a.truncation, a.res);
  if (c.is_zero()) return r;
  for (auto& [mo, v] : a.terms) r.terms[mo] = v * c;
  return r;
}

Series s_mul(const Series& a, const Series& b) {
  check_compat(a, b, "mul");
  // grades are (super)additive in every scheme, so truncating the product at
  // min(T_a, T_b) keeps exactly the grades both factors determine
  Series r(a.n, a.scheme, std::min(a.truncation, b.truncation),
           norm_res(a.n, a.res + b.res));
  for (auto& [ma, ca] : a.terms)
    for (auto& [mb, cb] : b.terms) {
      Mono mo{ma.k + mb.k, ma.l + mb.l, ma.m + mb.m, ma.j + mb.j};
      if (!r.in_range(mo)) continue;
      auto it = r.terms.find(mo);
      if (it == r.terms.end())
        r.terms[mo] = ca * cb;
      else
        it->second += ca * cb;
    }
  std::erase_if(r.terms, [](auto& kv) { return kv.second.is_zero(); });
  return r;
}

Series s_monomial(int n, Grading g, int trunc, const Mono& mo, const CRat& c) {
  Series r(n, g, trunc, norm_res(n, mo.k - mo.l));
  r.set(mo, c);
  return r;
}

// partial derivative; which = 0 -> d/dz, 1 -> d/dzbar.  Support leaves the
// resonant lattice, so terms are kept raw (internal use only).
static std::map<Mono, CRat> derive(const Series& h, int which) {
  std::map<Mono, CRat> out;
  for (auto& [mo, c] : h.terms) {
    int e = which == 0 ? mo.k : mo.l;
    if (e == 0) continue;
    Mono d = mo;
    (which == 0 ? d.k : d.l) -= 1;
    out[d] = c * CRat(e);
  }
  return out;
}

Series lie_derivative(const Series& h, const Series& chi) {
  check_compat(h, chi, "lie_derivative");
  auto hz = derive(h, 0), hzb = derive(h, 1);
  auto cz = derive(chi, 0), czb = derive(chi, 1);
  Series r(h.n, h.scheme, std::min(h.truncation, chi.truncation),
           norm_res(h.n, h.res + chi.res));
  CRat m2i{Rat(0), Rat(-2)};  // -2i
  auto accum = [&](const std::map<Mono, CRat>& a, const std::map<Mono, CRat>& b,
                   const CRat& sign) {
    for (auto& [ma, ca] : a)
      for (auto& [mb, cb] : b) {
        Mono mo{ma.k + mb.k, ma.l + mb.l, ma.m + mb.m, ma.j + mb.j};
        if (!r.in_range(mo)) continue;
        auto it = r.terms.find(mo);
        CRat v = m2i * sign * ca * cb;
        if (it == r.terms.end())
          r.terms[mo] = v;
        else
          it->second += v;
      }
  };
  accum(hz, czb, CRat(1));
  accum(hzb, cz, CRat(-1));
  std::erase_if(r.terms, [](auto& kv) { return kv.second.is_zero(); });
  return r;
}

Series lie_transform(const Series& h, const Series& chi, const Mono& t) {
  check_compat(h, chi, "lie_transform");
  if (chi.res != 0)
    throw structure_error("lie_transform: generator must be in resonance class 0");
  bool weighted = t.m + t.j > 0;
  if (!weighted && min_poly_order(chi) >= 0 && min_poly_order(chi) < 3)
    throw structure_error(
        "lie_transform: generator of polynomial order < 3 without a parameter "
        "weight does not terminate");
  Series acc = truncate_to(h, std::min(h.truncation, chi.truncation));
  Series term = acc;
  Series tw = s_monomial(h.n, h.scheme, kExactTruncation, t, CRat(1));
  long guard = 4L * h.n * (h.truncation + 4) + 64;
  for (long k = 1;; ++k) {
    if (k > guard)
      throw structure_error("lie_transform: series failed to terminate (grade not increasing)");
    term = lie_derivative(term, chi);
    if (t.k || t.l || t.m || t.j) term = s_mul(term, tw);
    term = s_scale(term, CRat(Rat(1, k)));
    if (term.empty()) break;
    acc = s_add(acc, term);
  }
  return acc;
}

Series project_grade(const Series& h, int p) {
  Series r(h.n, h.scheme, h.truncation, h.res);
  for (auto& [mo, c] : h.terms)
    if (grade_x2n(h.scheme, h.n, mo) == 2L * h.n * p) r.terms[mo] = c;
  return r;
}

Series truncate_to(const Series& h, int trunc) {
  Series r(h.n, h.scheme, trunc, h.res);
  for (auto& [mo, c] : h.terms)
    if (r.in_range(mo)) r.terms[mo] = c;
  return r;
}

Series convert_scheme(const Series& h, Grading g, int trunc) {
  Series r(h.n, g, trunc, h.res);
  for (auto& [mo, c] : h.terms)
    if (r.in_range(mo)) r.terms[mo] = c;
  return r;
}

int exact_grade_after_conversion(const Series& h, Grading g) {
  // smallest new-scheme grade reachable by a resonant monomial lying beyond
  // the old truncation, minus one.  Scan a window of old grades above T.
  if (h.truncation >= kExactTruncation) return kExactTruncation;
  long best_x2n = -1;
  long oldT = h.truncation;
  int n = h.n;
  auto consider = [&](const Mono& mo) {
    if (grade_x2n(h.scheme, n, mo) <= 2L * n * oldT) return;
    long gx = grade_x2n(g, n, mo);
    if (best_x2n < 0 || gx < best_x2n) best_x2n = gx;
  };
  int K = static_cast<int>(2 * oldT + 2 * n + 8);
  for (int k = 0; k <= K; ++k)
    for (int l = k % n; l <= K; l += n) {
      if (k + l > K) break;
      consider(Mono{k, l, 0, 0});
      consider(Mono{k, l, 1, 0});
      consider(Mono{k, l, 0, 1});
    }
  if (best_x2n < 0) return kExactTruncation;
  // exact up to (but not including) grade best/2n
  long q = best_x2n / (2L * n);
  return static_cast<int>(best_x2n % (2L * n) == 0 ? q - 1 : q);
}

bool is_resonant(const Series& h) {
  for (auto& [mo, c] : h.terms)
    if (!mono_resonant(h.n, mo)) return false;
  return true;
}

bool is_real_valued(const Series& h) {
  for (auto& [mo, c] : h.terms)
    if (h.coeff(mo.bar()) != c.conj()) return false;
  return true;
}

bool is_homogeneous(const Series& h, int* grade_out) {
  long g = -1;
  for (auto& [mo, c] : h.terms) {
    long gx = grade_x2n(h.scheme, h.n, mo);
    if (g < 0) g = gx;
    else if (g != gx) return false;
  }
  if (g >= 0 && g % (2L * h.n) != 0) return false;  // fractional grade
  if (grade_out) *grade_out = g < 0 ? -1 : static_cast<int>(g / (2L * h.n));
  return true;
}

int min_poly_order(const Series& h) {
  int best = -1;
  for (auto& [mo, c] : h.terms) {
    int o = mo.k + mo.l;
    if (best < 0 || o < best) best = o;
  }
  return best;
}

Series rotate_by_root(const Series& h, const CRat& w) {
  if (w.norm2() != Rat(1)) throw structure_error("rotate_by_root: |w| != 1");
  if (h.res != 0)
    throw structure_error("rotate_by_root: series must be in resonance class 0");
  Series r(h.n, h.scheme, h.truncation);
  for (auto& [mo, c] : h.terms) {
    int s = (mo.k - mo.l) / h.n;
    r.terms[mo] = c * pow(w, s);
  }
  return r;
}

std::complex<double> evaluate_polar(const Series& h, double I, double phi,
                                    double delta, double nu) {
  std::complex<double> z = std::sqrt(std::max(2.0 * I, 0.0)) *
                           std::complex<double>(std::cos(phi), std::sin(phi));
  std::complex<double> zb = std::conj(z);
  std::complex<double> acc = 0;
  for (auto& [mo, c] : h.terms) {
    std::complex<double> cv(to_double(c.re), to_double(c.im));
    acc += cv * std::pow(z, mo.k) * std::pow(zb, mo.l) *
           std::pow(delta, mo.m) * std::pow(nu, mo.j);
  }
  return acc;
}

std::string series_to_json(const Series& h) {
  nlohmann::ordered_json out;
  out["n"] = h.n;
  out["scheme"] = grading_name(h.scheme);
  out["truncation"] = h.truncation;
  if (h.res != 0) out["res"] = h.res;
  auto& arr = out["terms"] = nlohmann::ordered_json::array();
  for (auto& [mo, c] : h.terms) {
    nlohmann::ordered_json t;
    t["k"] = mo.k;
    t["l"] = mo.l;
    t["m"] = mo.m;
    t["j"] = mo.j;
    t["re"] = rat_to_string(c.re);
    t["im"] = rat_to_string(c.im);
    arr.push_back(std::move(t));
  }
  return out.dump(2);
}

Series series_from_json(const std::string& text) {
  nlohmann::json in;
  try {
    in = nlohmann::json::parse(text);
  } catch (const std::exception& e) {
    throw parse_error(std::string("series json: ") + e.what());
  }
  if (!in.contains("n") || !in.contains("scheme") || !in.contains("truncation") ||
      !in.contains("terms"))
    throw parse_error("series json: need fields n, scheme, truncation, terms");
  Series h(in["n"].get<int>(), grading_from_name(in["scheme"].get<std::string>()),
           in["truncation"].get<int>(), in.value("res", 0));
  if (h.n < 3) throw parse_error("series json: n must be >= 3");
  for (auto& t : in["terms"]) {
    Mono mo{t["k"].get<int>(), t["l"].get<int>(), t.value("m", 0), t.value("j", 0)};
    CRat c{rat_from_string(t.value("re", std::string("0"))),
           rat_from_string(t.value("im", std::string("0")))};
    if (norm_res(h.n, mo.k - mo.l - h.res) != 0)
      throw parse_error("series json: non-resonant term k=" + std::to_string(mo.k) +
                        " l=" + std::to_string(mo.l));
    if (!h.in_range(mo))
      throw parse_error("series json: term beyond declared truncation");
    h.set(mo, h.coeff(mo) + c);
  }
  return h;
}

}  // namespace resonorm
