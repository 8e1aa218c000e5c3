#include "resonorm/normalform.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "json.hpp"

namespace resonorm {

Rat NormalForm::a_at(int k, int m, int j) const {
  auto it = a.find({k, m, j});
  return it == a.end() ? Rat(0) : it->second;
}
Rat NormalForm::b_at(int k, int m, int j) const {
  auto it = b.find({k, m, j});
  return it == b.end() ? Rat(0) : it->second;
}

bool a_index_ok(int n, NfVariant v, bool family, int k) {
  if (n == 3) return k >= 0 && k % 3 != 2;
  if (n == 4) return (!family && k == -2) || (k >= 0 && k % 4 != 3);
  if (n == 5) return k >= 0 && k % 5 != 1;
  if (n == 6 && v == NfVariant::AltN6) return k >= 0 && k % 6 != 2;
  return k >= 0;
}

bool b_index_ok(int n, NfVariant v, int k) {
  if (k < 0) return false;
  if (n == 3) return k % 3 != 2;
  if (n == 4) return k % 4 != 3;
  if (n == 5) return k % 5 != 4;
  if (n == 6 && v == NfVariant::AltN6) return k % 6 != 5;
  return k % 3 != 2;
}

ShapeReport validate_shape(const NormalForm& nf) {
  ShapeReport rep;
  auto bad = [&](std::string s) {
    rep.ok = false;
    rep.violations.push_back(std::move(s));
  };
  if (nf.n < 3) bad("n must be >= 3");
  for (auto& [key, val] : nf.a) {
    auto [k, m, j] = key;
    if (!nf.family && (m || j)) bad("autonomous form carries parameter powers");
    if (!a_index_ok(nf.n, nf.variant, nf.family, k))
      bad("a index k=" + std::to_string(k) + " excluded by the shape");
  }
  for (auto& [key, val] : nf.b) {
    auto [k, m, j] = key;
    if (!nf.family && (m || j)) bad("autonomous form carries parameter powers");
    if (!b_index_ok(nf.n, nf.variant, k))
      bad("b index k=" + std::to_string(k) + " excluded by the shape");
  }
  if (nf.b_at(0) <= 0) bad("leading coefficient b0 must be positive");
  return rep;
}

// ---- series <-> normal form ----

Series normal_form_series(const NormalForm& nf) {
  int n = nf.n;
  Grading g = nf.family ? (n >= 6 ? Grading::FamilyDelta : Grading::FamilyPoly)
                        : native_grading(n);
  Series h(n, g, nf.truncation);
  if (nf.family) {
    h.set(Mono{1, 1, 1, 0}, CRat(1));
    h.set(Mono{2, 2, 0, 1}, CRat(1));
  }
  int P = nf.prefix_power();
  for (auto& [key, val] : nf.a) {
    auto [k, m, j] = key;
    Mono mo{P + k, P + k, m, j};
    h.set(mo, h.coeff(mo) + CRat(val));
  }
  for (auto& [key, val] : nf.b) {
    auto [k, m, j] = key;
    Mono mo{n + k, k, m, j};
    h.set(mo, h.coeff(mo) + CRat(val));
    Mono mb{k, n + k, m, j};
    h.set(mb, h.coeff(mb) + CRat(val));
  }
  return h;
}

// classify every surviving term into a shape slot; throws on leftovers
static void extract_tables(const Series& h, NormalForm& nf) {
  int n = nf.n, P = nf.prefix_power();
  for (auto& [mo, c] : h.terms) {
    if (mo.k < mo.l) continue;  // mirror of a classified term; realness checked
    auto fail = [&](const std::string& why) {
      throw structure_error("normalization left a term outside the shape: z^" +
                            std::to_string(mo.k) + " zbar^" + std::to_string(mo.l) +
                            " d^" + std::to_string(mo.m) + " v^" + std::to_string(mo.j) +
                            " (" + why + ")");
    };
    if (mo.k == mo.l) {
      if (nf.family && mo.k == 1 && mo.m == 1 && mo.j == 0) {
        if (c != CRat(1)) fail("the d z zbar coefficient must stay 1");
        continue;
      }
      if (nf.family && mo.k == 2 && mo.m == 0 && mo.j == 1) {
        if (c != CRat(1)) fail("the v (z zbar)^2 coefficient must stay 1");
        continue;
      }
      if (!c.is_real()) fail("radial coefficient not real");
      int k = mo.k - P;
      if (!a_index_ok(n, nf.variant, nf.family, k)) fail("a index excluded");
      nf.a[{k, mo.m, mo.j}] = c.re;
    } else if (mo.k - mo.l == n) {
      if (!c.is_real()) fail("angular coefficient not real");
      int k = mo.l;
      if (!b_index_ok(n, nf.variant, k)) fail("b index excluded");
      nf.b[{k, mo.m, mo.j}] = c.re;
    } else {
      fail("harmonic other than 0 or n survived");
    }
  }
}

// exact gauge rotation making the coefficient of z^n real and positive;
// requires |h_n0| rational (always true when h_n0 is real or imaginary)
static CRat gauge_unit(const CRat& b, double& angle_out, int n) {
  Rat n2 = b.norm2();
  auto r = rat_sqrt(n2);
  if (!r)
    throw structure_error(
        "gauge rotation is not exact: |h_n0|^2 is not a perfect rational "
        "square; pre-rotate the input");
  CRat w{b.re / *r, -(b.im / *r)};  // w = conj(b)/|b|, so b*w = |b| > 0
  angle_out = std::atan2(to_double(w.im), to_double(w.re)) / n;
  return w;
}

static void check_autonomous_input(const Series& input) {
  if (input.n < 3) throw structure_error("n must be >= 3");
  if (!is_resonant(input)) throw structure_error("input has non-resonant terms");
  if (!is_real_valued(input)) throw structure_error("input is not real-valued");
  for (auto& [mo, c] : input.terms)
    if (mo.m || mo.j)
      throw structure_error("autonomous input carries parameter powers");
}

SimplifyResult simplify_autonomous(const Series& input, int truncation,
                                   NfVariant variant) {
  check_autonomous_input(input);
  int n = input.n;
  if (variant == NfVariant::AltN6 && n != 6)
    throw structure_error("the alternative shape applies to n = 6 only");
  Grading ns = native_grading(n);
  int bound = input.scheme == ns ? input.truncation
                                 : exact_grade_after_conversion(input, ns);
  if (truncation > bound)
    throw structure_error(
        "requested truncation " + std::to_string(truncation) +
        " exceeds the grade the input determines (" + std::to_string(bound) + ")");
  Series h = convert_scheme(input, ns, truncation);
  h.terms.erase(Mono{0, 0, 0, 0});

  if (!h.coeff(Mono{1, 1, 0, 0}).is_zero())
    throw degeneracy_error("h_11 != 0: the fixed point is not at exact resonance");
  if (n >= 5 && !h.coeff(Mono{2, 2, 0, 0}).is_zero())
    throw degeneracy_error("h_22 != 0: twist non-degeneracy fails to hold, "
                           "the non-degenerate (KAM) normal form applies");
  CRat b0 = h.coeff(Mono{n, 0, 0, 0});
  if (b0.is_zero())
    throw degeneracy_error("h_n0 = 0: leading resonant harmonic vanishes "
                           "(higher co-dimension case)");
  NormalForm nf;
  nf.n = n;
  nf.family = false;
  nf.variant = variant;
  nf.truncation = truncation;
  CRat w = gauge_unit(b0, nf.gauge, n);
  h = rotate_by_root(h, w);

  Series lead = project_grade(h, lead_grade(n));
  if (n >= 6 && variant == NfVariant::Standard &&
      h.coeff(Mono{3, 3, 0, 0}).is_zero())
    throw degeneracy_error(
        "h_33 = 0: radial leading coefficient vanishes" +
        std::string(n == 6 ? " (use the alternative n = 6 shape)" : ""));

  int p = (n == 3 || n == 5) ? 3 : 2;
  for (; p + homology_shift(n) <= truncation; ++p) {
    int q = p + homology_shift(n);
    Series target = project_grade(h, q);
    if (target.empty()) continue;
    HomologySolution sol = homological_solve(lead, target, variant);
    if (!sol.chi.empty())
      h = lie_transform(h, s_scale(sol.chi, CRat(-1)));
    if (!s_sub(project_grade(h, q), sol.residual).empty())
      throw structure_error("internal: residual mismatch at grade " + std::to_string(q));
  }
  extract_tables(h, nf);
  return {std::move(nf), std::move(h)};
}

SimplifyResult simplify_family(const Series& input, int truncation, NfVariant variant) {
  int n = input.n;
  if (n < 3) throw structure_error("n must be >= 3");
  if (variant == NfVariant::AltN6 && n != 6)
    throw structure_error("the alternative shape applies to n = 6 only");
  Grading fam = n >= 6 ? Grading::FamilyDelta : Grading::FamilyPoly;
  if (input.scheme != fam)
    throw structure_error("family input must use the '" + grading_name(fam) +
                          "' grading scheme");
  if (!is_resonant(input)) throw structure_error("input has non-resonant terms");
  if (!is_real_valued(input)) throw structure_error("input is not real-valued");
  if (truncation > input.truncation)
    throw structure_error("requested truncation exceeds the input truncation");
  Series h = truncate_to(input, truncation);
  std::erase_if(h.terms, [](auto& kv) { return kv.first.k == 0 && kv.first.l == 0; });

  if (h.coeff(Mono{1, 1, 1, 0}) != CRat(1) || h.coeff(Mono{2, 2, 0, 1}) != CRat(1))
    throw structure_error(
        "family input must carry d z zbar and v (z zbar)^2 with coefficient 1");
  for (auto& [mo, c] : h.terms) {
    if (mo.k == 1 && mo.l == 1 && !(mo.m == 1 && mo.j == 0))
      throw degeneracy_error("h_11 detuning beyond the d z zbar term present");
    if (mo.k == 2 && mo.l == 2 && !(mo.m == 0 && mo.j == 1))
      throw degeneracy_error("h_22 twist beyond the v (z zbar)^2 term present");
  }
  CRat b0 = h.coeff(Mono{n, 0, 0, 0});
  if (b0.is_zero())
    throw degeneracy_error("h_n0 = 0 at zero parameters (higher co-dimension case)");

  NormalForm nf;
  nf.n = n;
  nf.family = true;
  nf.variant = variant;
  nf.truncation = truncation;
  CRat w = gauge_unit(b0, nf.gauge, n);
  h = rotate_by_root(h, w);
  if (n >= 6 && variant == NfVariant::Standard &&
      h.coeff(Mono{3, 3, 0, 0}).is_zero())
    throw degeneracy_error("h_33 = 0 at zero parameters" +
                           std::string(n == 6 ? " (use the alternative n = 6 shape)" : ""));

  // leading part the homological operator is built from (the radial cubic is
  // absent for n <= 5: h_22-type coefficients vanish by hypothesis)
  Series lead(n, native_grading(n), kExactTruncation);
  lead.set(Mono{n, 0, 0, 0}, h.coeff(Mono{n, 0, 0, 0}));
  lead.set(Mono{0, n, 0, 0}, h.coeff(Mono{0, n, 0, 0}));
  if (n >= 6) lead.set(Mono{3, 3, 0, 0}, h.coeff(Mono{3, 3, 0, 0}));

  long wt_m = n >= 6 ? 3 : 4, wt_j = 2;  // family grade of d and v
  for (int q = 3; q <= truncation; ++q) {
    // collect the blocks (m, j) present at family grade q
    std::vector<std::pair<int, int>> blocks;
    for (auto& [mo, c] : h.terms) {
      if (grade_x2n(fam, n, mo) != 2L * n * q) continue;
      std::pair<int, int> b{mo.m, mo.j};
      if (std::find(blocks.begin(), blocks.end(), b) == blocks.end())
        blocks.push_back(b);
    }
    std::sort(blocks.begin(), blocks.end());
    for (auto [M, J] : blocks) {
      long g = q - wt_m * M - wt_j * J;  // grade of the monomial part
      int q_native = n == 4 ? (int)g / 2 : (int)g;
      int p = q_native - homology_shift(n);
      // minimal usable generator grade: polynomial order >= 3 when the
      // generator carries no parameter weight, >= 2 (z zbar) otherwise
      int pmin;
      if (M + J == 0)
        pmin = (n == 3 || n == 5) ? 3 : 2;
      else
        pmin = (n == 3 || n == 5) ? 2 : 1;
      if (p < pmin) continue;  // in-shape or fixed content; verified at the end

      Series target(n, native_grading(n), kExactTruncation);
      for (auto& [mo, c] : h.terms)
        if (mo.m == M && mo.j == J &&
            grade_x2n(fam, n, mo) == 2L * n * q)
          target.set(Mono{mo.k, mo.l, 0, 0}, c);
      if (target.empty()) continue;
      HomologySolution sol = homological_solve(lead, target, variant);
      if (sol.chi.empty()) continue;
      Series chi_f = convert_scheme(s_scale(sol.chi, CRat(-1)), fam, truncation);
      h = lie_transform(h, chi_f, Mono{0, 0, M, J});
    }
  }
  extract_tables(h, nf);
  return {std::move(nf), std::move(h)};
}

// ---- JSON / tables ----

std::string normal_form_to_json(const NormalForm& nf) {
  nlohmann::ordered_json out;
  out["n"] = nf.n;
  out["kind"] = nf.family ? "family" : "autonomous";
  out["variant"] = nf.variant == NfVariant::AltN6 ? "alt-n6" : "standard";
  out["gauge"] = nf.gauge;
  out["truncation"] = nf.truncation;
  auto dump = [](const std::map<std::tuple<int, int, int>, Rat>& t) {
    auto arr = nlohmann::ordered_json::array();
    for (auto& [key, val] : t) {
      auto [k, m, j] = key;
      arr.push_back({{"k", k}, {"m", m}, {"j", j}, {"value", rat_to_string(val)}});
    }
    return arr;
  };
  out["a"] = dump(nf.a);
  out["b"] = dump(nf.b);
  return out.dump(2);
}

NormalForm normal_form_from_json(const std::string& text) {
  nlohmann::json in;
  try {
    in = nlohmann::json::parse(text);
  } catch (const std::exception& e) {
    throw parse_error(std::string("normal form json: ") + e.what());
  }
  NormalForm nf;
  nf.n = in.at("n").get<int>();
  nf.family = in.at("kind").get<std::string>() == "family";
  nf.variant = in.value("variant", std::string("standard")) == "alt-n6"
                   ? NfVariant::AltN6
                   : NfVariant::Standard;
  nf.gauge = in.value("gauge", 0.0);
  nf.truncation = in.value("truncation", 0);
  auto load = [](const nlohmann::json& arr, std::map<std::tuple<int, int, int>, Rat>& t) {
    for (auto& e : arr)
      t[{e.at("k").get<int>(), e.value("m", 0), e.value("j", 0)}] =
          rat_from_string(e.at("value").get<std::string>());
  };
  load(in.value("a", nlohmann::json::array()), nf.a);
  load(in.value("b", nlohmann::json::array()), nf.b);
  return nf;
}

std::string normal_form_table(const NormalForm& nf) {
  std::ostringstream os;
  os << "n = " << nf.n << "  kind = " << (nf.family ? "family" : "autonomous")
     << "  variant = " << (nf.variant == NfVariant::AltN6 ? "alt-n6" : "standard")
     << "\ngauge rotation = " << nf.gauge << "\n";
  os << "radial part: (z zbar)^" << nf.prefix_power() << " * A(z zbar"
     << (nf.family ? ", d, v" : "") << ")\n";
  for (auto& [key, val] : nf.a) {
    auto [k, m, j] = key;
    os << "  a[k=" << k;
    if (nf.family) os << ", m=" << m << ", j=" << j;
    os << "] = " << rat_to_string(val) << "\n";
  }
  os << "angular part: (z^" << nf.n << " + zbar^" << nf.n << ") * B\n";
  for (auto& [key, val] : nf.b) {
    auto [k, m, j] = key;
    os << "  b[k=" << k;
    if (nf.family) os << ", m=" << m << ", j=" << j;
    os << "] = " << rat_to_string(val) << "\n";
  }
  return os.str();
}

// ---- interpolation ----

RotationMap map_from_hamiltonian(const Series& h, int rot) {
  if (!is_real_valued(h) || !is_resonant(h))
    throw structure_error("interpolating Hamiltonian must be real-valued and resonant");
  Series hp = convert_scheme(h, Grading::Poly, exact_grade_after_conversion(h, Grading::Poly));
  Series z = s_monomial(h.n, Grading::Poly, hp.truncation - 1, Mono{1, 0, 0, 0}, CRat(1));
  RotationMap m;
  m.n = h.n;
  m.rot = rot;
  m.mz = lie_transform(z, hp);
  return m;
}

Series interpolate(const RotationMap& map, int truncation) {
  int n = map.n;
  const Series& mz = map.mz;
  if (mz.scheme != Grading::Poly)
    throw structure_error("interpolate: map series must use the poly grading");
  if (mz.truncation < truncation - 1)
    throw structure_error("interpolate: map truncation too low for the requested grade");
  if (mz.coeff(Mono{1, 0, 0, 0}) != CRat(1))
    throw structure_error("interpolate: map is not tangent to the rotation (z coefficient != 1)");
  for (auto& [mo, c] : mz.terms) {
    if ((mo.k - mo.l - 1) % n != 0)
      throw structure_error("interpolate: map z-component has a non-resonant term");
    if (mo.k + mo.l < 3 && !(mo.k == 1 && mo.l == 0))
      throw structure_error("interpolate: map has extra low-order terms");
  }
  Series H(n, Grading::Poly, truncation);
  Series z = s_monomial(n, Grading::Poly, truncation - 1, Mono{1, 0, 0, 0}, CRat(1));
  CRat m2i{Rat(0), Rat(-2)};
  for (int m = 3; m <= truncation; ++m) {
    Series flow = H.empty() ? z : lie_transform(z, H);
    Series r = project_grade(s_sub(truncate_to(mz, truncation - 1), flow), m - 1);
    for (auto& [mo, c] : r.terms) {
      Mono key{mo.k, mo.l + 1, 0, 0};
      H.set(key, c / (m2i * CRat(Rat(mo.l + 1))));
    }
    // pure-z slots are not reached by the flow derivative; realness fixes them
    for (auto& [mo, c] : std::map<Mono, CRat>(H.terms)) {
      if (mo.k + mo.l != m) continue;
      Mono mirror = mo.bar();
      if (H.terms.count(mirror)) continue;
      if (mo.k != 0 && mo.l != 0)
        throw structure_error("interpolate: map is not canonical (realness fails at order " +
                              std::to_string(m) + ")");
      H.set(mirror, c.conj());
    }
    if (!is_real_valued(project_grade(H, m)))
      throw structure_error("interpolate: map is not canonical (realness fails at order " +
                            std::to_string(m) + ")");
  }
  Series final_flow = lie_transform(z, H);
  if (!s_sub(truncate_to(mz, truncation - 1), final_flow).empty())
    throw structure_error("interpolate: no interpolating Hamiltonian to this order");
  return H;
}

std::string rotation_map_to_json(const RotationMap& m) {
  nlohmann::ordered_json out;
  out["n"] = m.n;
  out["rot"] = m.rot;
  out["mz"] = nlohmann::ordered_json::parse(series_to_json(m.mz));
  return out.dump(2);
}

RotationMap rotation_map_from_json(const std::string& text) {
  nlohmann::json in;
  try {
    in = nlohmann::json::parse(text);
  } catch (const std::exception& e) {
    throw parse_error(std::string("map json: ") + e.what());
  }
  RotationMap m;
  m.n = in.at("n").get<int>();
  m.rot = in.value("rot", 1);
  m.mz = series_from_json(in.at("mz").dump());
  if (m.mz.n != m.n) throw parse_error("map json: n mismatch");
  return m;
}

std::pair<double, double> extract_params(std::complex<double> lambda0,
                                         std::complex<double> lambda_p,
                                         std::complex<double> a_prime0, double tol) {
  std::complex<double> ratio = lambda_p / lambda0;
  if (std::abs(std::abs(ratio) - 1.0) > tol)
    throw structure_error("extract_params: multiplier leaves the unit circle "
                          "(map is not area-preserving)");
  double d = -std::arg(ratio);
  std::complex<double> tw = std::complex<double>(0, 1) * a_prime0 / lambda_p;
  if (std::abs(tw.imag()) > tol * std::max(1.0, std::abs(tw)))
    throw structure_error("extract_params: twist coefficient is not real");
  return {d, tw.real()};
}

}  // namespace resonorm
