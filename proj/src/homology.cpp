#include "resonorm/homology.hpp"

#include <sstream>

namespace resonorm {

Grading native_grading(int n) {
  if (n == 3 || n == 5) return Grading::Poly;
  if (n == 4 || n == 6) return Grading::Half;
  return Grading::Delta;
}

int lead_grade(int n) {
  switch (n) {
    case 3: return 3;
    case 4: return 2;
    case 5: return 5;
    case 6: return 3;
    default: return 3;
  }
}

int homology_shift(int n) {
  switch (n) {
    case 3: return 1;
    case 4: return 1;
    case 5: return 3;
    case 6: return 2;
    default: return 2;
  }
}

Mono q_monomial(int n, int m, int j) {
  int aj = std::abs(j);
  auto bad = [&] {
    throw structure_error("q_monomial: band |j|=" + std::to_string(aj) +
                          " out of range for n=" + std::to_string(n) +
                          ", m=" + std::to_string(m));
  };
  if (n == 4) {
    if (aj > m / 2) bad();
    return j >= 0 ? Mono{m + 2 * j, m - 2 * j, 0, 0} : Mono{m + 2 * j, m - 2 * j, 0, 0};
  }
  if (n == 6) {
    if (aj > m / 3) bad();
    return Mono{m + 3 * j, m - 3 * j, 0, 0};
  }
  if (n >= 7) {
    if (aj > m / 3) bad();
    if (j >= 0) return Mono{m + (n - 3) * j, m - 3 * j, 0, 0};
    return Mono{m - 3 * aj, m + (n - 3) * aj, 0, 0};
  }
  throw structure_error("q_monomial: defined for n = 4, 6 and n >= 7");
}

GradedSpace space_basis(int n, int p) {
  GradedSpace sp;
  sp.n = n;
  sp.p = p;
  if (p < 0) return sp;
  if (n == 3 || n == 5) {
    // polynomial order p, k - l a nonneg multiple of n, k >= l
    for (int d = 0; d <= p; d += n) {
      if ((p - d) % 2) continue;
      int l = (p - d) / 2, k = l + d;
      sp.bands.emplace_back(k, l);
    }
    std::sort(sp.bands.begin(), sp.bands.end(),
              [](auto& a, auto& b) { return a.first - a.second < b.first - b.second; });
  } else if (n == 4 || n == 6) {
    int step = n == 4 ? 2 : 3;
    for (int j = 0; j * step <= p; ++j) sp.bands.emplace_back(p + step * j, p - step * j);
  } else {
    for (int j = 0; 3 * j <= p; ++j) sp.bands.emplace_back(p + (n - 3) * j, p - 3 * j);
  }
  return sp;
}

int GradedSpace::real_dim() const {
  int d = 0;
  for (auto& [k, l] : bands) d += (k == l) ? 1 : 2;
  return d;
}

std::vector<Rat> GradedSpace::to_coords(const Series& h) const {
  if (!is_real_valued(h)) throw structure_error("to_coords: series not real-valued");
  std::vector<Rat> x;
  x.reserve(real_dim());
  Series rest = h;
  for (auto& [k, l] : bands) {
    CRat c = h.coeff(Mono{k, l, 0, 0});
    rest.terms.erase(Mono{k, l, 0, 0});
    if (k == l) {
      x.push_back(c.re);
    } else {
      rest.terms.erase(Mono{l, k, 0, 0});
      x.push_back(c.re);
      x.push_back(c.im);
    }
  }
  for (auto& [mo, c] : rest.terms)
    if (!c.is_zero())
      throw structure_error("to_coords: series has support outside the graded space");
  return x;
}

Series GradedSpace::from_coords(const std::vector<Rat>& x, int trunc) const {
  if ((int)x.size() != real_dim()) throw structure_error("from_coords: size mismatch");
  Series h(n, native_grading(n), trunc);
  size_t i = 0;
  for (auto& [k, l] : bands) {
    if (k == l) {
      h.set(Mono{k, l, 0, 0}, CRat(x[i++]));
    } else {
      CRat c{x[i], x[i + 1]};
      i += 2;
      h.set(Mono{k, l, 0, 0}, c);
      h.set(Mono{l, k, 0, 0}, c.conj());
    }
  }
  return h;
}

// ---- the homological operator ----

static void lead_coeffs(const Series& lead, CRat& a0, CRat& b0) {
  int n = lead.n;
  a0 = lead.coeff(n == 4 ? Mono{2, 2, 0, 0} : Mono{3, 3, 0, 0});
  b0 = lead.coeff(Mono{n, 0, 0, 0});
}

// chi must be homogeneous of grade p in the native grading
Series homological_apply(const Series& lead, const Series& chi) {
  int n = lead.n;
  int p = -1;
  if (!is_homogeneous(chi, &p))
    throw structure_error("homological_apply: chi not homogeneous");
  Series generic = lie_derivative(lead, chi);
  if (n >= 7) generic = project_grade(generic, p + 2);
  if (p < 0) return generic;

  CRat a0, b0;
  lead_coeffs(lead, a0, b0);
  // the closed-form band action is stated for real leading coefficients
  if ((n == 4 || n >= 6) && a0.is_real() && b0.is_real()) {
    // band formulas, derived for real-valued chi written on Q monomials;
    // extend linearly over complex coefficients using the conjugate-mirror rows
    Series expl(n, native_grading(n), generic.truncation);
    CRat i_{Rat(0), Rat(1)};
    int q = p + homology_shift(n);
    auto add = [&](int band, const CRat& v) {
      if (v.is_zero()) return;
      Mono mo = q_monomial(n, q, band);
      expl.set(mo, expl.coeff(mo) + v);
    };
    for (auto& [mo, c] : chi.terms) {
      int j = (mo.k - mo.l) / n;  // band index of the monomial in grade p
      if (n == 4) {
        add(j, c * i_ * CRat(Rat(16 * j)) * a0);
        add(j + 1, c * i_ * CRat(Rat(-8 * (p - 2 * j))) * b0);
        add(j - 1, c * i_ * CRat(Rat(8 * (p + 2 * j))) * b0);
      } else {
        CRat unit = n == 6 ? CRat{Rat(0), Rat(-12)} : CRat{Rat(0), Rat(-2 * n)};
        if (j == 0) {
          add(1, c * unit * CRat(Rat(p)) * b0);
          add(-1, c * unit * CRat(Rat(-p)) * b0);
        } else if (j > 0) {
          add(j, c * unit * CRat(Rat(-3 * j)) * a0);
          add(j + 1, c * unit * CRat(Rat(p - 3 * j)) * b0);
          if (n == 6) add(j - 1, c * unit * CRat(Rat(-(p + 3 * j))) * b0);
        } else {
          int aj = -j;
          // conjugate-mirror of the positive-band rows (unit is imaginary)
          add(j, c * unit * CRat(Rat(3 * aj)) * a0);
          add(j - 1, c * unit * CRat(Rat(-(p - 3 * aj))) * b0);
          if (n == 6) add(j + 1, c * unit * CRat(Rat(p + 3 * aj)) * b0);
        }
      }
    }
    if (!(s_sub(expl, generic).empty()))
      throw structure_error(
          "homological_apply: closed-form band action disagrees with the "
          "generic bracket (internal inconsistency)");
  }
  return generic;
}

// ---- complements ----

static Series real_mono_sum(int n, int k, int l, int trunc = kExactTruncation) {
  Series h(n, native_grading(n), trunc);
  h.set(Mono{k, l, 0, 0}, CRat(1));
  if (k != l) h.set(Mono{l, k, 0, 0}, CRat(1));
  return h;
}

std::vector<Series> complement_basis(int n, int p, NfVariant variant) {
  std::vector<Series> out;
  if (n == 3) {
    int q = p + 1;  // polynomial order of the target
    if (q % 2 == 0) {
      int m = q / 2;
      if (m >= 3 && (m - 3) % 3 != 2) out.push_back(real_mono_sum(3, m, m));
    } else if (q >= 3) {
      int k = (q - 3) / 2;
      if (k % 3 != 2) out.push_back(real_mono_sum(3, k + 3, k));
    }
    return out;
  }
  if (n == 4) {
    int q = p + 1;
    bool a_slot = (p % 2 == 1) || (p % 4 == 0);
    bool b_slot = (p % 2 == 1) || (p % 4 == 2);
    if (a_slot) out.push_back(real_mono_sum(4, q, q));
    if (b_slot) out.push_back(real_mono_sum(4, q + 2, q - 2));
    return out;
  }
  if (n == 5) {
    if (p % 5 == 0) return out;
    if (p % 2 == 1)
      out.push_back(real_mono_sum(5, (p + 3) / 2, (p + 3) / 2));
    else
      out.push_back(real_mono_sum(5, (p - 2) / 2 + 5, (p - 2) / 2));
    return out;
  }
  // n >= 6
  bool a_slot, b_slot;
  if (n == 6 && variant == NfVariant::AltN6) {
    // These slots stay complementary even when the radial part of the lead
    // vanishes, which is the case this variant exists for.
    a_slot = (p % 6 != 3);
    b_slot = (p % 6 != 0) && p >= 1;
  } else {
    a_slot = true;
    b_slot = (p % 3 != 0) && p >= 1;
  }
  if (a_slot) out.push_back(real_mono_sum(n, p + 2, p + 2));
  if (b_slot) out.push_back(real_mono_sum(n, p - 1 + n, p - 1));
  return out;
}

// ---- exact linear algebra ----

static int eliminate(std::vector<std::vector<Rat>>& a, std::vector<Rat>* b,
                     std::vector<int>* pivot_cols) {
  int rows = a.size();
  int cols = rows ? (int)a[0].size() : 0;
  int rank = 0;
  for (int c = 0; c < cols && rank < rows; ++c) {
    int best = -1;
    for (int r = rank; r < rows; ++r) {
      if (a[r][c] == 0) continue;
      if (best < 0 || abs(a[r][c]) > abs(a[best][c])) best = r;
    }
    if (best < 0) continue;
    std::swap(a[rank], a[best]);
    if (b) std::swap((*b)[rank], (*b)[best]);
    Rat inv = a[rank][c];
    for (int cc = c; cc < cols; ++cc) a[rank][cc] /= inv;
    if (b) (*b)[rank] /= inv;
    for (int r = 0; r < rows; ++r) {
      if (r == rank || a[r][c] == 0) continue;
      Rat f = a[r][c];
      for (int cc = c; cc < cols; ++cc) a[r][cc] -= f * a[rank][cc];
      if (b) (*b)[r] -= f * (*b)[rank];
    }
    if (pivot_cols) pivot_cols->push_back(c);
    ++rank;
  }
  return rank;
}

int rat_rank(std::vector<std::vector<Rat>> a) { return eliminate(a, nullptr, nullptr); }

bool rat_solve(std::vector<std::vector<Rat>> a, std::vector<Rat> b, std::vector<Rat>& x) {
  int rows = a.size();
  int cols = rows ? (int)a[0].size() : 0;
  std::vector<int> piv;
  int rank = eliminate(a, &b, &piv);
  for (int r = rank; r < rows; ++r)
    if (b[r] != 0) return false;
  x.assign(cols, Rat(0));
  for (int r = 0; r < rank; ++r) x[piv[r]] = b[r];
  return true;
}

std::vector<std::vector<Rat>> lambda_matrix(const Series& lead, int p) {
  int n = lead.n;
  GradedSpace src = space_basis(n, p);
  GradedSpace dst = space_basis(n, p + homology_shift(n));
  int sd = src.real_dim(), td = dst.real_dim();
  std::vector<std::vector<Rat>> m(td, std::vector<Rat>(sd, Rat(0)));
  for (int c = 0; c < sd; ++c) {
    std::vector<Rat> e(sd, Rat(0));
    e[c] = 1;
    Series img = homological_apply(lead, src.from_coords(e));
    auto col = dst.to_coords(img);
    for (int r = 0; r < td; ++r) m[r][c] = col[r];
  }
  return m;
}

LambdaRankInfo lambda_rank(const Series& lead, int p) {
  GradedSpace src = space_basis(lead.n, p);
  GradedSpace dst = space_basis(lead.n, p + homology_shift(lead.n));
  LambdaRankInfo info;
  info.dim_source = src.real_dim();
  info.dim_target = dst.real_dim();
  info.rank = rat_rank(lambda_matrix(lead, p));
  return info;
}

HomologySolution homological_solve(const Series& lead, const Series& target,
                                   NfVariant variant) {
  int n = lead.n;
  int q = -1;
  if (!is_homogeneous(target, &q) || q < 0)
    throw structure_error("homological_solve: target not homogeneous");
  if (!is_real_valued(target))
    throw structure_error("homological_solve: target not real-valued");
  int p = q - homology_shift(n);
  GradedSpace src = space_basis(n, p);
  GradedSpace dst = space_basis(n, q);
  auto comp = complement_basis(n, p, variant);
  int sd = src.real_dim(), td = dst.real_dim(), cd = comp.size();

  std::vector<std::vector<Rat>> a(td, std::vector<Rat>(sd + cd, Rat(0)));
  auto m = lambda_matrix(lead, p);
  for (int r = 0; r < td; ++r)
    for (int c = 0; c < sd; ++c) a[r][c] = m[r][c];
  for (int c = 0; c < cd; ++c) {
    auto col = dst.to_coords(comp[c]);
    for (int r = 0; r < td; ++r) a[r][sd + c] = col[r];
  }
  std::vector<Rat> b = dst.to_coords(target);
  std::vector<Rat> x;
  if (!rat_solve(std::move(a), std::move(b), x))
    throw degeneracy_error(
        "homological_solve: system inconsistent at grade " + std::to_string(q) +
        " (a leading coefficient hypothesis fails for this input)");
  HomologySolution sol;
  sol.chi = src.from_coords(std::vector<Rat>(x.begin(), x.begin() + sd), target.truncation);
  sol.chi.scheme = target.scheme;
  sol.residual = Series(n, target.scheme, target.truncation);
  for (int c = 0; c < cd; ++c) {
    Series piece = s_scale(convert_scheme(comp[c], target.scheme, target.truncation),
                           CRat(x[sd + c]));
    sol.residual = s_add(sol.residual, piece);
  }
  return sol;
}

double continuant_det(const std::vector<double>& alpha, const std::vector<double>& beta,
                      const std::vector<double>& gamma) {
  size_t nsz = alpha.size();
  if (beta.size() != gamma.size() || (nsz > 0 && beta.size() != nsz - 1))
    throw structure_error("continuant_det: need |beta| = |gamma| = |alpha| - 1");
  double km2 = 1.0, km1 = nsz ? alpha[0] : 1.0;
  for (size_t j = 1; j < nsz; ++j) {
    double k = alpha[j] * km1 + beta[j - 1] * gamma[j - 1] * km2;
    km2 = km1;
    km1 = k;
  }
  return km1;
}

std::string lambda_matrix_csv(const Series& lead, int p) {
  auto m = lambda_matrix(lead, p);
  GradedSpace src = space_basis(lead.n, p);
  GradedSpace dst = space_basis(lead.n, p + homology_shift(lead.n));
  auto labels = [](const GradedSpace& sp) {
    std::vector<std::string> out;
    for (auto& [k, l] : sp.bands) {
      std::string base = "z^" + std::to_string(k) + "zb^" + std::to_string(l);
      if (k == l)
        out.push_back(base);
      else {
        out.push_back("Re " + base);
        out.push_back("Im " + base);
      }
    }
    return out;
  };
  auto rl = labels(dst), cl = labels(src);
  std::ostringstream os;
  os << "row";
  for (auto& c : cl) os << "," << c;
  os << "\n";
  for (size_t r = 0; r < m.size(); ++r) {
    os << rl[r];
    for (auto& v : m[r]) os << "," << rat_to_string(v);
    os << "\n";
  }
  return os.str();
}

}  // namespace resonorm
