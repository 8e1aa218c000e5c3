#pragma once
#include <string>
#include <vector>

#include "resonorm/series.hpp"

namespace resonorm {

// native grading scheme and grade shift of the homological operator for
// each resonance order
Grading native_grading(int n);
int lead_grade(int n);       // grade of the leading part h_lead
int homology_shift(int n);   // Lambda maps grade p -> p + shift

// banded monomial basis of the grade-p subspace: entries (k, l) with k >= l,
// j (band index) ascending; k == l first when present
struct GradedSpace {
  int n = 0, p = 0;
  std::vector<std::pair<int, int>> bands;  // (k, l), k >= l
  int real_dim() const;
  // real coordinates: [c_0; Re c_1, Im c_1; ...] where c_j is the coefficient
  // on the k > l member of band j and realness fixes the mirror term
  std::vector<Rat> to_coords(const Series& h) const;
  Series from_coords(const std::vector<Rat>& x, int trunc = kExactTruncation) const;
};

GradedSpace space_basis(int n, int p);

// basis monomial of the grade-|band| lattice; throws if |j| out of range
Mono q_monomial(int n, int m, int j);

enum class NfVariant { Standard, AltN6 };

// Lambda chi = L_chi(h_lead), projected back to grade p+shift for n >= 7.
// Computed by the generic bracket and, where closed-form band formulas
// exist (n = 4, 6, >= 7), cross-checked against them.
Series homological_apply(const Series& lead, const Series& chi);

// real elements spanning a complement of the image of Lambda in grade q,
// chosen among normal-form shape monomials
std::vector<Series> complement_basis(int n, int p, NfVariant variant = NfVariant::Standard);

struct HomologySolution {
  Series chi;       // generator, grade p, kernel component pinned to zero
  Series residual;  // complement component, grade p + shift
};

// solve Lambda chi + residual = target (target homogeneous of grade p+shift);
// throws degeneracy_error when the system is inconsistent
HomologySolution homological_solve(const Series& lead, const Series& target,
                                   NfVariant variant = NfVariant::Standard);

// exact rank of the Lambda matrix from grade p to p+shift for the given lead
struct LambdaRankInfo {
  int dim_source = 0, dim_target = 0, rank = 0;
  int kernel_dim() const { return dim_source - rank; }
  int codim() const { return dim_target - rank; }
};
LambdaRankInfo lambda_rank(const Series& lead, int p);

// dense Lambda matrix in real coordinates (rows: target, cols: source)
std::vector<std::vector<Rat>> lambda_matrix(const Series& lead, int p);

// determinant of a tridiagonal-with-corners style recurrence:
// K_0 = 1, K_1 = alpha_1, K_j = alpha_j K_{j-1} + beta_{j-1} gamma_{j-1} K_{j-2}
double continuant_det(const std::vector<double>& alpha, const std::vector<double>& beta,
                      const std::vector<double>& gamma);

// exact linear algebra over Q
int rat_rank(std::vector<std::vector<Rat>> a);

// least structure: solve a x = b with free variables pinned to 0;
// returns false if inconsistent
bool rat_solve(std::vector<std::vector<Rat>> a, std::vector<Rat> b,
               std::vector<Rat>& x);

std::string lambda_matrix_csv(const Series& lead, int p);

}  // namespace resonorm
