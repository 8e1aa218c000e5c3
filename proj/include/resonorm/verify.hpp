#pragma once
#include <random>
#include <string>
#include <vector>

#include "resonorm/normalform.hpp"

namespace resonorm {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

// expected kernel dimension / cokernel size of the homological operator
int expected_kernel_dim(int n, int p);
int expected_codim(int n, int p);

// generic leading part with a0 = 5/7, b0 = 3/2 (b-only for n = 3, 5)
Series generic_lead(int n);

// random data for the uniqueness checks
Rat random_rat(std::mt19937& rng, bool nonzero = false);
NormalForm random_normal_form(int n, int trunc, std::mt19937& rng, bool family);
Series random_generator(int n, int p, std::mt19937& rng);

std::vector<CheckResult> verify_tables(const std::vector<int>& ns, int pmax);
std::vector<CheckResult> verify_explicit_action(const std::vector<int>& ns, int pmax);
std::vector<CheckResult> verify_uniqueness(const std::vector<int>& ns, int seeds,
                                           int trunc, unsigned seed0);
std::vector<CheckResult> verify_boundaries();
std::vector<CheckResult> verify_suite(const std::string& name, unsigned seed);

}  // namespace resonorm
