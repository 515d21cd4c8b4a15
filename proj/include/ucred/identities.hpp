#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ucred/character.hpp"
#include "ucred/laurent.hpp"

namespace ucred {

struct IdentityReport {
  std::string id;
  std::vector<std::pair<std::string, int>> indices;
  LaurentPoly residual;  // cleared of denominators
  bool pass = false;
  double timing_ms = 0.0;

  std::string label() const;
};

IdentityReport make_report(std::string id, std::vector<std::pair<std::string, int>> indices, LaurentPoly residual,
                           double ms = 0.0);

// Bilinear system "16a".."16c" over all cells and index pairs, plus the
// homogeneity constraint "16d" on every cell.
std::vector<IdentityReport> check_bilinear(SigmaFamily& fam);
std::vector<IdentityReport> check_bilinear(const SigmaGrid& grid);

IdentityReport check_bilinear_a(SigmaFamily& fam, int m, int n, int i, int j);
IdentityReport check_bilinear_b(SigmaFamily& fam, int m, int n, int i);
IdentityReport check_bilinear_c(SigmaFamily& fam, int m, int n, int i, int j);
IdentityReport check_homogeneity(const SigmaGrid& grid, int m, int n);

// One instance of the three difference-equation families. The abstract
// tau_{m,n} is realized by sigma_{base_m + m, base_n + n}; the shift T_k
// lowers theta_k by one. Index sets are subsets of {0..N}.
struct DucInstance {
  int family = 1;
  std::vector<int> I, J;
  int m = 0, n = 0;
  std::string label() const;
};

IdentityReport check_duc(SigmaFamily& fam, const DucInstance& inst, int base_m = 0, int base_n = 0);
IdentityReport check_duc(SigmaFamily& fam, int family, const std::vector<int>& I, const std::vector<int>& J, int m,
                         int n, int base_m = 0, int base_n = 0);

// All instances realizable with indices 0..N (each index set drawn from the
// N+1 available variables).
std::vector<DucInstance> enumerate_duc_instances(int N);
std::vector<IdentityReport> check_all_duc(SigmaFamily& fam);

IdentityReport check_toda(SigmaFamily& fam, int m, int n, int i, int j);
std::vector<IdentityReport> check_all_toda(SigmaFamily& fam);

bool all_pass(const std::vector<IdentityReport>& reports);

}  // namespace ucred
