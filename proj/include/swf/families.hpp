#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "swf/domain.hpp"

namespace swf {

// All n cyclic shifts of a base k-subset of {1..n}.
struct CyclicFamily {
  int n = 0;
  int k = 0;          // member cardinality
  char kind = '?';    // 'A' (n=3k+1) or 'B' (n=3k+2)
  std::vector<int> base;
  std::vector<SubsetMask> members;  // shift j at index j, all distinct

  bool contains_set(SubsetMask u) const;
};

// Base {1,8} u {3i : 3 <= i <= k}, n = 3k+1. pre: k >= 4.
CyclicFamily build_family_A(int k);

// Base {1,3,4,8} u {3i : 4 <= i <= k}, n = 3k+2. pre: k >= 3.
CyclicFamily build_family_B(int k);

// Residues of Z_n not hit by {a - a' mod n : a, a' in base}; empty means the
// base differences cover Z_n, which is equivalent to the family intersecting.
std::vector<int> verify_difference_cover(const CyclicFamily& fam);

// Brute-force pairwise intersection check; a disjoint pair on failure.
std::optional<std::pair<SubsetMask, SubsetMask>> verify_intersecting(const CyclicFamily& fam);

struct NonBordaConstruction {
  SetFunctionWTL g;
  CyclicFamily family;
};

// Two-valued strongly non-Borda rule. n = 3k+1: L on the A-family and on
// everything above the k-slice, W elsewhere. n = 3k+2: W on the B-family and
// on everything up to the k-slice, L elsewhere. pre: n >= 11, n % 3 != 0.
NonBordaConstruction build_nonborda_g(int n);

}  // namespace swf
