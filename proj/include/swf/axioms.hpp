#pragma once

#include <array>
#include <optional>
#include <vector>

#include "swf/domain.hpp"

namespace swf {

// Voter permutation group given by generators in one-line notation:
// generators[g][v-1] = sigma(v).
struct PermutationGroup {
  int n = 0;
  std::vector<std::vector<int>> generators;

  static PermutationGroup cyclic(int n);  // single shift generator
};

SubsetMask apply_perm(const std::vector<int>& sigma, SubsetMask u);

// Throws unless every generator is a permutation of {1..n}.
void validate_group(const PermutationGroup& grp);

// True iff the generated group acts transitively on {1..n}.
bool check_transitive(const PermutationGroup& grp);

// g invariant under every generator (hence the whole group).
// pre: transitive group.
bool check_ta(const SetFunctionWTL& g, const PermutationGroup& grp);

// g(empty) = W and g(full) = L.
bool check_pareto(const SetFunctionWTL& g);

struct PrViolation {
  SubsetMask u = 0;
  int v = 0;  // g(u) < g(u + {v})
};

// g decreasing under inclusion, checked on covering pairs.
std::optional<PrViolation> pr_violation(const SetFunctionWTL& g);
inline bool check_pr(const SetFunctionWTL& g) { return !pr_violation(g).has_value(); }

enum class BordaKind {
  PositiveUnweighted,
  NegativeUnweighted,
  TieRule,
  WeaklyBordaPositive,
  WeaklyBordaNegative,
  StronglyNonBorda,
  UnclassifiedWithoutTA,
};

const char* borda_kind_name(BordaKind k);

struct BordaClassification {
  BordaKind kind = BordaKind::UnclassifiedWithoutTA;

  // For StronglyNonBorda: equal-margin pair with opposite values, smallest
  // cardinality then smallest mask. Absent only for inputs where no slice
  // carries both a W and an L.
  struct Witness {
    SubsetMask u_w = 0, u_l = 0;
    long long margin = 0;
    int n = 0;
    RelativeElection a_w() const { return zeta_inv(u_w, n); }
    RelativeElection a_l() const { return zeta_inv(u_l, n); }
  };
  std::optional<Witness> witness;
};

// Classification against the unweighted Borda forms; weighted rules need no
// separate test when g is invariant under a transitive action, so a g that
// fails invariance is reported UnclassifiedWithoutTA instead.
// pre: (g,g,g) consistent (checked unless assume_consistent).
BordaClassification classify_borda(const SetFunctionWTL& g, const PermutationGroup& grp,
                                   bool assume_consistent = false);

// f: {0..ell} -> {W,T,L} with the induced rule: value triples at i+j+k = m
// must be consistent.
struct NumberLineFn {
  int ell = 0;
  int m = 0;  // pre: ell <= m <= 2*ell
  std::vector<Rel> values;  // values[i] = f(i), 0 <= i <= ell
};

struct NumberLineResult {
  bool consistent = false;
  int kappa = 0;  // sign form: f(i) = sign(kappa * (m - 3i))
  std::array<int, 3> violation = {0, 0, 0};
};

NumberLineResult numberline_check(const NumberLineFn& f);

}  // namespace swf
