#include "swf/axioms.hpp"

#include <algorithm>
#include <bit>

namespace swf {

PermutationGroup PermutationGroup::cyclic(int n) {
  PermutationGroup grp;
  grp.n = n;
  std::vector<int> shift(n);
  for (int v = 1; v <= n; ++v) shift[v - 1] = v % n + 1;
  grp.generators.push_back(std::move(shift));
  return grp;
}

SubsetMask apply_perm(const std::vector<int>& sigma, SubsetMask u) {
  SubsetMask out = 0;
  while (u) {
    int v = std::countr_zero(u) + 1;
    u &= u - 1;
    out |= SubsetMask{1} << (sigma[v - 1] - 1);
  }
  return out;
}

void validate_group(const PermutationGroup& grp) {
  for (const auto& sigma : grp.generators) {
    if (static_cast<int>(sigma.size()) != grp.n)
      throw std::invalid_argument("generator length != n");
    std::vector<bool> seen(grp.n, false);
    for (int img : sigma) {
      if (img < 1 || img > grp.n || seen[img - 1])
        throw std::invalid_argument("generator is not a permutation of 1..n");
      seen[img - 1] = true;
    }
  }
}

bool check_transitive(const PermutationGroup& grp) {
  validate_group(grp);
  if (grp.n < 1) return false;
  std::vector<bool> reached(grp.n + 1, false);
  std::vector<int> stack = {1};
  reached[1] = true;
  int count = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (const auto& sigma : grp.generators) {
      int w = sigma[v - 1];
      if (!reached[w]) {
        reached[w] = true;
        ++count;
        stack.push_back(w);
      }
    }
  }
  return count == grp.n;
}

bool check_ta(const SetFunctionWTL& g, const PermutationGroup& grp) {
  if (grp.n != g.n) throw std::invalid_argument("group/function size mismatch");
  if (!check_transitive(grp))
    throw std::invalid_argument("anonymity check needs a transitive group");
  for (const auto& sigma : grp.generators)
    for (SubsetMask u = 0; u < g.size(); ++u)
      if (g(apply_perm(sigma, u)) != g(u)) return false;
  return true;
}

bool check_pareto(const SetFunctionWTL& g) {
  return g(0) == Rel::W && g(full_mask(g.n)) == Rel::L;
}

std::optional<PrViolation> pr_violation(const SetFunctionWTL& g) {
  for (SubsetMask u = 0; u < g.size(); ++u)
    for (int v = 1; v <= g.n; ++v) {
      if (contains(u, v)) continue;
      if (rel_int(g(u)) < rel_int(g(u | (SubsetMask{1} << (v - 1)))))
        return PrViolation{u, v};
    }
  return std::nullopt;
}

const char* borda_kind_name(BordaKind k) {
  switch (k) {
    case BordaKind::PositiveUnweighted: return "positive-unweighted";
    case BordaKind::NegativeUnweighted: return "negative-unweighted";
    case BordaKind::TieRule: return "tie-rule";
    case BordaKind::WeaklyBordaPositive: return "weakly-borda-positive";
    case BordaKind::WeaklyBordaNegative: return "weakly-borda-negative";
    case BordaKind::StronglyNonBorda: return "strongly-non-borda";
    case BordaKind::UnclassifiedWithoutTA: return "unclassified-without-TA";
  }
  return "?";
}

BordaClassification classify_borda(const SetFunctionWTL& g, const PermutationGroup& grp,
                                   bool assume_consistent) {
  if (!assume_consistent)
    if (auto bad = check_triple_consistency(g)) throw ConsistencyError(*bad);

  BordaClassification out;
  if (!check_ta(g, grp)) {
    out.kind = BordaKind::UnclassifiedWithoutTA;
    return out;
  }

  bool exact_pos = true, exact_neg = true, all_tie = true;
  bool weak_pos = true, weak_neg = true;
  for (SubsetMask u = 0; u < g.size(); ++u) {
    Rel want = sign_of(static_cast<long long>(g.n) - 3 * popcount(u));
    Rel got = g(u);
    exact_pos &= got == want;
    exact_neg &= got == negated(want);
    all_tie &= got == Rel::T;
    if (want != Rel::T) {  // decisive margin: weak agreement must match
      weak_pos &= got == want;
      weak_neg &= got == negated(want);
    }
  }
  if (exact_pos) {
    out.kind = BordaKind::PositiveUnweighted;
  } else if (exact_neg) {
    out.kind = BordaKind::NegativeUnweighted;
  } else if (all_tie) {
    out.kind = BordaKind::TieRule;
  } else if (weak_pos) {
    out.kind = BordaKind::WeaklyBordaPositive;
  } else if (weak_neg) {
    out.kind = BordaKind::WeaklyBordaNegative;
  } else {
    out.kind = BordaKind::StronglyNonBorda;
    // smallest cardinality, then smallest mask, with a W and an L on one slice
    for (int t = 0; t <= g.n && !out.witness; ++t) {
      std::optional<SubsetMask> uw, ul;
      for (SubsetMask u = 0; u < g.size(); ++u) {
        if (popcount(u) != t) continue;
        if (!uw && g(u) == Rel::W) uw = u;
        if (!ul && g(u) == Rel::L) ul = u;
        if (uw && ul) break;
      }
      if (uw && ul)
        out.witness = BordaClassification::Witness{*uw, *ul, g.n - 3ll * t, g.n};
    }
  }
  return out;
}

NumberLineResult numberline_check(const NumberLineFn& f) {
  if (f.ell < 0 || static_cast<int>(f.values.size()) != f.ell + 1)
    throw std::invalid_argument("number-line table size mismatch");
  if (!(f.ell <= f.m && f.m <= 2 * f.ell))
    throw std::invalid_argument("need ell <= m <= 2*ell");

  NumberLineResult res;
  for (int i = 0; i <= f.ell; ++i)
    for (int j = i; j <= f.ell; ++j) {
      int k = f.m - i - j;
      if (k < j || k > f.ell) continue;
      if (!consistent_multiset(f.values[i], f.values[j], f.values[k])) {
        res.consistent = false;
        res.violation = {i, j, k};
        return res;
      }
    }
  res.consistent = true;

  res.kappa = 0;
  for (int i = 0; i <= f.ell && res.kappa == 0; ++i) {
    if (f.values[i] == Rel::T) continue;
    bool below = 3 * i < f.m;  // W below m/3 means the increasing form
    res.kappa = (f.values[i] == Rel::W) == below ? 1 : -1;
  }
  for (int i = 0; i <= f.ell; ++i)
    if (f.values[i] != sign_of(static_cast<long long>(res.kappa) * (f.m - 3 * i)))
      throw std::logic_error("consistent table failed to match a sign form");
  return res;
}

}  // namespace swf
