#include "swf/families.hpp"

#include <algorithm>
#include <set>

namespace swf {

bool CyclicFamily::contains_set(SubsetMask u) const {
  return std::find(members.begin(), members.end(), u) != members.end();
}

static CyclicFamily shifts_of(std::vector<int> base, int n, int k, char kind) {
  CyclicFamily fam;
  fam.n = n;
  fam.k = k;
  fam.kind = kind;
  std::sort(base.begin(), base.end());
  fam.base = base;
  for (int j = 0; j < n; ++j) {
    SubsetMask m = 0;
    for (int a : base) m |= SubsetMask{1} << ((a - 1 + j) % n);
    fam.members.push_back(m);
  }
  std::set<SubsetMask> distinct(fam.members.begin(), fam.members.end());
  if (static_cast<int>(distinct.size()) != n)
    throw std::logic_error("family base is periodic: shifts collide");
  return fam;
}

CyclicFamily build_family_A(int k) {
  if (k < 4) throw std::invalid_argument("A-family needs k >= 4");
  std::vector<int> base = {1, 8};
  for (int i = 3; i <= k; ++i) base.push_back(3 * i);
  return shifts_of(std::move(base), 3 * k + 1, k, 'A');
}

CyclicFamily build_family_B(int k) {
  if (k < 3) throw std::invalid_argument("B-family needs k >= 3");
  std::vector<int> base = {1, 3, 4, 8};
  for (int i = 4; i <= k; ++i) base.push_back(3 * i);
  return shifts_of(std::move(base), 3 * k + 2, k + 1, 'B');
}

std::vector<int> verify_difference_cover(const CyclicFamily& fam) {
  std::vector<bool> hit(fam.n, false);
  for (int a : fam.base)
    for (int b : fam.base) hit[((a - b) % fam.n + fam.n) % fam.n] = true;
  std::vector<int> missing;
  for (int r = 0; r < fam.n; ++r)
    if (!hit[r]) missing.push_back(r);
  return missing;
}

std::optional<std::pair<SubsetMask, SubsetMask>> verify_intersecting(const CyclicFamily& fam) {
  for (std::size_t i = 0; i < fam.members.size(); ++i)
    for (std::size_t j = i + 1; j < fam.members.size(); ++j)
      if ((fam.members[i] & fam.members[j]) == 0)
        return std::make_pair(fam.members[i], fam.members[j]);
  return std::nullopt;
}

NonBordaConstruction build_nonborda_g(int n) {
  if (n < 11 || n % 3 == 0)
    throw std::invalid_argument("construction needs n >= 11 with n % 3 != 0");
  const int k = n / 3;
  NonBordaConstruction out;
  if (n % 3 == 1) {
    out.family = build_family_A(k);
    out.g = SetFunctionWTL(n, Rel::W);
    for (SubsetMask u = 0; u < out.g.size(); ++u)
      if (popcount(u) >= k + 1) out.g.set(u, Rel::L);
    for (SubsetMask m : out.family.members) out.g.set(m, Rel::L);
  } else {
    out.family = build_family_B(k);
    out.g = SetFunctionWTL(n, Rel::L);
    for (SubsetMask u = 0; u < out.g.size(); ++u)
      if (popcount(u) <= k) out.g.set(u, Rel::W);
    for (SubsetMask m : out.family.members) out.g.set(m, Rel::W);
  }
  return out;
}

}  // namespace swf
