#include "swf/domain.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <sstream>

namespace swf {

void budget_check(std::size_t bytes, const char* what) {
  static const long long cap_mb = [] {
    const char* env = std::getenv("SWF_BUDGET_MB");
    return env ? std::atoll(env) : -1;
  }();
  if (cap_mb >= 0 && bytes > static_cast<std::size_t>(cap_mb) * 1024 * 1024) {
    std::ostringstream os;
    os << "scale unsupported: " << what << " needs " << bytes
       << " bytes, budget is " << cap_mb << " MB (SWF_BUDGET_MB)";
    throw BudgetError(os.str());
  }
}

Rel rel_from_char(char c) {
  switch (c) {
    case 'W': return Rel::W;
    case 'T': return Rel::T;
    case 'L': return Rel::L;
  }
  throw std::invalid_argument(std::string("bad W/T/L char: ") + c);
}

int Ballot::rank_of(Candidate c) const {
  c = cand_norm(c);
  if (c == cand_norm(cycle_index)) return 0;      // listed last
  if (c == cand_norm(cycle_index + 1)) return 2;  // listed first
  return 1;
}

SubsetMask Election::voters_with_cycle(int b) const {
  SubsetMask m = 0;
  for (int v = 1; v <= n; ++v)
    if (ballots[v - 1].cycle_index == cand_norm(b)) m |= SubsetMask{1} << (v - 1);
  return m;
}

Election election_parse(const std::string& s) {
  Election e;
  e.n = static_cast<int>(s.size());
  if (e.n < 1 || e.n > kMaxVoters)
    throw std::invalid_argument("election size out of range 1..24: " + s);
  for (char c : s) {
    if (c < '1' || c > '3')
      throw std::invalid_argument(std::string("bad ballot digit: ") + c);
    e.ballots.push_back(Ballot{c - '0'});
  }
  return e;
}

std::string election_str(const Election& e) {
  std::string s;
  for (const Ballot& b : e.ballots) s += static_cast<char>('0' + b.cycle_index);
  return s;
}

Rel WeakOrdering::compare(Candidate i, Candidate j) const {
  i = cand_norm(i);
  j = cand_norm(j);
  auto tier_of = [&](Candidate c) {
    for (std::size_t t = 0; t < tiers.size(); ++t)
      if (std::find(tiers[t].begin(), tiers[t].end(), c) != tiers[t].end())
        return static_cast<int>(t);
    throw std::logic_error("candidate missing from ordering");
  };
  int ti = tier_of(i), tj = tier_of(j);
  return ti < tj ? Rel::W : (ti > tj ? Rel::L : Rel::T);
}

std::string WeakOrdering::str() const {
  std::string s;
  for (std::size_t t = 0; t < tiers.size(); ++t) {
    for (std::size_t k = 0; k < tiers[t].size(); ++k) {
      if (k) s += " = ";
      s += "c" + std::to_string(tiers[t][k]);
    }
    if (t + 1 < tiers.size()) s += " > ";
  }
  return s;
}

SetFunctionWTL::SetFunctionWTL(int n_voters, Rel fill) : n(n_voters) {
  if (n < 1 || n > kMaxVoters)
    throw std::invalid_argument("voter count out of range 1..24");
  budget_check(std::size_t{1} << n, "set-function table");
  table.assign(std::size_t{1} << n, fill);
}

WeightVector uniform_weights(int n, int value) {
  WeightVector w;
  w.n = n;
  w.w.assign(n, Rational(value));
  return w;
}

RelativeElection relative_election(const Election& e, Candidate i, Candidate j) {
  i = cand_norm(i);
  j = cand_norm(j);
  if (i == j) throw std::invalid_argument("relative election needs distinct candidates");
  RelativeElection a;
  a.n = e.n;
  a.values.reserve(e.n);
  for (const Ballot& b : e.ballots)
    a.values.push_back(static_cast<std::int8_t>(b.rank_of(i) - b.rank_of(j)));
  return a;
}

SubsetMask zeta(const RelativeElection& a) {
  SubsetMask u = 0;
  for (int v = 1; v <= a.n; ++v) {
    std::int8_t x = a.values[v - 1];
    if (x == -2)
      u |= SubsetMask{1} << (v - 1);
    else if (x != 1)
      throw std::invalid_argument("zeta needs values in {1,-2}");
  }
  return u;
}

RelativeElection zeta_inv(SubsetMask u, int n) {
  RelativeElection a;
  a.n = n;
  a.values.reserve(n);
  for (int v = 1; v <= n; ++v)
    a.values.push_back(contains(u, v) ? std::int8_t{-2} : std::int8_t{1});
  return a;
}

bool consistent_multiset(Rel a, Rel b, Rel c) {
  int w = (a == Rel::W) + (b == Rel::W) + (c == Rel::W);
  int t = (a == Rel::T) + (b == Rel::T) + (c == Rel::T);
  // {W,W,L}, {W,T,L}, {W,L,L}, {T,T,T}
  return (w == 2 && t == 0) || (w == 1 && t == 1) || (w == 1 && t == 0) || t == 3;
}

Rational borda_margin(const RelativeElection& a, const WeightVector& w) {
  if (w.n != a.n) throw std::invalid_argument("weight/election size mismatch");
  Rational d = 0;
  for (int v = 1; v <= a.n; ++v) d += a.values[v - 1] * w.w[v - 1];
  return d;
}

long long borda_margin(const RelativeElection& a) {
  long long d = 0;
  for (std::int8_t x : a.values) d += x;
  return d;
}

std::optional<TripleViolation> check_triple_consistency(const SetFunctionWTL& g) {
  // consistency of value triples by code 9a+3b+c with a,b,c in {0,1,2}
  bool ok[27];
  auto code = [](Rel a, Rel b, Rel c) {
    return 9 * (rel_int(a) + 1) + 3 * (rel_int(b) + 1) + (rel_int(c) + 1);
  };
  constexpr Rel rels[3] = {Rel::L, Rel::T, Rel::W};
  for (Rel a : rels)
    for (Rel b : rels)
      for (Rel c : rels) ok[code(a, b, c)] = consistent_multiset(a, b, c);

  const Rel* tab = g.table.data();
  const SubsetMask all = full_mask(g.n);
  for (SubsetMask v1 = 0;; ++v1) {
    const SubsetMask rest = all & ~v1;
    const int base = 9 * (rel_int(tab[v1]) + 1);
    // descending submask walk of `rest`, empty set included
    SubsetMask v2 = rest;
    for (;;) {
      if (!ok[base + 3 * (rel_int(tab[v2]) + 1) + (rel_int(tab[rest ^ v2]) + 1)])
        return TripleViolation{v1, v2, rest ^ v2};
      if (v2 == 0) break;
      v2 = (v2 - 1) & rest;
    }
    if (v1 == all) break;
  }
  return std::nullopt;
}

ConsistencyError::ConsistencyError(const TripleViolation& w)
    : std::runtime_error("inconsistent value triple on partition (" +
                         std::to_string(w.v1) + "," + std::to_string(w.v2) + "," +
                         std::to_string(w.v3) + ")"),
      witness(w) {}

namespace {

template <class Score>
WeakOrdering ordering_from_scores(const Score s[4]) {
  std::vector<Candidate> order = {1, 2, 3};
  std::sort(order.begin(), order.end(),
            [&](Candidate a, Candidate b) { return s[a] > s[b] || (s[a] == s[b] && a < b); });
  WeakOrdering w;
  for (Candidate c : order) {
    if (!w.tiers.empty() && s[w.tiers.back().back()] == s[c])
      w.tiers.back().push_back(c);
    else
      w.tiers.push_back({c});
  }
  return w;
}

// Copeland-style scores recover the unique weak ordering matching any
// consistent triple of pairwise results.
WeakOrdering ordering_from_pairwise(Rel x12, Rel x23, Rel x31) {
  int s[4] = {};
  s[1] = rel_int(x12) - rel_int(x31);
  s[2] = rel_int(x23) - rel_int(x12);
  s[3] = rel_int(x31) - rel_int(x23);
  return ordering_from_scores(s);
}

}  // namespace

WeakOrdering evaluate_swf(const SetFunctionWTL& g, const Election& e) {
  if (g.n != e.n) throw std::invalid_argument("set function / election size mismatch");
  SubsetMask v1 = e.voters_with_cycle(1);
  SubsetMask v2 = e.voters_with_cycle(2);
  SubsetMask v3 = e.voters_with_cycle(3);
  Rel x1 = g(v1), x2 = g(v2), x3 = g(v3);
  if (!consistent_multiset(x1, x2, x3)) throw ConsistencyError({v1, v2, v3});
  return ordering_from_pairwise(x1, x2, x3);
}

WeakOrdering borda_swf(const WeightVector& w, const Election& e) {
  if (w.n != e.n) throw std::invalid_argument("weight/election size mismatch");
  Rational s[4] = {0, 0, 0, 0};
  for (Candidate c = 1; c <= 3; ++c)
    for (int v = 1; v <= e.n; ++v) s[c] += w.w[v - 1] * e.ballots[v - 1].rank_of(c);
  return ordering_from_scores(s);
}

SetFunctionWTL borda_form(int n, int s) {
  SetFunctionWTL g(n);
  for (SubsetMask u = 0; u < g.size(); ++u)
    g.set(u, sign_of(static_cast<long long>(s) * (n - 3 * popcount(u))));
  return g;
}

}  // namespace swf
