#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "swf/rational.hpp"

namespace swf {

// Candidates are 1..3 with indices wrapping mod 3 (c4 = c1).
using Candidate = int;

inline Candidate cand_norm(int i) { return (i - 1 + 300) % 3 + 1; }

inline constexpr int kMaxVoters = 24;

// Voter set {1..n} as a bitmask, voter v <-> bit v-1 (little-endian).
using SubsetMask = std::uint32_t;

inline int popcount(SubsetMask m) { return std::popcount(m); }
inline bool contains(SubsetMask m, int v) { return (m >> (v - 1)) & 1u; }
inline SubsetMask full_mask(int n) { return (n == 32) ? ~SubsetMask{0} : ((SubsetMask{1} << n) - 1); }

// Pairwise relative result, ordered W > T > L, negation by arithmetic sign flip.
enum class Rel : std::int8_t { L = -1, T = 0, W = 1 };

inline Rel negated(Rel r) { return static_cast<Rel>(-static_cast<int>(r)); }
inline int rel_int(Rel r) { return static_cast<int>(r); }
inline char rel_char(Rel r) { return r == Rel::W ? 'W' : (r == Rel::T ? 'T' : 'L'); }
Rel rel_from_char(char c);

inline Rel sign_of(long long x) { return x > 0 ? Rel::W : (x < 0 ? Rel::L : Rel::T); }
inline Rel sign_of(const Rational& x) { return sign_of(static_cast<long long>(sgn(x))); }

// One ballot on the Condorcet-cycle domain. cycle_index b in {1,2,3} names the
// ranking c_{b+1} > c_{b+2} > c_b (so b=3 is the natural order c1 > c2 > c3).
struct Ballot {
  int cycle_index = 3;

  // Position score: 2 = top, 1 = middle, 0 = bottom.
  int rank_of(Candidate c) const;
};

struct Election {
  int n = 0;
  std::vector<Ballot> ballots;  // ballots[v-1] is voter v

  // Voters whose ballot has the given cycle_index, as a mask.
  SubsetMask voters_with_cycle(int b) const;
};

// Election string: one digit 1-3 per voter, voter v at position v-1.
Election election_parse(const std::string& s);
std::string election_str(const Election& e);

// Per-voter rank differences r(c_i) - r(c_j) for one candidate pair.
struct RelativeElection {
  int n = 0;
  std::vector<std::int8_t> values;  // values[v-1] is voter v
};

// Ranking of the three candidates with ties: tiers listed best to worst,
// candidates inside a tier sorted by index.
struct WeakOrdering {
  std::vector<std::vector<Candidate>> tiers;

  Rel compare(Candidate i, Candidate j) const;  // W iff i ranked above j
  bool operator==(const WeakOrdering&) const = default;
  std::string str() const;  // e.g. "c1 > c2 = c3"
};

// Total function {subsets of voters} -> {W,T,L}, table indexed by mask.
struct SetFunctionWTL {
  int n = 0;
  std::vector<Rel> table;

  SetFunctionWTL() = default;
  explicit SetFunctionWTL(int n_voters, Rel fill = Rel::T);

  Rel operator()(SubsetMask u) const { return table[u]; }
  void set(SubsetMask u, Rel v) { table[u] = v; }
  std::size_t size() const { return table.size(); }
  bool operator==(const SetFunctionWTL&) const = default;
};

struct WeightVector {
  int n = 0;
  std::vector<Rational> w;  // w[v-1] is voter v's weight
};

WeightVector uniform_weights(int n, int value = 1);

// ---- operations ----

// pre: j = i±1 mod 3.
RelativeElection relative_election(const Election& e, Candidate i, Candidate j);

// Voters with value -2; pre: all values in {1,-2} (the A_{i,i+1} orientation).
SubsetMask zeta(const RelativeElection& a);

// Inverse: value 1 off U, -2 on U.
RelativeElection zeta_inv(SubsetMask u, int n);

// A 3-multiset over {W,T,L} admits a weak ordering iff it is one of
// {W,W,L}, {W,T,L}, {W,L,L}, {T,T,T}.
bool consistent_multiset(Rel a, Rel b, Rel c);

// Weighted pairwise margin sum_v a(v) * w_v.
Rational borda_margin(const RelativeElection& a, const WeightVector& w);
long long borda_margin(const RelativeElection& a);  // unit weights

struct TripleViolation {
  SubsetMask v1 = 0, v2 = 0, v3 = 0;  // ordered partition with inconsistent values
};

// Scans all 3^n ordered partitions (V1,V2,V3) of {1..n}; nullopt means
// (g,g,g) is consistent, otherwise the first violation found.
std::optional<TripleViolation> check_triple_consistency(const SetFunctionWTL& g);

struct ConsistencyError : std::runtime_error {
  TripleViolation witness;
  explicit ConsistencyError(const TripleViolation& w);
};

// Applies the set-function rule (g,g,g): pairwise result for (c_i, c_{i+1})
// is g(V_i) with V_i the voters ranking c_i last. Throws ConsistencyError
// if the three results admit no weak ordering.
WeakOrdering evaluate_swf(const SetFunctionWTL& g, const Election& e);

// Weighted Borda: rank candidates by total positional score.
WeakOrdering borda_swf(const WeightVector& w, const Election& e);

// The three unweighted relative Borda forms as set functions:
// s=+1: W/T/L as n-3|U| is >0/=0/<0; s=-1 mirrored; s=0 all ties.
SetFunctionWTL borda_form(int n, int s);

}  // namespace swf
