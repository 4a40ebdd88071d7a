#pragma once

#include <optional>
#include <string>
#include <vector>

#include "swf/domain.hpp"
#include "swf/linalg.hpp"

namespace swf {

// The t-slice of {1..n}: all t-subsets, masks ascending.
struct Slice {
  int n = 0, t = 0;
  std::vector<SubsetMask> masks;
  std::vector<std::int32_t> index;  // mask -> position, -1 off slice

  int pos(SubsetMask u) const { return index[u]; }
};

Slice make_slice(int n, int t);

// Rational-valued function on a slice; Boolean embeds as {0,1}, WTL as
// {+1,0,-1} (embedding is per caller, values are plain rationals).
struct SliceFunction {
  Slice slice;
  std::vector<Rational> values;  // aligned with slice.masks
};

SliceFunction slice_indicator(const Slice& s, const std::vector<SubsetMask>& ones);

// Eigenvalue of the uniform-replacement operator on E_d for the k-slice of
// {1..3k}, via the alternating recursion from d-1.
Rational alpha(int k, int d);

// Uniform-replacement transition matrix on the k-slice of {1..3k}:
// entry (x,y) = 1/C(2k,k) iff x,y disjoint. pre: k <= 4.
RatMatrix replacement_matrix(int k);

// <g, T_R g> with x uniform on the slice, y a uniform disjoint replacement.
Rational stab_r(const SliceFunction& g);

// Distribution of value triples over ordered partitions of {1..3k} into
// three k-sets, for a WTL-valued slice function.
struct TripleStats {
  Rational p_w, p_t, p_l;  // single-draw value probabilities
  Rational b;              // p_w - p_l
  // multiset class probabilities
  Rational p_www, p_lll, p_wwt, p_llt, p_wtt, p_ltt, p_ttt;
  Rational e_weighted;  // p_www + p_lll + p_wwt/2 + p_llt/2 + p_wtt/6 + p_ltt/6
  Rational p_inconsistent;  // sum of the six non-TTT classes above
  Rational prob_same;       // all three values equal
};

TripleStats prob_same(const SliceFunction& g);  // values must be in {+1,0,-1}

// Equal conditional means E[g(x) | v in x] across voters.
bool check_egalitarian(const SliceFunction& g);
// WTL version: the W- and L-indicators must each be egalitarian.
bool check_egalitarian_wtl(const SliceFunction& g);

// Squared projection weights onto the eigenspaces E_0..E_k, recovered from
// the moment sequence <g, T_R^j g> by a Vandermonde solve in the alpha_d.
struct WeightProfile {
  std::vector<Rational> w;  // w[d] = W^(d)[g]
};

WeightProfile harmonic_weights(const SliceFunction& g);  // pre: k <= 4

// Canonical degree-d harmonic (x_1-x_2)(x_3-x_4)...(x_{2d-1}-x_{2d}).
std::vector<Rational> chi_canonical(const Slice& s, int d);

// Closed-form bounds.
Rational bound_prob_same(const Rational& p);        // (8 - 27p + 27p^2)/8
Rational bound_stab_lower(const Rational& p);       // p^2 - (p - p^2)/8
Rational bound_stab_upper(const Rational& p);       // p^2 + (p - p^2)/4
Rational bound_wtl(const Rational& p_t, const Rational& b);  // ((1-p_t)(5-3p_t) + 27 b^2)/32

enum class ScanMode { Exhaustive, InvariantOnly };

struct SliceFunctionRecord {
  // Exhaustive mode: W/L indicator words over slice positions. Invariant
  // mode: id_w is the orbit-assignment code, id_l unused.
  std::uint64_t id_w = 0, id_l = 0;
  Rational p, stab, prob_a, bound, slack;
};

struct SliceBoundsReport {
  int n = 0, k = 0;
  ScanMode mode = ScanMode::Exhaustive;
  long long boolean_scanned = 0, boolean_egalitarian = 0;
  long long wtl_scanned = 0, wtl_egalitarian = 0;
  long long violations = 0;
  std::vector<SliceFunctionRecord> violating;   // expected empty
  std::optional<Rational> min_slack_prob;       // min prob_same - bound
  std::optional<Rational> min_slack_stab_lo;    // min stab - lower bound
  std::optional<Rational> min_slack_stab_hi;    // min upper bound - stab
  std::optional<Rational> min_slack_wtl;        // min E - WTL bound
  std::vector<SliceFunctionRecord> records;     // per-function, may be truncated
  bool records_truncated = false;
};

// Scans Boolean and WTL functions on the k-slice of {1..n}, n = 3k, filtered
// to egalitarian ones, and checks the three closed-form bounds. Exhaustive
// mode needs k <= 2; invariant-only scans Z_n-orbit-constant functions.
SliceBoundsReport verify_slice_bounds(int n, ScanMode mode, std::size_t record_cap = 10000);

struct BordaCubeResult {
  bool ok = false;
  Rel below = Rel::T;  // X: constant value under the k-slice (negated above)
  std::optional<SubsetMask> witness;
};

// For consistent g on {1..3k} whose k-slice restriction is egalitarian:
// verifies g is T on the k-slice, X below it and -X above.
BordaCubeResult check_borda_cube(const SetFunctionWTL& g);

}  // namespace swf
