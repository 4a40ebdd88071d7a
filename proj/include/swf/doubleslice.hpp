#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "swf/domain.hpp"
#include "swf/linalg.hpp"
#include "swf/slice.hpp"

namespace swf {

// Double-slice setup for n = 3k+1 or 3k+2: three part sizes k1, k2, k3 with
// k2 = k3; the slice roles are S_1 = S_{k1}, S_2 = S_3 = S_{k2}.
struct DoubleSliceConfig {
  int n = 0, k = 0, k1 = 0, k2 = 0;

  static DoubleSliceConfig for_n(int n);
};

// Function on S_k u S_{k+1}; role-1 values first. Inner products use the
// slice-picking measure (role-1 slice with probability 1/3, role-2 with 2/3,
// uniform within a slice).
struct DoubleSliceFunction {
  DoubleSliceConfig cfg;
  Slice s1, s2;               // S_{k1} and S_{k2}
  std::vector<Rational> v1, v2;
};

DoubleSliceFunction make_double_slice(const DoubleSliceConfig& cfg);

// Eigenvalue of T_{ki,kj} on the degree-d harmonics:
// (-1)^d C(n-ki-d, kj-d) / C(n-ki, kj).
Rational alpha_cross(const DoubleSliceConfig& cfg, int ki, int kj, int d);

// Cross-replacement transition matrix, rows over S_ka, columns over S_kb,
// entry 1/C(n-ka, kb) on disjoint pairs.
RatMatrix cross_matrix(const DoubleSliceConfig& cfg, int ka, int kb);

// Conjugate pair (s ± t*sqrt(u))/4 with exact rational s,t and square-free
// integer u; u <= 1 or t = 0 collapses to a rational pair.
struct SurdEigen {
  Rational s, t;
  Integer u = 0;

  bool is_rational() const { return sgn(t) == 0 || u <= 1; }
  Rational plus_value() const;   // pre: is_rational()
  Rational minus_value() const;
};

struct LambdaEigen {
  int d = 0;
  bool is_pair = false;
  SurdEigen pair;     // d <= k
  Rational single;    // d = k+1: 0 (n=3k+1) or alpha_{k+1}^{(k+1,k+1)}/2
};

// pre: d <= k+1.
LambdaEigen lambda_eigen(const DoubleSliceConfig& cfg, int d);

// q_d(x) = 2x^2 - alpha_d^{(k2,k2)} x - alpha_d^{(k1,k2)} alpha_d^{(k2,k1)};
// the lambda_d pair are its roots.
Rational lambda_quadratic_at(const DoubleSliceConfig& cfg, int d, const Rational& x);

// Plugs (s + sign*t*sqrt(u))/4 into q_d; both components must vanish.
struct SurdResidual {
  Rational rational_part, surd_part;
  bool zero() const { return sgn(rational_part) == 0 && sgn(surd_part) == 0; }
};
SurdResidual lambda_residual(const DoubleSliceConfig& cfg, int d, const SurdEigen& e, int sign);

struct StabBoundRow {
  int k = 0, parity = 0, d = 0;     // parity: n = 3k+parity
  Rational q_at_bound;              // q_d evaluated at the tested lower point
  bool minus_ok = false;            // lambda_d^- above the tested lower bound
  bool plus_below_quarter = false;  // side check lambda_d^+ < 1/4
};

struct StabBoundsReport {
  int k_min = 0, k_max = 0;
  long long violations = 0;
  std::vector<StabBoundRow> rows;         // d-rows for both parities
  std::vector<StabBoundRow> tail_rows;    // lambda_{k+1} > -1/8 (q_at_bound holds lambda itself)
  bool ok() const { return violations == 0; }
};

// Sign tests of q_d at -1/8 - 1/(6k) (n=3k+1) and -1/8 (n=3k+2) for
// 2 <= d <= k, plus the rational tail eigenvalue; no irrational evaluation.
StabBoundsReport verify_stab12_bounds(int k_min, int k_max);

struct TOperatorReport {
  int n = 0;
  bool self_adjoint = false;       // weighted matrix identity + random pairs
  bool stab_identity = false;      // Stab = (Stab22 + 2*Stab12)/3 on random g
  bool top_harmonic_ok = false;    // T chi^{(k+1)}: annihilated (3k+1) or scaled by lambda_{k+1} (3k+2)
  int rational_eigvecs_checked = 0;
  bool ok() const { return self_adjoint && stab_identity && top_harmonic_ok; }
};

// Full weighted T matrix over S_k u S_{k+1}. pre: n <= 10.
TOperatorReport t_operator_check(const DoubleSliceConfig& cfg);

// Boolean shadow of a WTL rule: 1 on W, 0 on L; ties resolve by side of n/3.
// pre: n % 3 != 0.
DoubleSliceFunction gprime_transform(const SetFunctionWTL& g);

// Probability over ordered (k1,k2,k3)-partitions that all three values agree.
Rational prob_monochromatic_D(const DoubleSliceFunction& g);

struct TwoSliceStats {
  Rational p1, p2, p, q;  // slice means, p = (p1+2p2)/3, q = p1-p2
  Rational stab;          // (Stab_{k2,k2} + 2 Stab_{k1,k2})/3
};

TwoSliceStats two_slice_stats(const DoubleSliceFunction& g);

struct TwoSliceRecord {
  std::uint64_t orbit_code = 0;
  Rational p1, p2;
  bool dichotomy_ok = false;
  bool gap_ok = false;  // (p1-1/2)^2 > 25/108; always true-by-skip for n=3k+1
};

struct TwoSliceReport {
  int n = 0;
  int orbit_count = 0;
  long long nodes_visited = 0;
  std::vector<TwoSliceRecord> qualifying;
  long long violations = 0;
  bool identity_ok = true;     // 1 - 3p + 3 Stab = 0 on every qualifying g
  bool egalitarian_ok = true;  // both restrictions, every qualifying g
  bool projection_ok = true;   // W^{=0,-} = 2q^2/9 (checked for n <= 8)
  bool recheck_ok = true;      // prob_monochromatic_D re-verified = 0
};

// Enumerates Z_n-invariant Boolean functions on the double slice with no
// monochromatic (k1,k2,k3)-partition (DFS over orbits with pruning) and
// checks the dichotomy claims. pre: n in {7, 8, 10, 11}.
TwoSliceReport verify_two_slice(int n);

struct MonotoneProfile {
  std::vector<Rational> q, r;  // index i = slice cardinality, 0..n
};

// pre: check_pr(g). Asserts both sequences non-increasing and q_i <= r_i.
MonotoneProfile monotone_profile(const SetFunctionWTL& g);

struct AgreementResult {
  long long d = 0;
  int slice_card = 0;      // |U| realizing the margin
  Rational prob;
  bool meets_threshold = false;  // prob >= 5/(3*sqrt(3)), compared via 27*prob^2 >= 25
};

// Probability over uniform relative elections with margin d that the
// pairwise result is phi(d) or a tie. pre: |d| > 1 and d realizable.
AgreementResult corollary_agreement(const SetFunctionWTL& g, long long d);

}  // namespace swf
