#include <doctest.h>

#include <algorithm>
#include <random>

#include "swf/slice.hpp"

using namespace swf;

namespace {

Integer factorial(int n) {
  Integer f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
  return f;
}

// closed form (-1)^d (2k-d)! k! / ((2k)! (k-d)!), independent of the
// recursion used by alpha()
Rational alpha_closed(int k, int d) {
  Integer num = factorial(2 * k - d) * factorial(k);
  Integer den = factorial(2 * k) * factorial(k - d);
  Rational r(num, den);
  r.canonicalize();
  return (d & 1) ? -r : r;
}

SliceFunction boolean_indicator(const Slice& s, const std::vector<SubsetMask>& ones) {
  SliceFunction f{s, std::vector<Rational>(s.masks.size(), Rational(0))};
  for (SubsetMask m : ones) f.values[s.pos(m)] = 1;
  return f;
}

SliceFunction wtl_from_boolean(const SliceFunction& b) {
  SliceFunction f = b;
  for (auto& v : f.values) v = v == 1 ? Rational(1) : Rational(-1);
  return f;
}

const std::vector<SubsetMask> kAdjacentPairs = {0b000011, 0b000110, 0b001100,
                                                0b011000, 0b110000, 0b100001};

}  // namespace

TEST_CASE("slice layout") {
  Slice s = make_slice(6, 2);
  CHECK(s.masks.size() == 15);
  CHECK(std::is_sorted(s.masks.begin(), s.masks.end()));
  for (std::size_t i = 0; i < s.masks.size(); ++i) {
    CHECK(popcount(s.masks[i]) == 2);
    CHECK(s.pos(s.masks[i]) == static_cast<int>(i));
  }
  CHECK(s.pos(0b000101) >= 0);
  CHECK(s.pos(0b000111) == -1);
  CHECK(make_slice(9, 3).masks.size() == 84);
  CHECK(make_slice(4, 0).masks.size() == 1);
}

TEST_CASE("alpha recursion matches the closed form up to k = 50") {
  for (int k = 1; k <= 50; ++k)
    for (int d = 0; d <= k; ++d) CHECK(alpha(k, d) == alpha_closed(k, d));
}

TEST_CASE("alpha frozen values") {
  CHECK(alpha(2, 0) == 1);
  CHECK(alpha(2, 1) == Rational(-1, 2));
  CHECK(alpha(2, 2) == Rational(1, 6));
  CHECK(alpha(4, 2) == Rational(3, 14));
  CHECK(alpha(4, 3) == Rational(-1, 14));
  CHECK(alpha(4, 4) == Rational(1, 70));
}

TEST_CASE("alpha alternates and obeys the dyadic bounds") {
  for (int k = 1; k <= 50; ++k)
    for (int d = 0; d <= k; ++d) {
      Rational a = alpha(k, d);
      Integer den = Integer(1) << (2 * (d / 2));
      Rational pow4(Integer(1), den);
      pow4.canonicalize();
      if (d % 2 == 0) {
        CHECK(a >= 0);
        CHECK(a <= pow4);
      } else {
        CHECK(a <= 0);
        CHECK(a >= -pow4 / 2);
      }
    }
}

TEST_CASE("replacement operator scales canonical harmonics by alpha") {
  for (int k : {1, 2, 3}) {
    Slice s = make_slice(3 * k, k);
    RatMatrix t = replacement_matrix(k);
    for (int d = 0; d <= k; ++d) {
      std::vector<Rational> chi = chi_canonical(s, d);
      bool nonzero = false;
      for (const Rational& v : chi) nonzero |= sgn(v) != 0;
      CHECK(nonzero);
      std::vector<Rational> img = mat_apply(t, chi);
      Rational a = alpha(k, d);
      for (std::size_t i = 0; i < chi.size(); ++i) CHECK(img[i] == a * chi[i]);
    }
  }
}

TEST_CASE("canonical harmonics of different degrees are orthogonal") {
  Slice s = make_slice(6, 2);
  for (int d = 0; d <= 2; ++d)
    for (int e = d + 1; e <= 2; ++e) {
      std::vector<Rational> cd = chi_canonical(s, d), ce = chi_canonical(s, e);
      Rational dot = 0;
      for (std::size_t i = 0; i < cd.size(); ++i) dot += cd[i] * ce[i];
      CHECK(sgn(dot) == 0);
    }
}

TEST_CASE("stab_r equals the quadratic form of the replacement matrix") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> num(-5, 5), den(1, 7);
  for (int k : {1, 2}) {
    Slice s = make_slice(3 * k, k);
    RatMatrix t = replacement_matrix(k);
    for (int it = 0; it < 20; ++it) {
      SliceFunction g{s, {}};
      for (std::size_t i = 0; i < s.masks.size(); ++i) {
        Rational q(num(rng), den(rng));
        q.canonicalize();
        g.values.push_back(q);
      }
      std::vector<Rational> img = mat_apply(t, g.values);
      Rational quad = 0;
      for (std::size_t i = 0; i < img.size(); ++i) quad += g.values[i] * img[i];
      quad /= static_cast<long>(s.masks.size());
      CHECK(stab_r(g) == quad);
    }
  }
}

TEST_CASE("triple statistics against a direct partition enumeration") {
  Slice s = make_slice(6, 2);
  SliceFunction g = wtl_from_boolean(boolean_indicator(s, kAdjacentPairs));

  // oracle: walk all ordered triples of disjoint slice masks
  long long total = 0, same = 0, www = 0, lll = 0;
  for (SubsetMask a : s.masks)
    for (SubsetMask b : s.masks) {
      if (a & b) continue;
      SubsetMask c = full_mask(6) & ~a & ~b;
      REQUIRE(s.pos(c) >= 0);
      ++total;
      Rational va = g.values[s.pos(a)], vb = g.values[s.pos(b)], vc = g.values[s.pos(c)];
      same += va == vb && vb == vc;
      www += va == 1 && vb == 1 && vc == 1;
      lll += va == -1 && vb == -1 && vc == -1;
    }
  CHECK(total == 90);
  CHECK(same == 36);

  TripleStats st = prob_same(g);
  CHECK(st.prob_same == Rational(2, 5));
  CHECK(st.p_w == Rational(2, 5));
  CHECK(st.p_t == 0);
  CHECK(st.p_l == Rational(3, 5));
  CHECK(st.b == Rational(-1, 5));
  Rational frac_www(static_cast<long>(www), static_cast<long>(total));
  Rational frac_lll(static_cast<long>(lll), static_cast<long>(total));
  frac_www.canonicalize();
  frac_lll.canonicalize();
  CHECK(st.p_www == frac_www);
  CHECK(st.p_lll == frac_lll);
  CHECK(st.p_www + st.p_lll == st.prob_same);
  CHECK(st.p_wwt == 0);
  CHECK(st.e_weighted == st.p_www + st.p_lll);
  CHECK(st.p_inconsistent == Rational(2, 5));
  CHECK(st.p_ttt == 0);

  // Boolean embedding: Prob(all equal) = 1 - 3p + 3 Stab
  SliceFunction ind = boolean_indicator(s, kAdjacentPairs);
  CHECK(stab_r(ind) == Rational(1, 5));
  CHECK(st.prob_same == 1 - 3 * Rational(2, 5) + 3 * stab_r(ind));
}

TEST_CASE("sum of class probabilities is 1") {
  Slice s = make_slice(6, 2);
  std::mt19937 rng(42);
  for (int it = 0; it < 10; ++it) {
    SliceFunction g{s, {}};
    for (std::size_t i = 0; i < s.masks.size(); ++i)
      g.values.push_back(Rational(static_cast<int>(rng() % 3) - 1));
    TripleStats st = prob_same(g);
    // six inconsistent classes + three consistent non-TTT classes + TTT
    CHECK(st.p_inconsistent ==
          st.p_www + st.p_lll + st.p_wwt + st.p_llt + st.p_wtt + st.p_ltt);
    CHECK(st.p_w + st.p_t + st.p_l == 1);
  }
}

TEST_CASE("egalitarian slice functions") {
  Slice s = make_slice(6, 2);
  CHECK(check_egalitarian(boolean_indicator(s, kAdjacentPairs)));
  CHECK_FALSE(check_egalitarian(boolean_indicator(s, {0b000011})));
  SliceFunction tie{s, std::vector<Rational>(15, Rational(0))};
  CHECK(check_egalitarian(tie));
  CHECK(check_egalitarian_wtl(tie));
  // W-part egalitarian but L-part not: W on one full orbit, L on one mask
  SliceFunction mixed{s, std::vector<Rational>(15, Rational(0))};
  for (SubsetMask m : kAdjacentPairs) mixed.values[s.pos(m)] = 1;
  mixed.values[s.pos(0b000101)] = -1;
  CHECK_FALSE(check_egalitarian_wtl(mixed));
}

TEST_CASE("harmonic weights: moments, positivity, degree-1 iff egalitarian") {
  Slice s = make_slice(6, 2);
  for (unsigned code = 0; code < (1u << 15); ++code) {
    SliceFunction g{s, {}};
    for (int i = 0; i < 15; ++i) g.values.push_back(Rational((code >> i) & 1u));
    WeightProfile w = harmonic_weights(g);
    REQUIRE(w.w.size() == 3);
    bool egal = check_egalitarian(g);
    CHECK((sgn(w.w[1]) == 0) == egal);
    if (code % 97 == 0) {  // full moment identities on a sample
      for (const Rational& wd : w.w) CHECK(wd >= 0);
      Rational norm = 0;
      for (const Rational& v : g.values) norm += v * v;
      norm /= 15;
      CHECK(w.w[0] + w.w[1] + w.w[2] == norm);
      CHECK(alpha(2, 0) * w.w[0] + alpha(2, 1) * w.w[1] + alpha(2, 2) * w.w[2] == stab_r(g));
    }
  }
}

TEST_CASE("closed-form bounds") {
  CHECK(bound_prob_same(Rational(1, 2)) == Rational(5, 32));
  std::mt19937 rng(3);
  for (int it = 0; it < 50; ++it) {
    Rational p(static_cast<int>(rng() % 100), 100);
    p.canonicalize();
    CHECK(bound_prob_same(p) - Rational(5, 32) ==
          Rational(27, 8) * (p - Rational(1, 2)) * (p - Rational(1, 2)));
    CHECK(bound_stab_lower(p) == p * p - (p - p * p) / 8);
    CHECK(bound_stab_upper(p) == p * p + (p - p * p) / 4);
    CHECK(bound_stab_lower(p) <= bound_stab_upper(p));
  }
  CHECK(bound_wtl(Rational(1), Rational(0)) == 0);
  CHECK(bound_wtl(Rational(0), Rational(1)) == 1);
  CHECK(bound_wtl(Rational(0), Rational(0)) == Rational(5, 32));
}

TEST_CASE("exhaustive bound scan at n=3") {
  SliceBoundsReport rep = verify_slice_bounds(3, ScanMode::Exhaustive);
  CHECK(rep.k == 1);
  CHECK(rep.boolean_scanned == 8);
  CHECK(rep.boolean_egalitarian == 2);
  CHECK(rep.wtl_scanned == 27);
  CHECK(rep.wtl_egalitarian == 3);
  CHECK(rep.violations == 0);
  CHECK(rep.violating.empty());
  REQUIRE(rep.min_slack_prob.has_value());
  CHECK(*rep.min_slack_prob == 0);
  CHECK(*rep.min_slack_wtl == 0);
}

TEST_CASE("exhaustive bound scan at n=6 with independent egalitarian counts") {
  SliceBoundsReport rep = verify_slice_bounds(6, ScanMode::Exhaustive);
  CHECK(rep.boolean_scanned == 32768);
  CHECK(rep.wtl_scanned == 14348907);
  CHECK(rep.violations == 0);
  CHECK(*rep.min_slack_prob == 0);
  CHECK(*rep.min_slack_stab_lo == 0);
  CHECK(*rep.min_slack_stab_hi == 0);
  CHECK(*rep.min_slack_wtl == 0);

  // oracle: per-voter conditional sums, done longhand
  Slice s = make_slice(6, 2);
  long long egal_bool = 0;
  for (unsigned code = 0; code < (1u << 15); ++code) {
    int sums[6] = {0, 0, 0, 0, 0, 0};
    for (int i = 0; i < 15; ++i)
      if ((code >> i) & 1u)
        for (int v = 1; v <= 6; ++v)
          if (contains(s.masks[i], v)) ++sums[v - 1];
    bool egal = true;
    for (int v = 1; v < 6; ++v) egal &= sums[v] == sums[0];
    egal_bool += egal;
  }
  CHECK(rep.boolean_egalitarian == egal_bool);
  CHECK(egal_bool == 172);

  long long egal_wtl = 0;
  std::vector<int> trit(15, 0);
  for (long long code = 0; code < 14348907; ++code) {
    int wsum[6] = {0}, lsum[6] = {0};
    for (int i = 0; i < 15; ++i) {
      if (trit[i] == 0) continue;
      for (int v = 1; v <= 6; ++v)
        if (contains(s.masks[i], v)) ++(trit[i] == 1 ? wsum : lsum)[v - 1];
    }
    bool egal = true;
    for (int v = 1; v < 6; ++v) egal &= wsum[v] == wsum[0] && lsum[v] == lsum[0];
    egal_wtl += egal;
    for (int i = 0; i < 15; ++i) {
      if (++trit[i] < 3) break;
      trit[i] = 0;
    }
  }
  CHECK(rep.wtl_egalitarian == egal_wtl);
  CHECK(egal_wtl == 1773);
}

TEST_CASE("the adjacent-pair indicator shows up in the exhaustive records") {
  SliceBoundsReport rep = verify_slice_bounds(6, ScanMode::Exhaustive);
  Slice s = make_slice(6, 2);
  std::uint64_t want = 0;
  for (SubsetMask m : kAdjacentPairs) want |= std::uint64_t{1} << s.pos(m);
  bool found = false;
  for (const auto& rec : rep.records)
    if (rec.id_w == want && rec.id_l == 0) {
      found = true;
      CHECK(rec.p == Rational(2, 5));
      CHECK(rec.stab == Rational(1, 5));
      CHECK(rec.prob_a == Rational(2, 5));
      CHECK(rec.bound == bound_prob_same(Rational(2, 5)));
      CHECK(rec.slack == rec.prob_a - rec.bound);
      CHECK(rec.slack >= 0);
    }
  CHECK(found);
}

TEST_CASE("invariant-only scans") {
  SliceBoundsReport r6 = verify_slice_bounds(6, ScanMode::InvariantOnly);
  CHECK(r6.boolean_scanned == 8);        // 3 orbits on the 2-slice of Z_6
  CHECK(r6.boolean_egalitarian == 8);    // invariance forces egalitarian
  CHECK(r6.wtl_scanned == 27);
  CHECK(r6.wtl_egalitarian == 27);
  CHECK(r6.violations == 0);

  SliceBoundsReport r9 = verify_slice_bounds(9, ScanMode::InvariantOnly);
  CHECK(r9.boolean_scanned == 1024);     // 10 orbits on the 3-slice of Z_9
  CHECK(r9.wtl_scanned == 59049);
  CHECK(r9.boolean_egalitarian == 1024);
  CHECK(r9.violations == 0);
}

TEST_CASE("scan budgets") {
  CHECK_THROWS_AS(verify_slice_bounds(9, ScanMode::Exhaustive), BudgetError);
  CHECK_THROWS_AS(verify_slice_bounds(12, ScanMode::InvariantOnly), BudgetError);
  CHECK_THROWS_AS(verify_slice_bounds(7, ScanMode::Exhaustive), std::invalid_argument);
}

TEST_CASE("borda cube form") {
  for (int sgn : {1, -1, 0}) {
    BordaCubeResult res = check_borda_cube(borda_form(6, sgn));
    CHECK(res.ok);
    CHECK(res.below == sign_of(static_cast<long long>(sgn)));
  }
  // consistent but with a non-egalitarian middle slice: rejected up front
  SetFunctionWTL g = borda_form(6, 1);
  for (SubsetMask u = 0; u <= full_mask(6); ++u)
    if (popcount(u) == 2) g.set(u, contains(u, 1) ? Rel::W : Rel::L);
  REQUIRE_FALSE(check_triple_consistency(g).has_value());
  CHECK_THROWS_AS(check_borda_cube(g), std::invalid_argument);
  // inconsistent input is surfaced as such
  CHECK_THROWS_AS(check_borda_cube(SetFunctionWTL(6, Rel::W)), ConsistencyError);
}
