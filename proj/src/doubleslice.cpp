#include "swf/doubleslice.hpp"

#include <algorithm>

#include "swf/axioms.hpp"
#include <array>
#include <random>
#include <set>

namespace swf {

DoubleSliceConfig DoubleSliceConfig::for_n(int n) {
  if (n < 4 || n > kMaxVoters || n % 3 == 0)
    throw std::invalid_argument("double slice needs 4 <= n <= 24 with n % 3 != 0");
  DoubleSliceConfig cfg;
  cfg.n = n;
  cfg.k = n / 3;
  cfg.k1 = (n % 3 == 1) ? cfg.k + 1 : cfg.k;
  cfg.k2 = (n - cfg.k1) / 2;
  return cfg;
}

DoubleSliceFunction make_double_slice(const DoubleSliceConfig& cfg) {
  DoubleSliceFunction f;
  f.cfg = cfg;
  f.s1 = make_slice(cfg.n, cfg.k1);
  f.s2 = make_slice(cfg.n, cfg.k2);
  f.v1.assign(f.s1.masks.size(), Rational(0));
  f.v2.assign(f.s2.masks.size(), Rational(0));
  return f;
}

Rational alpha_cross(const DoubleSliceConfig& cfg, int ki, int kj, int d) {
  if (d < 0 || d > kj || ki + kj > cfg.n)
    throw std::invalid_argument("alpha_cross needs 0 <= d <= kj and ki+kj <= n");
  Rational r(binomial(cfg.n - ki - d, kj - d), binomial(cfg.n - ki, kj));
  r.canonicalize();
  return (d & 1) ? -r : r;
}

RatMatrix cross_matrix(const DoubleSliceConfig& cfg, int ka, int kb) {
  if (cfg.n > 12) throw BudgetError("scale unsupported: cross_matrix needs n <= 12");
  Slice sa = make_slice(cfg.n, ka), sb = make_slice(cfg.n, kb);
  RatMatrix m(static_cast<int>(sa.masks.size()), static_cast<int>(sb.masks.size()));
  Rational w(1, binomial(cfg.n - ka, kb));
  w.canonicalize();
  for (int r = 0; r < m.rows; ++r)
    for (int c = 0; c < m.cols; ++c)
      if ((sa.masks[r] & sb.masks[c]) == 0) m.at(r, c) = w;
  return m;
}

Rational SurdEigen::plus_value() const {
  if (!is_rational()) throw std::logic_error("irrational eigenvalue");
  return (s + (u == 1 ? t : Rational(0))) / 4;
}

Rational SurdEigen::minus_value() const {
  if (!is_rational()) throw std::logic_error("irrational eigenvalue");
  return (s - (u == 1 ? t : Rational(0))) / 4;
}

namespace {

const std::vector<unsigned>& small_primes() {
  static const std::vector<unsigned> primes = [] {
    std::vector<unsigned> out;
    std::vector<bool> sieve(10001, true);
    for (unsigned p = 2; p <= 10000; ++p) {
      if (!sieve[p]) continue;
      out.push_back(p);
      for (unsigned q = p * p; q <= 10000; q += p) sieve[q] = false;
    }
    return out;
  }();
  return primes;
}

// m = root^2 * rest with rest square-free (small primes extracted, then a
// perfect-square test on the remainder).
void split_square(const Integer& m, Integer& root, Integer& rest) {
  root = 1;
  rest = 1;
  Integer rem = m;
  for (unsigned p : small_primes()) {
    if (Integer(p) * p > rem) break;
    int e = 0;
    while (mpz_divisible_ui_p(rem.get_mpz_t(), p)) {
      mpz_divexact_ui(rem.get_mpz_t(), rem.get_mpz_t(), p);
      ++e;
    }
    for (int i = 0; i < e / 2; ++i) root *= p;
    if (e & 1) rest *= p;
  }
  if (rem > 1) {
    if (mpz_perfect_square_p(rem.get_mpz_t())) {
      Integer s;
      mpz_sqrt(s.get_mpz_t(), rem.get_mpz_t());
      root *= s;
    } else {
      rest *= rem;
    }
  }
}

// lambda quadratic coefficients: q(x) = 2x^2 - a*x - b.
void lambda_coeffs(const DoubleSliceConfig& cfg, int d, Rational& a, Rational& b) {
  a = alpha_cross(cfg, cfg.k2, cfg.k2, d);
  b = alpha_cross(cfg, cfg.k1, cfg.k2, d) * alpha_cross(cfg, cfg.k2, cfg.k1, d);
}

}  // namespace

Rational lambda_quadratic_at(const DoubleSliceConfig& cfg, int d, const Rational& x) {
  Rational a, b;
  lambda_coeffs(cfg, d, a, b);
  return 2 * x * x - a * x - b;
}

LambdaEigen lambda_eigen(const DoubleSliceConfig& cfg, int d) {
  if (d < 0 || d > cfg.k + 1) throw std::invalid_argument("lambda_eigen needs 0 <= d <= k+1");
  LambdaEigen out;
  out.d = d;
  if (d == cfg.k + 1) {
    out.is_pair = false;
    out.single = (cfg.n % 3 == 1)
                     ? Rational(0)
                     : alpha_cross(cfg, cfg.k + 1, cfg.k + 1, cfg.k + 1) / 2;
    return out;
  }
  out.is_pair = true;
  Rational a, b;
  lambda_coeffs(cfg, d, a, b);
  Rational disc = a * a + 8 * b;  // roots (a ± sqrt(disc))/4
  if (sgn(disc) < 0) throw std::logic_error("negative discriminant");
  disc.canonicalize();
  Integer prod = disc.get_num() * disc.get_den();
  Integer root, rest;
  split_square(prod, root, rest);
  out.pair.s = a;
  out.pair.u = rest;
  if (sgn(disc) == 0) {
    out.pair.t = 0;
    out.pair.u = 0;
  } else {
    out.pair.t = Rational(root, disc.get_den());
    out.pair.t.canonicalize();
  }
  return out;
}

SurdResidual lambda_residual(const DoubleSliceConfig& cfg, int d, const SurdEigen& e, int sign) {
  Rational a, b;
  lambda_coeffs(cfg, d, a, b);
  Rational t = sign >= 0 ? e.t : -e.t;
  SurdResidual res;
  res.rational_part = (e.s * e.s + e.t * e.t * Rational(e.u)) / 8 - a * e.s / 4 - b;
  res.surd_part = t * (e.s - a) / 4;
  return res;
}

StabBoundsReport verify_stab12_bounds(int k_min, int k_max) {
  if (k_min < 2 || k_min > k_max)
    throw std::invalid_argument("verify_stab12_bounds needs 2 <= k_min <= k_max");
  StabBoundsReport rep;
  rep.k_min = k_min;
  rep.k_max = k_max;
  const Rational quarter(1, 4), neg_eighth(-1, 8);
  for (int k = k_min; k <= k_max; ++k) {
    for (int parity = 1; parity <= 2; ++parity) {
      DoubleSliceConfig cfg = DoubleSliceConfig{3 * k + parity, k,
                                                parity == 1 ? k + 1 : k, 0};
      cfg.k2 = (cfg.n - cfg.k1) / 2;
      // q is a positive quadratic with q(0) = -b < 0, so for x < 0:
      // q(x) > 0 iff x < lambda_d^-, and q(1/4) > 0 iff lambda_d^+ < 1/4.
      Rational low = parity == 1 ? neg_eighth - Rational(1, 6 * k) : neg_eighth;
      for (int d = 2; d <= k; ++d) {
        StabBoundRow row;
        row.k = k;
        row.parity = parity;
        row.d = d;
        row.q_at_bound = lambda_quadratic_at(cfg, d, low);
        row.minus_ok = sgn(row.q_at_bound) > 0;
        row.plus_below_quarter = sgn(lambda_quadratic_at(cfg, d, quarter)) > 0;
        if (!row.minus_ok || !row.plus_below_quarter) ++rep.violations;
        rep.rows.push_back(std::move(row));
      }
      StabBoundRow tail;
      tail.k = k;
      tail.parity = parity;
      tail.d = k + 1;
      tail.q_at_bound = lambda_eigen(cfg, k + 1).single;
      tail.minus_ok = tail.q_at_bound > neg_eighth;
      tail.plus_below_quarter = tail.q_at_bound < quarter;
      if (!tail.minus_ok) ++rep.violations;
      rep.tail_rows.push_back(std::move(tail));
    }
  }
  return rep;
}

namespace {

Rational random_rational(std::mt19937& rng) {
  std::uniform_int_distribution<int> num(-9, 9), den(1, 9);
  Rational q(num(rng), den(rng));
  q.canonicalize();
  return q;
}

struct WeightedT {
  DoubleSliceConfig cfg;
  Slice s1, s2;
  int sz1 = 0, sz2 = 0, total = 0;
  RatMatrix t;                   // rows/cols: role-1 block then role-2 block
  std::vector<Rational> weight;  // sigma measure per element

  explicit WeightedT(const DoubleSliceConfig& c) : cfg(c) {
    s1 = make_slice(cfg.n, cfg.k1);
    s2 = make_slice(cfg.n, cfg.k2);
    sz1 = static_cast<int>(s1.masks.size());
    sz2 = static_cast<int>(s2.masks.size());
    total = sz1 + sz2;
    t = RatMatrix(total, total);
    RatMatrix b12 = cross_matrix(cfg, cfg.k1, cfg.k2);
    RatMatrix b21 = cross_matrix(cfg, cfg.k2, cfg.k1);
    RatMatrix b22 = cross_matrix(cfg, cfg.k2, cfg.k2);
    for (int r = 0; r < sz1; ++r)
      for (int c = 0; c < sz2; ++c) t.at(r, sz1 + c) = b12.at(r, c);
    for (int r = 0; r < sz2; ++r) {
      for (int c = 0; c < sz1; ++c) t.at(sz1 + r, c) = b21.at(r, c) / 2;
      for (int c = 0; c < sz2; ++c) t.at(sz1 + r, sz1 + c) = b22.at(r, c) / 2;
    }
    weight.assign(total, Rational(0));
    Rational w1(1, 3 * sz1), w2(2, 3 * sz2);
    w1.canonicalize();
    w2.canonicalize();
    for (int i = 0; i < sz1; ++i) weight[i] = w1;
    for (int i = 0; i < sz2; ++i) weight[sz1 + i] = w2;
  }

  Rational inner(const std::vector<Rational>& f, const std::vector<Rational>& g) const {
    Rational acc = 0;
    for (int i = 0; i < total; ++i)
      if (sgn(f[i]) != 0 && sgn(g[i]) != 0) acc += weight[i] * f[i] * g[i];
    return acc;
  }
};

// Direct disjoint-pair sums for the Stab pieces.
Rational stab_pair(const Slice& sa, const std::vector<Rational>& va, const Slice& sb,
                   const std::vector<Rational>& vb) {
  Rational acc = 0;
  for (std::size_t i = 0; i < sa.masks.size(); ++i) {
    if (sgn(va[i]) == 0) continue;
    for (std::size_t j = 0; j < sb.masks.size(); ++j)
      if ((sa.masks[i] & sb.masks[j]) == 0 && sgn(vb[j]) != 0) acc += va[i] * vb[j];
  }
  Rational denom(static_cast<long>(sa.masks.size()),  1);
  denom *= Rational(binomial(sa.n - sa.t, sb.t));
  return acc / denom;
}

}  // namespace

TOperatorReport t_operator_check(const DoubleSliceConfig& cfg) {
  if (cfg.n > 10) throw BudgetError("scale unsupported: t_operator_check needs n <= 10");
  WeightedT wt(cfg);
  TOperatorReport rep;
  rep.n = cfg.n;

  bool sa = true;
  for (int i = 0; i < wt.total && sa; ++i)
    for (int j = 0; j < wt.total && sa; ++j)
      sa = wt.weight[i] * wt.t.at(i, j) == wt.weight[j] * wt.t.at(j, i);
  std::mt19937 rng(20240817);
  for (int it = 0; it < 100 && sa; ++it) {
    std::vector<Rational> f(wt.total), g(wt.total);
    for (int i = 0; i < wt.total; ++i) {
      f[i] = random_rational(rng);
      g[i] = random_rational(rng);
    }
    sa = wt.inner(f, mat_apply(wt.t, g)) == wt.inner(mat_apply(wt.t, f), g);
  }
  rep.self_adjoint = sa;

  bool stab_ok = true;
  for (int it = 0; it < 20 && stab_ok; ++it) {
    DoubleSliceFunction g = make_double_slice(cfg);
    std::vector<Rational> flat(wt.total);
    for (int i = 0; i < wt.sz1; ++i) flat[i] = g.v1[i] = random_rational(rng);
    for (int i = 0; i < wt.sz2; ++i) flat[wt.sz1 + i] = g.v2[i] = random_rational(rng);
    Rational via_matrix = wt.inner(flat, mat_apply(wt.t, flat));
    Rational s22 = stab_pair(g.s2, g.v2, g.s2, g.v2);
    Rational s12 = stab_pair(g.s1, g.v1, g.s2, g.v2);
    stab_ok = via_matrix == (s22 + 2 * s12) / 3;
  }
  rep.stab_identity = stab_ok;

  // top-level harmonic: annihilated when n = 3k+1, scaled by lambda_{k+1}
  // when n = 3k+2
  const int d_top = cfg.k + 1;
  std::vector<Rational> chi(wt.total, Rational(0));
  if (cfg.n % 3 == 1) {
    auto c1 = chi_canonical(wt.s1, d_top);
    for (int i = 0; i < wt.sz1; ++i) chi[i] = c1[i];
  } else {
    auto c2 = chi_canonical(wt.s2, d_top);
    for (int i = 0; i < wt.sz2; ++i) chi[wt.sz1 + i] = c2[i];
  }
  Rational lam_top = lambda_eigen(cfg, d_top).single;
  auto timg = mat_apply(wt.t, chi);
  bool top_ok = true;
  for (int i = 0; i < wt.total; ++i) top_ok &= timg[i] == lam_top * chi[i];
  rep.top_harmonic_ok = top_ok;

  // rational lambda pairs: verify the two-block eigenvector directly
  for (int d = 0; d <= cfg.k; ++d) {
    LambdaEigen le = lambda_eigen(cfg, d);
    if (!le.pair.is_rational()) continue;
    for (int sign : {+1, -1}) {
      Rational lam = sign > 0 ? le.pair.plus_value() : le.pair.minus_value();
      if (sgn(lam) == 0) continue;
      std::vector<Rational> f(wt.total, Rational(0));
      auto c1 = chi_canonical(wt.s1, d);
      auto c2 = chi_canonical(wt.s2, d);
      Rational scale = alpha_cross(cfg, cfg.k1, cfg.k2, d) / lam;
      for (int i = 0; i < wt.sz1; ++i) f[i] = scale * c1[i];
      for (int i = 0; i < wt.sz2; ++i) f[wt.sz1 + i] = c2[i];
      auto img = mat_apply(wt.t, f);
      bool ok = true;
      for (int i = 0; i < wt.total; ++i) ok &= img[i] == lam * f[i];
      if (!ok) {
        rep.top_harmonic_ok = false;  // fold into the pass flag
      } else {
        ++rep.rational_eigvecs_checked;
      }
    }
  }
  return rep;
}

DoubleSliceFunction gprime_transform(const SetFunctionWTL& g) {
  DoubleSliceConfig cfg = DoubleSliceConfig::for_n(g.n);
  DoubleSliceFunction out = make_double_slice(cfg);
  auto shadow = [&](SubsetMask u) -> Rational {
    switch (g(u)) {
      case Rel::W: return 1;
      case Rel::L: return 0;
      case Rel::T: return 3 * popcount(u) < g.n ? 1 : 0;
    }
    return 0;
  };
  for (std::size_t i = 0; i < out.s1.masks.size(); ++i) out.v1[i] = shadow(out.s1.masks[i]);
  for (std::size_t i = 0; i < out.s2.masks.size(); ++i) out.v2[i] = shadow(out.s2.masks[i]);
  return out;
}

Rational prob_monochromatic_D(const DoubleSliceFunction& g) {
  const SubsetMask all = full_mask(g.cfg.n);
  long long agree = 0, total = 0;
  for (std::size_t i = 0; i < g.s1.masks.size(); ++i)
    for (std::size_t j = 0; j < g.s2.masks.size(); ++j) {
      if (g.s1.masks[i] & g.s2.masks[j]) continue;
      int p3 = g.s2.pos(all & ~g.s1.masks[i] & ~g.s2.masks[j]);
      ++total;
      if (g.v1[i] == g.v2[j] && g.v2[j] == g.v2[p3]) ++agree;
    }
  Rational q(static_cast<long>(agree), static_cast<long>(total));
  q.canonicalize();
  return q;
}

TwoSliceStats two_slice_stats(const DoubleSliceFunction& g) {
  TwoSliceStats st;
  Rational sum1 = 0, sum2 = 0;
  for (const Rational& v : g.v1) sum1 += v;
  for (const Rational& v : g.v2) sum2 += v;
  st.p1 = sum1 / static_cast<long>(g.v1.size());
  st.p2 = sum2 / static_cast<long>(g.v2.size());
  st.p = (st.p1 + 2 * st.p2) / 3;
  st.q = st.p1 - st.p2;
  Rational s22 = stab_pair(g.s2, g.v2, g.s2, g.v2);
  Rational s12 = stab_pair(g.s1, g.v1, g.s2, g.v2);
  st.stab = (s22 + 2 * s12) / 3;
  return st;
}

namespace {

// Z_n orbits over the combined double-slice element list; returns orbit id
// per position (role-1 positions first).
std::vector<int> combined_orbits(const DoubleSliceFunction& tmpl, int& orbit_count) {
  const int n = tmpl.cfg.n;
  const SubsetMask all = full_mask(n);
  const int sz1 = static_cast<int>(tmpl.s1.masks.size());
  const int total = sz1 + static_cast<int>(tmpl.s2.masks.size());
  auto pos_of = [&](SubsetMask m) {
    int p = tmpl.s1.pos(m);
    if (p >= 0) return p;
    return sz1 + tmpl.s2.pos(m);
  };
  std::vector<int> orbit(total, -1);
  orbit_count = 0;
  for (int i = 0; i < total; ++i) {
    if (orbit[i] >= 0) continue;
    SubsetMask m = i < sz1 ? tmpl.s1.masks[i] : tmpl.s2.masks[i - sz1];
    for (int r = 0; r < n; ++r) {
      orbit[pos_of(m)] = orbit_count;
      m = ((m << 1) | (m >> (n - 1))) & all;
    }
    ++orbit_count;
  }
  return orbit;
}

}  // namespace

TwoSliceReport verify_two_slice(int n) {
  if (n != 7 && n != 8 && n != 10 && n != 11)
    throw BudgetError("scale unsupported: verify_two_slice needs n in {7,8,10,11}");
  DoubleSliceConfig cfg = DoubleSliceConfig::for_n(n);
  DoubleSliceFunction tmpl = make_double_slice(cfg);
  const SubsetMask all = full_mask(n);
  const int sz1 = static_cast<int>(tmpl.s1.masks.size());

  TwoSliceReport rep;
  rep.n = n;
  std::vector<int> orbit = combined_orbits(tmpl, rep.orbit_count);
  const int m = rep.orbit_count;

  // distinct partition triples as orbit-id triples (value-symmetric, so
  // sorted ids suffice)
  std::set<std::array<int, 3>> triple_set;
  for (int i = 0; i < sz1; ++i)
    for (std::size_t j = 0; j < tmpl.s2.masks.size(); ++j) {
      if (tmpl.s1.masks[i] & tmpl.s2.masks[j]) continue;
      int p3 = tmpl.s2.pos(all & ~tmpl.s1.masks[i] & ~tmpl.s2.masks[j]);
      std::array<int, 3> tr = {orbit[i], orbit[sz1 + static_cast<int>(j)], orbit[sz1 + p3]};
      std::sort(tr.begin(), tr.end());
      triple_set.insert(tr);
    }

  // assignment order: greedily complete triples as early as possible
  std::vector<std::array<int, 3>> triples(triple_set.begin(), triple_set.end());
  std::vector<int> order;  // order[step] = orbit id
  {
    std::vector<bool> chosen(m, false);
    for (int step = 0; step < m; ++step) {
      int best = -1, best_score = -1;
      for (int o = 0; o < m; ++o) {
        if (chosen[o]) continue;
        int score = 0;
        for (const auto& tr : triples) {
          bool complete = true, uses = false;
          for (int x : tr) {
            if (x == o)
              uses = true;
            else if (!chosen[x])
              complete = false;
          }
          score += uses && complete;
        }
        if (score > best_score) {
          best_score = score;
          best = o;
        }
      }
      chosen[best] = true;
      order.push_back(best);
    }
  }
  std::vector<int> depth_of(m);  // orbit id -> assignment depth
  for (int step = 0; step < m; ++step) depth_of[order[step]] = step;
  std::vector<std::vector<std::array<int, 3>>> at_depth(m);
  for (const auto& tr : triples) {
    int dmax = std::max({depth_of[tr[0]], depth_of[tr[1]], depth_of[tr[2]]});
    at_depth[dmax].push_back(tr);
  }

  std::vector<int> val(m, -1);  // per orbit id
  std::vector<std::uint8_t> ok_stack;
  DoubleSliceFunction g = tmpl;

  auto emit = [&]() {
    std::uint64_t code = 0;
    for (int o = 0; o < m; ++o) code |= static_cast<std::uint64_t>(val[o]) << o;
    for (int i = 0; i < sz1; ++i) g.v1[i] = val[orbit[i]];
    for (std::size_t i = 0; i < tmpl.s2.masks.size(); ++i)
      g.v2[i] = val[orbit[sz1 + static_cast<int>(i)]];

    rep.recheck_ok &= sgn(prob_monochromatic_D(g)) == 0;

    SliceFunction r1{g.s1, g.v1}, r2{g.s2, g.v2};
    rep.egalitarian_ok &= check_egalitarian(r1) && check_egalitarian(r2);

    TwoSliceStats st = two_slice_stats(g);
    rep.identity_ok &= sgn(1 - 3 * st.p + 3 * st.stab) == 0;

    if (n <= 8) {
      // sigma-weighted projection onto the 1 / -1/2 step eigenfunction
      Rational ip = st.p1 / 3 - st.p2 / 3;
      Rational norm(1, 2);
      rep.projection_ok &= ip * ip / norm == 2 * st.q * st.q / 9;
    }

    TwoSliceRecord rec;
    rec.orbit_code = code;
    rec.p1 = st.p1;
    rec.p2 = st.p2;
    Rational half(1, 2);
    rec.dichotomy_ok = !(st.p1 > half && st.p2 > half);
    rec.gap_ok = true;
    if (n % 3 == 2) {
      Rational gap = (st.p1 - half) * (st.p1 - half);
      rec.gap_ok = gap > Rational(25, 108);
    }
    if (!rec.dichotomy_ok || !rec.gap_ok) ++rep.violations;
    rep.qualifying.push_back(std::move(rec));
  };

  // DFS over orbit assignments, pruning on any monochromatic decided triple
  auto rec_assign = [&](auto&& self, int depth) -> void {
    if (depth == m) {
      emit();
      return;
    }
    const int o = order[depth];
    for (int v = 0; v < 2; ++v) {
      val[o] = v;
      ++rep.nodes_visited;
      bool mono = false;
      for (const auto& tr : at_depth[depth]) {
        if (val[tr[0]] == val[tr[1]] && val[tr[1]] == val[tr[2]]) {
          mono = true;
          break;
        }
      }
      if (!mono) self(self, depth + 1);
    }
    val[o] = -1;
  };
  rec_assign(rec_assign, 0);
  return rep;
}

MonotoneProfile monotone_profile(const SetFunctionWTL& g) {
  if (auto bad = pr_violation(g))
    throw std::invalid_argument("monotone_profile needs a decreasing g (violation at mask " +
                                std::to_string(bad->u) + " + voter " + std::to_string(bad->v) +
                                ")");
  std::vector<long long> cw(g.n + 1, 0), cnl(g.n + 1, 0), tot(g.n + 1, 0);
  for (SubsetMask u = 0; u < g.size(); ++u) {
    int t = popcount(u);
    ++tot[t];
    cw[t] += g(u) == Rel::W;
    cnl[t] += g(u) != Rel::L;
  }
  MonotoneProfile prof;
  for (int i = 0; i <= g.n; ++i) {
    Rational qi(static_cast<long>(cw[i]), static_cast<long>(tot[i]));
    Rational ri(static_cast<long>(cnl[i]), static_cast<long>(tot[i]));
    qi.canonicalize();
    ri.canonicalize();
    if (qi > ri) throw std::logic_error("q_i exceeded r_i");
    if (i > 0 && (qi > prof.q.back() || ri > prof.r.back()))
      throw std::logic_error("monotone profile failed to decrease");
    prof.q.push_back(std::move(qi));
    prof.r.push_back(std::move(ri));
  }
  return prof;
}

AgreementResult corollary_agreement(const SetFunctionWTL& g, long long d) {
  if (d > -2 && d < 2) throw std::invalid_argument("corollary_agreement needs |d| > 1");
  const int n = g.n;
  long long hits = 0, total = 0;
  int used_card = -1;

  // margin d arises on slice (n-d)/3 in the forward orientation and on slice
  // (n+d)/3 in the reversed one (value there is the negated table entry)
  for (int orient = 0; orient < 2; ++orient) {
    long long num = orient == 0 ? n - d : n + d;
    if (num % 3 != 0) continue;
    long long t = num / 3;
    if (t < 0 || t > n) continue;
    used_card = static_cast<int>(t);
    Rel want = orient == 0 ? sign_of(d) : negated(sign_of(d));
    // iterate the t-slice without materializing an index table
    if (t == 0) {
      ++total;
      Rel got = g(0);
      hits += got == want || got == Rel::T;
      continue;
    }
    SubsetMask u = full_mask(static_cast<int>(t));
    const SubsetMask limit = full_mask(n);
    while (u <= limit) {
      ++total;
      Rel got = g(u);
      hits += got == want || got == Rel::T;
      SubsetMask c = u & -u;
      SubsetMask r = u + c;
      if (r > limit) break;
      u = (((r ^ u) >> 2) / c) | r;
    }
  }
  if (total == 0) throw std::invalid_argument("margin is not realizable at this n");

  AgreementResult res;
  res.d = d;
  res.slice_card = used_card;
  res.prob = Rational(static_cast<long>(hits), static_cast<long>(total));
  res.prob.canonicalize();
  res.meets_threshold = 27 * res.prob * res.prob >= 25;
  return res;
}

}  // namespace swf
