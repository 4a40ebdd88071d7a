#include "swf/slice.hpp"

#include <algorithm>
#include <array>

#include "swf/linalg.hpp"

namespace swf {

std::vector<Rational> mat_apply(const RatMatrix& m, const std::vector<Rational>& v) {
  if (static_cast<int>(v.size()) != m.cols)
    throw std::invalid_argument("matrix/vector size mismatch");
  std::vector<Rational> out(m.rows, Rational(0));
  for (int r = 0; r < m.rows; ++r) {
    Rational acc = 0;
    for (int c = 0; c < m.cols; ++c)
      if (sgn(m.at(r, c)) != 0 && sgn(v[c]) != 0) acc += m.at(r, c) * v[c];
    out[r] = acc;
  }
  return out;
}

std::vector<Rational> solve_linear(RatMatrix m, std::vector<Rational> rhs) {
  if (m.rows != m.cols || static_cast<int>(rhs.size()) != m.rows)
    throw std::invalid_argument("solve_linear needs a square system");
  const int n = m.rows;
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int r = col; r < n; ++r)
      if (sgn(m.at(r, col)) != 0) {
        piv = r;
        break;
      }
    if (piv < 0) throw std::invalid_argument("singular linear system");
    if (piv != col) {
      for (int c = 0; c < n; ++c) std::swap(m.at(piv, c), m.at(col, c));
      std::swap(rhs[piv], rhs[col]);
    }
    Rational inv = 1 / m.at(col, col);
    for (int c = col; c < n; ++c) m.at(col, c) *= inv;
    rhs[col] *= inv;
    for (int r = 0; r < n; ++r) {
      if (r == col || sgn(m.at(r, col)) == 0) continue;
      Rational f = m.at(r, col);
      for (int c = col; c < n; ++c) m.at(r, c) -= f * m.at(col, c);
      rhs[r] -= f * rhs[col];
    }
  }
  return rhs;
}

Slice make_slice(int n, int t) {
  if (n < 1 || n > kMaxVoters || t < 0 || t > n)
    throw std::invalid_argument("bad slice parameters");
  Slice s;
  s.n = n;
  s.t = t;
  budget_check((std::size_t{1} << n) * sizeof(std::int32_t), "slice index");
  s.index.assign(std::size_t{1} << n, -1);
  if (t == 0) {
    s.masks.push_back(0);
    s.index[0] = 0;
    return s;
  }
  // Gosper's hack over t-subsets
  SubsetMask m = full_mask(t);
  const SubsetMask limit = full_mask(n);
  while (m <= limit) {
    s.index[m] = static_cast<std::int32_t>(s.masks.size());
    s.masks.push_back(m);
    SubsetMask c = m & -m;
    SubsetMask r = m + c;
    if (r > limit) break;
    m = (((r ^ m) >> 2) / c) | r;
  }
  return s;
}

SliceFunction slice_indicator(const Slice& s, const std::vector<SubsetMask>& ones) {
  SliceFunction g;
  g.slice = s;
  g.values.assign(s.masks.size(), Rational(0));
  for (SubsetMask u : ones) {
    int p = s.pos(u);
    if (p < 0) throw std::invalid_argument("indicator mask is off the slice");
    g.values[p] = 1;
  }
  return g;
}

Rational alpha(int k, int d) {
  if (k < 1 || d < 0 || d > k) throw std::invalid_argument("alpha needs 0 <= d <= k");
  Rational a = 1;
  for (int j = 1; j <= d; ++j) {
    Rational f(-(k - j + 1), 2 * k - j + 1);
    f.canonicalize();  // mpq_class(num, den) does not reduce
    a *= f;
  }
  return a;
}

RatMatrix replacement_matrix(int k) {
  if (k < 1 || k > 4) throw BudgetError("scale unsupported: replacement_matrix needs k <= 4");
  Slice s = make_slice(3 * k, k);
  const int sz = static_cast<int>(s.masks.size());
  RatMatrix m(sz, sz);
  const Rational w(1, binomial(2 * k, k).get_si());
  for (int r = 0; r < sz; ++r)
    for (int c = 0; c < sz; ++c)
      if ((s.masks[r] & s.masks[c]) == 0) m.at(r, c) = w;
  return m;
}

static void require_third_slice(const Slice& s, const char* who) {
  if (s.n != 3 * s.t || s.t < 1)
    throw std::invalid_argument(std::string(who) + " needs the k-slice of a 3k-element set");
}

Rational stab_r(const SliceFunction& g) {
  require_third_slice(g.slice, "stab_r");
  const auto& masks = g.slice.masks;
  Rational acc = 0;
  for (std::size_t i = 0; i < masks.size(); ++i) {
    if (sgn(g.values[i]) == 0) continue;
    for (std::size_t j = 0; j < masks.size(); ++j)
      if ((masks[i] & masks[j]) == 0 && sgn(g.values[j]) != 0)
        acc += g.values[i] * g.values[j];
  }
  const int k = g.slice.t;
  return acc / (Rational(static_cast<long>(masks.size())) * Rational(binomial(2 * k, k).get_si()));
}

// Unordered partitions of {1..3k} into three slice members, as index triples.
static std::vector<std::array<int, 3>> slice_partitions(const Slice& s) {
  std::vector<std::array<int, 3>> out;
  const SubsetMask all = full_mask(s.n);
  for (std::size_t i = 0; i < s.masks.size(); ++i)
    for (std::size_t j = i + 1; j < s.masks.size(); ++j) {
      if (s.masks[i] & s.masks[j]) continue;
      SubsetMask rest = all & ~s.masks[i] & ~s.masks[j];
      int p = s.pos(rest);
      if (p > static_cast<int>(j)) out.push_back({static_cast<int>(i), static_cast<int>(j), p});
    }
  return out;
}

TripleStats prob_same(const SliceFunction& g) {
  require_third_slice(g.slice, "prob_same");
  long long cw = 0, ct = 0, cl = 0;
  std::vector<int> val(g.values.size());
  for (std::size_t i = 0; i < g.values.size(); ++i) {
    if (g.values[i] == 1)
      val[i] = 1, ++cw;
    else if (g.values[i] == 0)
      val[i] = 0, ++ct;
    else if (g.values[i] == -1)
      val[i] = -1, ++cl;
    else
      throw std::invalid_argument("prob_same needs values in {+1,0,-1}");
  }
  auto parts = slice_partitions(g.slice);
  long long n_www = 0, n_lll = 0, n_wwt = 0, n_llt = 0, n_wtt = 0, n_ltt = 0, n_ttt = 0;
  for (const auto& tr : parts) {
    int w = (val[tr[0]] == 1) + (val[tr[1]] == 1) + (val[tr[2]] == 1);
    int l = (val[tr[0]] == -1) + (val[tr[1]] == -1) + (val[tr[2]] == -1);
    int t = 3 - w - l;
    n_www += (w == 3);
    n_lll += (l == 3);
    n_ttt += (t == 3);
    n_wwt += (w == 2 && t == 1);
    n_llt += (l == 2 && t == 1);
    n_wtt += (w == 1 && t == 2);
    n_ltt += (l == 1 && t == 2);
  }
  const long long np = static_cast<long long>(parts.size());
  const long long sz = static_cast<long long>(g.values.size());
  TripleStats st;
  auto frac = [](long long a, long long b) { Rational q(static_cast<long>(a), static_cast<long>(b)); q.canonicalize(); return q; };
  st.p_w = frac(cw, sz);
  st.p_t = frac(ct, sz);
  st.p_l = frac(cl, sz);
  st.b = st.p_w - st.p_l;
  st.p_www = frac(n_www, np);
  st.p_lll = frac(n_lll, np);
  st.p_wwt = frac(n_wwt, np);
  st.p_llt = frac(n_llt, np);
  st.p_wtt = frac(n_wtt, np);
  st.p_ltt = frac(n_ltt, np);
  st.p_ttt = frac(n_ttt, np);
  st.e_weighted = st.p_www + st.p_lll + st.p_wwt / 2 + st.p_llt / 2 + st.p_wtt / 6 + st.p_ltt / 6;
  st.p_inconsistent = st.p_www + st.p_lll + st.p_wwt + st.p_llt + st.p_wtt + st.p_ltt;
  st.prob_same = st.p_www + st.p_lll + st.p_ttt;
  return st;
}

bool check_egalitarian(const SliceFunction& g) {
  // equal denominators across voters, so comparing sums suffices
  std::vector<Rational> sum(g.slice.n, Rational(0));
  for (std::size_t i = 0; i < g.values.size(); ++i)
    for (int v = 1; v <= g.slice.n; ++v)
      if (contains(g.slice.masks[i], v)) sum[v - 1] += g.values[i];
  for (int v = 2; v <= g.slice.n; ++v)
    if (sum[v - 1] != sum[0]) return false;
  return true;
}

bool check_egalitarian_wtl(const SliceFunction& g) {
  std::vector<long long> cw(g.slice.n, 0), cl(g.slice.n, 0);
  for (std::size_t i = 0; i < g.values.size(); ++i) {
    int s = sgn(g.values[i]);
    if (g.values[i] != s) throw std::invalid_argument("WTL values must be in {+1,0,-1}");
    for (int v = 1; v <= g.slice.n; ++v) {
      if (!contains(g.slice.masks[i], v)) continue;
      cw[v - 1] += s == 1;
      cl[v - 1] += s == -1;
    }
  }
  for (int v = 2; v <= g.slice.n; ++v)
    if (cw[v - 1] != cw[0] || cl[v - 1] != cl[0]) return false;
  return true;
}

WeightProfile harmonic_weights(const SliceFunction& g) {
  require_third_slice(g.slice, "harmonic_weights");
  const int k = g.slice.t;
  if (k > 4) throw BudgetError("scale unsupported: harmonic_weights needs k <= 4");
  RatMatrix t_r = replacement_matrix(k);
  const Rational inv_sz(1, static_cast<long>(g.values.size()));

  std::vector<Rational> moments;
  std::vector<Rational> h = g.values;
  for (int j = 0; j <= k; ++j) {
    Rational m = 0;
    for (std::size_t i = 0; i < h.size(); ++i) m += g.values[i] * h[i];
    moments.push_back(m * inv_sz);
    if (j < k) h = mat_apply(t_r, h);
  }

  RatMatrix vand(k + 1, k + 1);
  for (int d = 0; d <= k; ++d) {
    Rational a = alpha(k, d), p = 1;
    for (int j = 0; j <= k; ++j) {
      vand.at(j, d) = p;
      p *= a;
    }
  }
  WeightProfile wp;
  wp.w = solve_linear(std::move(vand), std::move(moments));
  return wp;
}

std::vector<Rational> chi_canonical(const Slice& s, int d) {
  if (2 * d > s.n) throw std::invalid_argument("chi_canonical needs 2d <= n");
  std::vector<Rational> v(s.masks.size(), Rational(1));
  for (std::size_t i = 0; i < s.masks.size(); ++i) {
    int prod = 1;
    for (int j = 1; j <= d && prod; ++j)
      prod *= contains(s.masks[i], 2 * j - 1) - contains(s.masks[i], 2 * j);
    v[i] = prod;
  }
  return v;
}

Rational bound_prob_same(const Rational& p) { return (8 - 27 * p + 27 * p * p) / 8; }
Rational bound_stab_lower(const Rational& p) { return p * p - (p - p * p) / 8; }
Rational bound_stab_upper(const Rational& p) { return p * p + (p - p * p) / 4; }
Rational bound_wtl(const Rational& p_t, const Rational& b) {
  return ((1 - p_t) * (5 - 3 * p_t) + 27 * b * b) / 32;
}

namespace {

// Shared scan plumbing: slice elements as positions, partitions and disjoint
// pairs as position lists.
struct ScanCtx {
  Slice s;
  int sz = 0;
  std::vector<std::uint32_t> memb;                // per voter, bit per position (sz <= 31 only)
  std::vector<std::vector<int>> disjoint;         // per position
  std::vector<std::array<int, 3>> parts;          // unordered partitions
  long long pair_count = 0;                       // ordered disjoint pairs

  explicit ScanCtx(int n, int k) {
    s = make_slice(n, k);
    sz = static_cast<int>(s.masks.size());
    if (sz <= 31) {
      memb.assign(n, 0);
      for (int i = 0; i < sz; ++i)
        for (int v = 1; v <= n; ++v)
          if (contains(s.masks[i], v)) memb[v - 1] |= 1u << i;
    }
    disjoint.assign(sz, {});
    for (int i = 0; i < sz; ++i)
      for (int j = 0; j < sz; ++j)
        if (i != j && (s.masks[i] & s.masks[j]) == 0) disjoint[i].push_back(j);
    parts = slice_partitions(s);
    for (int i = 0; i < sz; ++i) pair_count += static_cast<long long>(disjoint[i].size());
  }
};

struct BoundAccum {
  SliceBoundsReport* rep;
  std::size_t cap;

  void boolean_record(const ScanCtx& ctx, const std::vector<int>& val, std::uint64_t bits) {
    long long ones = 0;
    for (int v : val) ones += v;
    long long stab_cnt = 0;
    for (int i = 0; i < ctx.sz; ++i) {
      if (!val[i]) continue;
      for (int j : ctx.disjoint[i]) stab_cnt += val[j];
    }
    long long mono = 0;
    for (const auto& tr : ctx.parts) {
      int s3 = val[tr[0]] + val[tr[1]] + val[tr[2]];
      mono += (s3 == 0) | (s3 == 3);
    }
    Rational p(static_cast<long>(ones), static_cast<long>(ctx.sz));
    p.canonicalize();
    Rational stab(static_cast<long>(stab_cnt), static_cast<long>(ctx.pair_count));
    stab.canonicalize();
    Rational prob_a(static_cast<long>(mono), static_cast<long>(ctx.parts.size()));
    prob_a.canonicalize();

    Rational bnd = bound_prob_same(p);
    Rational slack = prob_a - bnd;
    Rational slack_lo = stab - bound_stab_lower(p);
    Rational slack_hi = bound_stab_upper(p) - stab;

    ++rep->boolean_egalitarian;
    auto upd = [](std::optional<Rational>& m, const Rational& v) {
      if (!m || v < *m) m = v;
    };
    upd(rep->min_slack_prob, slack);
    upd(rep->min_slack_stab_lo, slack_lo);
    upd(rep->min_slack_stab_hi, slack_hi);

    bool bad = sgn(slack) < 0 || sgn(slack_lo) < 0 || sgn(slack_hi) < 0;
    if (bad) {
      ++rep->violations;
      rep->violating.push_back({bits, 0, p, stab, prob_a, bnd, slack});
    }
    if (rep->records.size() < cap)
      rep->records.push_back({bits, 0, p, stab, prob_a, bnd, slack});
    else
      rep->records_truncated = true;
  }

  void wtl_record(const ScanCtx& ctx, const std::vector<int>& val, std::uint64_t wbits,
                  std::uint64_t lbits) {
    long long cw = 0, cl = 0;
    for (int v : val) {
      cw += v == 1;
      cl += v == -1;
    }
    long long n_www = 0, n_lll = 0, n_wwt = 0, n_llt = 0, n_wtt = 0, n_ltt = 0;
    for (const auto& tr : ctx.parts) {
      int w = (val[tr[0]] == 1) + (val[tr[1]] == 1) + (val[tr[2]] == 1);
      int l = (val[tr[0]] == -1) + (val[tr[1]] == -1) + (val[tr[2]] == -1);
      int t = 3 - w - l;
      n_www += (w == 3);
      n_lll += (l == 3);
      n_wwt += (w == 2 && t == 1);
      n_llt += (l == 2 && t == 1);
      n_wtt += (w == 1 && t == 2);
      n_ltt += (l == 1 && t == 2);
    }
    const long long np = static_cast<long long>(ctx.parts.size());
    // E scaled by 6*np keeps everything integral
    long long e6 = 6 * (n_www + n_lll) + 3 * (n_wwt + n_llt) + (n_wtt + n_ltt);
    Rational e(static_cast<long>(e6), static_cast<long>(6 * np));
    e.canonicalize();
    Rational p_t(static_cast<long>(ctx.sz - cw - cl), static_cast<long>(ctx.sz));
    p_t.canonicalize();
    Rational b(static_cast<long>(cw - cl), static_cast<long>(ctx.sz));
    b.canonicalize();
    Rational bnd = bound_wtl(p_t, b);
    Rational slack = e - bnd;

    ++rep->wtl_egalitarian;
    if (!rep->min_slack_wtl || slack < *rep->min_slack_wtl) rep->min_slack_wtl = slack;
    if (sgn(slack) < 0) {
      ++rep->violations;
      rep->violating.push_back({wbits, lbits, p_t, 0, e, bnd, slack});
    }
  }
};

std::vector<std::vector<int>> slice_orbits(const ScanCtx& ctx) {
  // positions grouped by cyclic rotation of the underlying masks
  const int n = ctx.s.n;
  const SubsetMask all = full_mask(n);
  std::vector<int> orbit_of(ctx.sz, -1);
  std::vector<std::vector<int>> orbits;
  for (int i = 0; i < ctx.sz; ++i) {
    if (orbit_of[i] >= 0) continue;
    std::vector<int> orb;
    SubsetMask m = ctx.s.masks[i];
    for (int r = 0; r < n; ++r) {
      int p = ctx.s.pos(m);
      if (orbit_of[p] < 0) {
        orbit_of[p] = static_cast<int>(orbits.size());
        orb.push_back(p);
      }
      m = ((m << 1) | (m >> (n - 1))) & all;
    }
    orbits.push_back(std::move(orb));
  }
  return orbits;
}

}  // namespace

SliceBoundsReport verify_slice_bounds(int n, ScanMode mode, std::size_t record_cap) {
  if (n % 3 != 0 || n < 3) throw std::invalid_argument("verify_slice_bounds needs n = 3k");
  const int k = n / 3;
  SliceBoundsReport rep;
  rep.n = n;
  rep.k = k;
  rep.mode = mode;
  ScanCtx ctx(n, k);
  BoundAccum acc{&rep, record_cap};

  if (mode == ScanMode::Exhaustive) {
    if (k > 2) throw BudgetError("scale unsupported: exhaustive slice scan needs k <= 2");
    const int sz = ctx.sz;
    std::vector<int> val(sz);

    // Boolean: every subset of the slice, egalitarian only.
    for (std::uint32_t g = 0; g < (1u << sz); ++g) {
      int c0 = std::popcount(g & ctx.memb[0]);
      bool egal = true;
      for (int v = 1; v < n && egal; ++v) egal = std::popcount(g & ctx.memb[v]) == c0;
      ++rep.boolean_scanned;
      if (!egal) continue;
      for (int i = 0; i < sz; ++i) val[i] = (g >> i) & 1;
      acc.boolean_record(ctx, val, g);
    }

    // WTL: trit odometer over slice positions, W/L indicator words maintained
    // incrementally.
    std::vector<int> trit(sz, 0);  // 0=T 1=W 2=L
    std::uint32_t wbits = 0, lbits = 0;
    for (;;) {
      ++rep.wtl_scanned;
      bool egal = true;
      int w0 = std::popcount(wbits & ctx.memb[0]);
      int l0 = std::popcount(lbits & ctx.memb[0]);
      for (int v = 1; v < n && egal; ++v)
        egal = std::popcount(wbits & ctx.memb[v]) == w0 && std::popcount(lbits & ctx.memb[v]) == l0;
      if (egal) {
        for (int i = 0; i < sz; ++i) val[i] = (wbits >> i) & 1 ? 1 : ((lbits >> i) & 1 ? -1 : 0);
        acc.wtl_record(ctx, val, wbits, lbits);
      }
      int pos = 0;
      while (pos < sz) {
        std::uint32_t bit = 1u << pos;
        if (trit[pos] == 0) {
          trit[pos] = 1;
          wbits |= bit;
          break;
        }
        if (trit[pos] == 1) {
          trit[pos] = 2;
          wbits &= ~bit;
          lbits |= bit;
          break;
        }
        trit[pos] = 0;
        lbits &= ~bit;
        ++pos;
      }
      if (pos == sz) break;
    }
  } else {
    auto orbits = slice_orbits(ctx);
    const int m = static_cast<int>(orbits.size());
    if (m > 20) throw BudgetError("scale unsupported: too many slice orbits");
    std::vector<int> val(ctx.sz);

    for (std::uint32_t a = 0; a < (1u << m); ++a) {
      ++rep.boolean_scanned;
      for (int o = 0; o < m; ++o) {
        int v = (a >> o) & 1;
        for (int p : orbits[o]) val[p] = v;
      }
      acc.boolean_record(ctx, val, a);
    }

    long long total = 1;
    for (int o = 0; o < m; ++o) total *= 3;
    for (long long a = 0; a < total; ++a) {
      ++rep.wtl_scanned;
      long long rest = a;
      for (int o = 0; o < m; ++o) {
        int tv = static_cast<int>(rest % 3);
        rest /= 3;
        for (int p : orbits[o]) val[p] = tv == 1 ? 1 : (tv == 2 ? -1 : 0);
      }
      acc.wtl_record(ctx, val, static_cast<std::uint64_t>(a), 0);
    }
  }
  return rep;
}

BordaCubeResult check_borda_cube(const SetFunctionWTL& g) {
  if (g.n % 3 != 0) throw std::invalid_argument("check_borda_cube needs n = 3k");
  const int k = g.n / 3;
  if (auto bad = check_triple_consistency(g)) throw ConsistencyError(*bad);

  Slice s = make_slice(g.n, k);
  SliceFunction restr;
  restr.slice = s;
  for (SubsetMask m : s.masks) restr.values.push_back(Rational(rel_int(g(m))));
  if (!check_egalitarian_wtl(restr))
    throw std::invalid_argument("check_borda_cube needs an egalitarian k-slice restriction");

  BordaCubeResult res;
  res.below = g(0);
  for (SubsetMask u = 0; u < g.size(); ++u) {
    int t = popcount(u);
    Rel want = t == k ? Rel::T : (t < k ? res.below : negated(res.below));
    if (g(u) != want) {
      res.ok = false;
      res.witness = u;
      return res;
    }
  }
  res.ok = true;
  return res;
}

}  // namespace swf
