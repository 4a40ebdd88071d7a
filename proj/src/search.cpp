#include "swf/search.hpp"

#include <algorithm>
#include <array>
#include <set>

namespace swf {

namespace {

std::string describe_group(const PermutationGroup& group) {
  PermutationGroup cyc = PermutationGroup::cyclic(group.n);
  if (group.generators == cyc.generators) return "Z_" + std::to_string(group.n);
  return "custom(" + std::to_string(group.generators.size()) + " generators)";
}

bool consistent_counts(Rel a, Rel b, Rel c) {
  int w = (a == Rel::W) + (b == Rel::W) + (c == Rel::W);
  int t = (a == Rel::T) + (b == Rel::T) + (c == Rel::T);
  // {W,W,L}, {W,T,L}, {W,L,L}, {T,T,T}
  return (w == 2 && t == 0) || (w == 1 && t == 1) || (w == 1 && t == 0) || t == 3;
}

}  // namespace

OrbitTable subset_orbits(const PermutationGroup& group) {
  validate_group(group);  // a non-bijective generator would corrupt the partition silently
  OrbitTable tab;
  tab.n = group.n;
  tab.group = group;
  const SubsetMask size = SubsetMask{1} << group.n;
  budget_check(static_cast<std::size_t>(size) * sizeof(std::int32_t), "orbit table");
  tab.orbit_index.assign(size, -1);
  for (SubsetMask m = 0; m < size; ++m) {
    if (tab.orbit_index[m] >= 0) continue;
    const int id = static_cast<int>(tab.orbits.size());
    std::vector<SubsetMask> members{m};
    tab.orbit_index[m] = id;
    for (std::size_t head = 0; head < members.size(); ++head)
      for (const auto& sigma : group.generators) {
        SubsetMask img = apply_perm(sigma, members[head]);
        if (tab.orbit_index[img] < 0) {
          tab.orbit_index[img] = id;
          members.push_back(img);
        }
      }
    std::sort(members.begin(), members.end());
    tab.orbits.push_back(std::move(members));
  }
  std::sort(tab.orbits.begin(), tab.orbits.end(),
            [](const std::vector<SubsetMask>& a, const std::vector<SubsetMask>& b) {
              int ca = popcount(a.front()), cb = popcount(b.front());
              if (ca != cb) return ca < cb;
              return a.front() < b.front();
            });
  for (std::size_t id = 0; id < tab.orbits.size(); ++id)
    for (SubsetMask m : tab.orbits[id]) tab.orbit_index[m] = static_cast<std::int32_t>(id);
  return tab;
}

SetFunctionWTL materialize(const OrbitTable& tab, const std::vector<Rel>& assignment) {
  if (assignment.size() != tab.orbits.size())
    throw std::invalid_argument("assignment length != orbit count");
  SetFunctionWTL g(tab.n);
  for (std::size_t id = 0; id < tab.orbits.size(); ++id)
    for (SubsetMask m : tab.orbits[id]) g.set(m, assignment[id]);
  return g;
}

namespace {

struct Dfs {
  const OrbitTable& tab;
  SearchFilters filters;
  SearchOptions options;
  bool conjecture = false;
  int m = 0;
  std::vector<std::vector<std::array<int, 3>>> triples_at;  // by max orbit id
  std::vector<std::vector<int>> geq_at;  // ids whose value must be >= current
  std::vector<int> forced;               // value-order index or -1
  static constexpr Rel kOrder[3] = {Rel::W, Rel::T, Rel::L};

  std::vector<int> choice;  // value-order index per depth
  std::vector<Rel> val;
  bool stopped = false;
  SearchReport rep;

  Dfs(const OrbitTable& t, const SearchFilters& f, const SearchOptions& o, bool conj)
      : tab(t), filters(f), options(o), conjecture(conj), m(t.count()) {
    rep.n = tab.n;
    rep.group_desc = describe_group(tab.group);
    rep.conjecture_mode = conjecture;
    rep.orbits = tab;
    precompute();
  }

  void precompute() {
    const SubsetMask all = full_mask(tab.n);
    std::set<std::array<int, 3>> tr_set;
    for (SubsetMask m1 = 0; m1 <= all; ++m1) {
      const SubsetMask rest = all & ~m1;
      SubsetMask m2 = rest;
      while (true) {
        std::array<int, 3> tr = {tab.orbit_index[m1], tab.orbit_index[m2],
                                 tab.orbit_index[rest & ~m2]};
        std::sort(tr.begin(), tr.end());
        tr_set.insert(tr);
        if (m2 == 0) break;
        m2 = (m2 - 1) & rest;
      }
    }
    triples_at.assign(m, {});
    for (const auto& tr : tr_set) triples_at[tr[2]].push_back(tr);

    geq_at.assign(m, {});
    if (filters.decreasing) {
      std::set<std::pair<int, int>> edges;
      for (SubsetMask u = 0; u <= all; ++u)
        for (int i = 0; i < tab.n; ++i) {
          if (u & (SubsetMask{1} << i)) continue;
          // cardinality sorts the subset's orbit strictly earlier
          edges.emplace(tab.orbit_index[u], tab.orbit_index[u | (SubsetMask{1} << i)]);
        }
      for (const auto& [lo, hi] : edges) geq_at[hi].push_back(lo);
    }

    forced.assign(m, -1);
    if (filters.pareto) {
      forced[tab.orbit_index[0]] = 0;    // W
      forced[tab.orbit_index[all]] = 2;  // L
    }
  }

  bool admissible(int depth) const {
    const Rel v = val[depth];
    if (filters.decreasing)
      for (int lo : geq_at[depth])
        if (rel_int(val[lo]) < rel_int(v)) return false;
    for (const auto& tr : triples_at[depth])
      if (!consistent_counts(val[tr[0]], val[tr[1]], v)) return false;
    return true;
  }

  void emit() {
    FoundFunction fn;
    fn.assignment = val;
    SetFunctionWTL g = materialize(tab, val);
    if (auto bad = check_triple_consistency(g))
      throw std::logic_error("search emitted an inconsistent function");
    fn.kind = classify_borda(g, tab.group, /*assume_consistent=*/true).kind;
    if (conjecture) {
      const int k = tab.n / 3;
      const int lo_card = tab.n % 3 == 1 ? k - 1 : k;  // no L at or below
      const int hi_card = lo_card + 2;                 // no W at or above
      for (SubsetMask u = 0; u < g.size(); ++u) {
        int c = popcount(u);
        if ((c <= lo_card && g(u) == Rel::L) || (c >= hi_card && g(u) == Rel::W)) {
          fn.conjecture_violation = true;
          fn.witness_mask = u;
          break;
        }
      }
      if (fn.conjecture_violation) ++rep.counterexamples;
    }
    rep.found.push_back(std::move(fn));
  }

  void run() {
    choice.assign(m, 0);
    val.assign(m, Rel::T);
    rep.nodes_visited = 0;
    walk(0, true);
    if (!stopped) rep.complete = true;
  }

  void walk(int depth, bool on_resume_prefix) {
    if (depth == m) {
      emit();
      return;
    }
    int start = 0;
    if (on_resume_prefix && depth < static_cast<int>(options.resume.size()))
      start = options.resume[depth];
    for (int vi = start; vi < 3 && !stopped; ++vi) {
      if (depth == 0 && options.shard_count > 0 && vi % options.shard_count != options.shard_index)
        continue;
      if (forced[depth] >= 0 && vi != forced[depth]) continue;
      if (options.node_limit >= 0 && rep.nodes_visited >= options.node_limit) {
        stopped = true;
        rep.complete = false;
        rep.frontier.assign(choice.begin(), choice.begin() + depth);
        rep.frontier.push_back(static_cast<std::int8_t>(vi));
        return;
      }
      // re-descending a resume frontier's strict prefix: those nodes were
      // already counted by the chunk that recorded it
      const bool replay = on_resume_prefix && vi == start &&
                          depth + 1 < static_cast<int>(options.resume.size());
      if (!replay) ++rep.nodes_visited;
      choice[depth] = vi;
      val[depth] = kOrder[vi];
      if (admissible(depth)) walk(depth + 1, on_resume_prefix && vi == start);
    }
  }
};

}  // namespace

SearchReport enumerate_consistent(int n, const PermutationGroup& group,
                                  const SearchFilters& filters, const SearchOptions& options) {
  if (n < 1 || n > 9) throw BudgetError("scale unsupported: enumerate_consistent needs n <= 9");
  if (group.n != n) throw std::invalid_argument("group size != n");
  if (options.shard_count > 0 &&
      (options.shard_index < 0 || options.shard_index >= options.shard_count))
    throw std::invalid_argument("shard index out of range");
  OrbitTable tab = subset_orbits(group);
  Dfs dfs(tab, filters, options, /*conjecture=*/false);
  dfs.run();
  return std::move(dfs.rep);
}

SearchReport conjecture_scan(int n, const SearchOptions& options) {
  if (n % 3 == 0) throw std::invalid_argument("n divisible by 3");
  if (n > 8) throw BudgetError("scale unsupported: conjecture_scan needs n <= 8");
  if (options.shard_count > 0 &&
      (options.shard_index < 0 || options.shard_index >= options.shard_count))
    throw std::invalid_argument("shard index out of range");
  OrbitTable tab = subset_orbits(PermutationGroup::cyclic(n));
  SearchFilters filters;
  filters.decreasing = true;
  Dfs dfs(tab, filters, options, /*conjecture=*/true);
  dfs.run();
  return std::move(dfs.rep);
}

SearchReport merge_reports(const std::vector<SearchReport>& parts) {
  if (parts.empty()) throw std::invalid_argument("nothing to merge");
  SearchReport out;
  out.n = parts.front().n;
  out.group_desc = parts.front().group_desc;
  out.conjecture_mode = parts.front().conjecture_mode;
  out.orbits = parts.front().orbits;
  for (const auto& p : parts) {
    if (p.n != out.n || p.conjecture_mode != out.conjecture_mode)
      throw std::invalid_argument("mismatched shard reports");
    out.nodes_visited += p.nodes_visited;
    out.complete = out.complete && p.complete;
    out.counterexamples += p.counterexamples;
    out.found.insert(out.found.end(), p.found.begin(), p.found.end());
  }
  auto key = [](Rel r) { return r == Rel::W ? 0 : r == Rel::T ? 1 : 2; };
  std::sort(out.found.begin(), out.found.end(),
            [&](const FoundFunction& a, const FoundFunction& b) {
              return std::lexicographical_compare(
                  a.assignment.begin(), a.assignment.end(), b.assignment.begin(),
                  b.assignment.end(), [&](Rel x, Rel y) { return key(x) < key(y); });
            });
  return out;
}

}  // namespace swf
