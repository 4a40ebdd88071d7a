#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "swf/axioms.hpp"
#include "swf/domain.hpp"

namespace swf {

// Orbits of the subset lattice under a permutation group, sorted by
// (member cardinality, smallest mask); members ascending within an orbit.
struct OrbitTable {
  int n = 0;
  PermutationGroup group;
  std::vector<std::vector<SubsetMask>> orbits;
  std::vector<std::int32_t> orbit_index;  // mask -> orbit id

  int count() const { return static_cast<int>(orbits.size()); }
};

// pre: group transitive for TA semantics (computation works for any group).
OrbitTable subset_orbits(const PermutationGroup& group);

// Expands an orbit-value assignment into a full table.
SetFunctionWTL materialize(const OrbitTable& tab, const std::vector<Rel>& assignment);

struct SearchFilters {
  bool decreasing = false;
  bool pareto = false;
};

// DFS driver knobs: node budget with a resumable frontier, and sharding
// over the first orbit's branches.
struct SearchOptions {
  long long node_limit = -1;           // < 0 means unbounded
  std::vector<std::int8_t> resume;     // frontier from a stopped run (value-order indices)
  int shard_index = -1;                // -1 means unsharded
  int shard_count = 0;
};

struct FoundFunction {
  std::vector<Rel> assignment;  // per orbit, in orbit-table order
  BordaKind kind = BordaKind::UnclassifiedWithoutTA;
  bool conjecture_violation = false;
  SubsetMask witness_mask = 0;  // set violating a slice-wise exclusion
};

struct SearchReport {
  int n = 0;
  std::string group_desc;
  long long nodes_visited = 0;
  bool complete = true;
  std::vector<std::int8_t> frontier;  // set when node_limit stopped the walk
  std::vector<FoundFunction> found;
  long long counterexamples = 0;
  bool conjecture_mode = false;  // scan results are observational, not proof
  OrbitTable orbits;
};

// DFS over {W,T,L} orbit assignments in table order (value order W, T, L),
// pruning on decided inconsistent partitions and, with the decreasing
// filter, on covering-pair monotonicity. Every emitted function is
// re-verified by check_triple_consistency. pre: n <= 9.
SearchReport enumerate_consistent(int n, const PermutationGroup& group,
                                  const SearchFilters& filters,
                                  const SearchOptions& options = {});

// Scans consistent decreasing Z_n-invariant rules for violations of the
// slice-wise exclusions (no L below the middle band, no W above it).
// pre: n % 3 != 0, n <= 8.
SearchReport conjecture_scan(int n, const SearchOptions& options = {});

// Merges shard reports (same n/group/mode) into one, restoring the
// deterministic assignment order.
SearchReport merge_reports(const std::vector<SearchReport>& parts);

}  // namespace swf
