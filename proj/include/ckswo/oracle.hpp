#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "ckswo/assignment.hpp"
#include "ckswo/instance.hpp"
#include "ckswo/metric.hpp"

namespace ckswo {

inline constexpr std::uint64_t kOracleGuard = 10'000'000;

struct OracleResult {
  Rational cost;
  Assignment assignment;
  std::vector<Vertex> suppliers;  // the first feasible subset found
};

/// Smallest rho in {0} + candidate_costs for which some supplier subset of size
/// at most k admits a flow-feasible assignment.  Subsets are tried by size, then
/// lexicographically.  Throws GuardExceeded when the subset count times the
/// number of costs exceeds kOracleGuard.
std::optional<OracleResult> brute_force_opt(const Instance& inst, const DistanceMatrix& dm);

/// Enumerates every map clients -> S + {outlier} and checks it directly.
/// Throws GuardExceeded when (|S|+1)^|clients| exceeds kOracleGuard.
bool brute_force_assignment_check(const Instance& inst, const DistanceMatrix& dm, const std::vector<Vertex>& S,
                                  const Rational& rho);

/// Optimum found by enumerating assignments over every subset of size at most k.
/// Independent of the flow code; tests use it as a second oracle.
std::optional<Rational> enumeration_opt(const Instance& inst, const DistanceMatrix& dm);

/// Calls f(subset) for every subset of `items` with size at most `max_size`,
/// size ascending then lexicographic.  Stops early when f returns true.
template <class F>
bool for_each_subset(const std::vector<Vertex>& items, int max_size, F&& f) {
  const int n = static_cast<int>(items.size());
  std::vector<int> idx;
  std::vector<Vertex> subset;
  for (int size = 0; size <= std::min(max_size, n); ++size) {
    idx.resize(size);
    for (int i = 0; i < size; ++i) idx[i] = i;
    for (;;) {
      subset.clear();
      for (int i : idx) subset.push_back(items[i]);
      if (f(subset)) return true;
      int pos = size - 1;
      while (pos >= 0 && idx[pos] == n - size + pos) --pos;
      if (pos < 0) break;
      ++idx[pos];
      for (int i = pos + 1; i < size; ++i) idx[i] = idx[i - 1] + 1;
    }
  }
  return false;
}

}  // namespace ckswo
