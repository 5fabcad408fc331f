#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "ckswo/gadgets.hpp"
#include "ckswo/instance.hpp"
#include "ckswo/tree_decomposition.hpp"

namespace ckswo {

/// mt19937_64 with a portable bounded draw; the standard distributions are
/// not reproducible across library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  /// Uniform in [0, bound).  bound > 0.
  std::uint64_t below(std::uint64_t bound);
  /// Uniform in [lo, hi].
  std::int64_t between(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
  }
  bool coin() { return below(2) == 1; }

 private:
  std::mt19937_64 engine_;
};

struct CapacityRange {
  std::int64_t lo = 1;
  std::int64_t hi = 1;
};

/// Suppliers are 0..n_suppliers-1, clients follow.  Points sit on the
/// 1/1000 grid of the unit cube; each supplier-client edge has the Euclidean
/// length rounded up to the grid.  No capacity range means uncapacitated.
Instance gen_random_euclidean(int n_suppliers, int n_clients, int dims, int k, int p,
                              std::optional<CapacityRange> caps, std::uint64_t seed);

/// k-tree style graph of width at most tw_bound with its decomposition,
/// integer lengths in [1, 10] and a random supplier/client split.  k and p
/// are clamped to the split sizes.
std::pair<Instance, TreeDecomposition> gen_random_bounded_tw(int n, int tw_bound, int k, int p,
                                                             std::uint64_t seed);

/// MCC instance with a planted clique on the first vertex of each class
/// (ids are class * N + position) and m_per_pair edges between each pair of classes.
MccInstance gen_planted_mcc(int k, int N, int m_per_pair, std::uint64_t seed);

}  // namespace ckswo
