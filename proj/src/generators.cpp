#include "ckswo/generators.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

#include "ckswo/errors.hpp"

namespace ckswo {

std::uint64_t Rng::below(std::uint64_t bound) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
  for (;;) {
    std::uint64_t x = engine_();
    if (x < limit) return x % bound;
  }
}

namespace {

std::int64_t ceil_sqrt(std::int64_t x) {
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(x)));
  while (r * r > x) --r;
  while (r * r < x) ++r;
  return r;
}

}  // namespace

Instance gen_random_euclidean(int n_suppliers, int n_clients, int dims, int k, int p,
                              std::optional<CapacityRange> caps, std::uint64_t seed) {
  if (dims < 1 || dims > 3) throw InputError("dims must be 1, 2 or 3");
  if (n_suppliers < 0 || n_clients < 0) throw InputError("negative point count");
  if (caps && (caps->lo < 1 || caps->hi < caps->lo)) throw InputError("bad capacity range");
  Rng rng(seed);
  const int n = n_suppliers + n_clients;
  std::vector<std::array<std::int64_t, 3>> pt(n, {0, 0, 0});
  for (auto& x : pt)
    for (int d = 0; d < dims; ++d) x[d] = rng.between(0, 1000);

  Instance inst;
  inst.n = n;
  for (int s = 0; s < n_suppliers; ++s) inst.suppliers.push_back(s);
  for (int c = n_suppliers; c < n; ++c) inst.clients.push_back(c);
  for (int s = 0; s < n_suppliers; ++s)
    for (int c = n_suppliers; c < n; ++c) {
      std::int64_t sq = 0;
      for (int d = 0; d < dims; ++d) sq += (pt[s][d] - pt[c][d]) * (pt[s][d] - pt[c][d]);
      inst.edges.push_back({s, c, Rational(std::max<std::int64_t>(1, ceil_sqrt(sq)), 1000)});
    }
  if (caps)
    for (int s = 0; s < n_suppliers; ++s) inst.capacities[s] = rng.between(caps->lo, caps->hi);
  inst.k = std::clamp(k, 0, n_suppliers);
  inst.p = std::clamp(p, 0, n_clients);
  inst.validate();
  return inst;
}

std::pair<Instance, TreeDecomposition> gen_random_bounded_tw(int n, int tw_bound, int k, int p, std::uint64_t seed) {
  if (tw_bound < 1) throw InputError("tw_bound must be at least 1");
  if (n < 2) throw InputError("need at least 2 vertices");
  Rng rng(seed);
  Instance inst;
  inst.n = n;
  TreeDecomposition td;
  std::set<std::pair<Vertex, Vertex>> edges;
  const int base = std::min(n, tw_bound + 1);
  std::vector<Vertex> first(base);
  std::iota(first.begin(), first.end(), 0);
  td.bags.push_back(first);
  for (Vertex a = 0; a < base; ++a)
    for (Vertex b = a + 1; b < base; ++b) edges.insert({a, b});
  for (Vertex v = base; v < n; ++v) {
    const int host = static_cast<int>(rng.below(td.bags.size()));
    std::vector<Vertex> sub = td.bags[host];
    while (static_cast<int>(sub.size()) > tw_bound) sub.erase(sub.begin() + static_cast<std::ptrdiff_t>(rng.below(sub.size())));
    std::vector<Vertex> attach;
    for (Vertex u : sub)
      if (rng.coin()) attach.push_back(u);
    if (attach.empty()) attach.push_back(sub[rng.below(sub.size())]);
    for (Vertex u : attach) edges.insert({u, v});
    sub.push_back(v);
    td.bags.push_back(sub);
    td.tree_edges.emplace_back(host, static_cast<int>(td.bags.size()) - 1);
  }
  td.root = 0;
  for (auto [a, b] : edges) inst.edges.push_back({a, b, Rational(rng.between(1, 10))});

  std::vector<char> supplier(n);
  for (auto& s : supplier) s = rng.coin();
  if (std::all_of(supplier.begin(), supplier.end(), [](char c) { return c; })) supplier[rng.below(n)] = 0;
  if (std::none_of(supplier.begin(), supplier.end(), [](char c) { return c; })) supplier[rng.below(n)] = 1;
  for (Vertex v = 0; v < n; ++v) (supplier[v] ? inst.suppliers : inst.clients).push_back(v);
  inst.k = std::clamp(k, 0, static_cast<int>(inst.suppliers.size()));
  inst.p = std::clamp(p, 0, static_cast<int>(inst.clients.size()));
  inst.validate();
  return {inst, td};
}

MccInstance gen_planted_mcc(int k, int N, int m_per_pair, std::uint64_t seed) {
  if (k < 2 || N < 1) throw InputError("need k >= 2 and N >= 1");
  if (m_per_pair < 1 || m_per_pair > N * N) throw InputError("edges per class pair must lie in [1, N^2]");
  Rng rng(seed);
  MccInstance mcc;
  mcc.k = k;
  mcc.N = N;
  for (int i = 0; i < k; ++i) {
    mcc.classes.emplace_back();
    for (int a = 0; a < N; ++a) mcc.classes[i].push_back(i * N + a);
  }
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) {
      // Position pair (0, 0) is the planted clique edge; the rest are drawn without replacement.
      std::vector<int> cells(N * N - 1);
      std::iota(cells.begin(), cells.end(), 1);
      for (std::size_t t = cells.size(); t > 1; --t) std::swap(cells[t - 1], cells[rng.below(t)]);
      mcc.edges.emplace_back(i * N, j * N);
      for (int t = 0; t + 1 < m_per_pair; ++t)
        mcc.edges.emplace_back(i * N + cells[t] / N, j * N + cells[t] % N);
    }
  mcc.validate();
  return mcc;
}

}  // namespace ckswo
