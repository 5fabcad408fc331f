#pragma once

// Oracles used only by the tests.  They deliberately share no code with the
// library beyond the data types, so a bug in the solvers cannot hide here.

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ckswo/instance.hpp"
#include "ckswo/rational.hpp"

namespace ckswo::testing {

#ifdef CKSWO_FIXTURE_DIR
inline std::string fixture(const std::string& name) { return std::string(CKSWO_FIXTURE_DIR) + "/" + name; }
#endif

/// All-pairs distances by Floyd-Warshall; unreachable pairs are infinite.
inline std::vector<std::vector<Rational>> floyd_warshall(const Instance& inst) {
  const int n = inst.n;
  std::vector<std::vector<Rational>> d(n, std::vector<Rational>(n, Rational::infinity()));
  for (int v = 0; v < n; ++v) d[v][v] = Rational(0);
  for (const Edge& e : inst.edges) {
    d[e.u][e.v] = std::min(d[e.u][e.v], e.length);
    d[e.v][e.u] = std::min(d[e.v][e.u], e.length);
  }
  for (int m = 0; m < n; ++m)
    for (int i = 0; i < n; ++i) {
      if (d[i][m].is_infinite()) continue;
      for (int j = 0; j < n; ++j)
        if (d[m][j].is_finite() && d[i][m] + d[m][j] < d[i][j]) d[i][j] = d[i][m] + d[m][j];
    }
  return d;
}

/// Client-supplier distances, sorted and deduplicated, finite only.
inline std::vector<Rational> pair_scan_costs(const Instance& inst, const std::vector<std::vector<Rational>>& d) {
  std::vector<Rational> out;
  for (Vertex c : inst.clients)
    for (Vertex s : inst.suppliers)
      if (d[c][s].is_finite()) out.push_back(d[c][s]);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// Whether some map clients -> suppliers + {outlier} is feasible at rho using
/// at most k distinct suppliers.  Direct recursion, no flow.
inline bool naive_feasible(const Instance& inst, const std::vector<std::vector<Rational>>& d, const Rational& rho) {
  std::map<Vertex, std::int64_t> uses;  // clients sent to s; > 0 means s is open
  std::map<Vertex, std::int64_t> load;  // capacity consumed at s
  int open = 0;
  int outliers = 0;
  auto rec = [&](auto&& self, std::size_t i) -> bool {
    if (i == inst.clients.size()) return true;
    const Vertex c = inst.clients[i];
    for (Vertex s : inst.suppliers) {
      if (d[c][s] > rho) continue;
      const bool free_self = inst.self_service && s == c;
      const std::int64_t cost = free_self ? 0 : 1;
      if (auto cap = inst.capacity(s); cap && load[s] + cost > *cap) continue;
      const bool opening = uses[s] == 0;
      if (opening && open >= inst.k) continue;
      ++uses[s];
      load[s] += cost;
      open += opening;
      const bool ok = self(self, i + 1);
      --uses[s];
      load[s] -= cost;
      open -= opening;
      if (ok) return true;
    }
    if (outliers < inst.p) {
      ++outliers;
      const bool ok = self(self, i + 1);
      --outliers;
      if (ok) return true;
    }
    return false;
  };
  return rec(rec, 0);
}

/// Optimum by trying every candidate cost with naive_feasible; nullopt if none works.
inline std::optional<Rational> naive_opt(const Instance& inst) {
  const auto d = floyd_warshall(inst);
  std::vector<Rational> costs = pair_scan_costs(inst, d);
  costs.insert(costs.begin(), Rational(0));
  for (const Rational& rho : costs)
    if (naive_feasible(inst, d, rho)) return rho;
  return std::nullopt;
}

}  // namespace ckswo::testing
