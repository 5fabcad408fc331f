#include "ckswo/metric.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>

namespace ckswo {

const Rational& DistanceMatrix::at(Vertex u, Vertex v) const {
  if (int r = row_of_.at(u); r >= 0) return data_[static_cast<std::size_t>(r) * n_ + v];
  if (int r = row_of_.at(v); r >= 0) return data_[static_cast<std::size_t>(r) * n_ + u];
  throw std::out_of_range("distance row missing for both endpoints");
}

std::vector<std::vector<Neighbor>> adjacency(const Instance& inst) {
  std::vector<std::vector<Neighbor>> adj(inst.n);
  auto relax = [&](Vertex a, Vertex b, const Rational& len) {
    for (Neighbor& nb : adj[a]) {
      if (nb.to == b) {
        if (len < nb.length) nb.length = len;
        return;
      }
    }
    adj[a].push_back({b, len});
  };
  for (const Edge& e : inst.edges) {
    relax(e.u, e.v, e.length);
    relax(e.v, e.u, e.length);
  }
  for (auto& list : adj)
    std::sort(list.begin(), list.end(), [](const Neighbor& a, const Neighbor& b) { return a.to < b.to; });
  return adj;
}

DistanceMatrix shortest_paths(const Instance& inst) {
  std::vector<Vertex> all(inst.n);
  for (int v = 0; v < inst.n; ++v) all[v] = v;
  return shortest_paths_from(inst, all);
}

DistanceMatrix shortest_paths_from(const Instance& inst, const std::vector<Vertex>& sources) {
  DistanceMatrix dm;
  dm.n_ = inst.n;
  dm.row_of_.assign(inst.n, -1);
  for (Vertex s : sources)
    if (dm.row_of_.at(s) < 0) dm.row_of_[s] = dm.rows_++;
  dm.data_.assign(static_cast<std::size_t>(dm.rows_) * inst.n, Rational::infinity());

  const auto adj = adjacency(inst);
  using Item = std::pair<Rational, Vertex>;
  auto cmp = [](const Item& a, const Item& b) { return a.first > b.first || (a.first == b.first && a.second > b.second); };
  for (Vertex s = 0; s < inst.n; ++s) {
    int r = dm.row_of_[s];
    if (r < 0) continue;
    Rational* row = &dm.data_[static_cast<std::size_t>(r) * inst.n];
    std::priority_queue<Item, std::vector<Item>, decltype(cmp)> pq(cmp);
    row[s] = Rational(0);
    pq.push({Rational(0), s});
    while (!pq.empty()) {
      auto [d, u] = pq.top();
      pq.pop();
      if (d > row[u]) continue;
      for (const Neighbor& nb : adj[u]) {
        Rational nd = d + nb.length;
        if (nd < row[nb.to]) {
          row[nb.to] = nd;
          pq.push({nd, nb.to});
        }
      }
    }
  }
  return dm;
}

std::vector<Rational> candidate_costs(const Instance& inst, const DistanceMatrix& dm) {
  std::vector<Rational> out;
  for (Vertex c : inst.clients)
    for (Vertex s : inst.suppliers)
      if (const Rational& d = dm.at(c, s); d.is_finite()) out.push_back(d);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace ckswo
