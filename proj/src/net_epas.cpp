#include "ckswo/net_epas.hpp"

#include <algorithm>
#include <stdexcept>

#include "ckswo/errors.hpp"
#include "ckswo/flow.hpp"
#include "ckswo/oracle.hpp"

namespace ckswo {

Instance prune_suppliers(const Instance& inst, const DistanceMatrix& dm, const Rational& rho) {
  Instance out = inst;
  out.suppliers.clear();
  out.capacities.clear();
  for (Vertex s : inst.suppliers) {
    bool reaches = std::any_of(inst.clients.begin(), inst.clients.end(), [&](Vertex c) { return dm.at(s, c) <= rho; });
    if (!reaches) continue;
    out.suppliers.push_back(s);
    if (auto cap = inst.capacity(s)) out.capacities[s] = *cap;
  }
  return out;
}

Net greedy_net(std::vector<Vertex> ids, const DistanceMatrix& dm, const Rational& delta) {
  if (delta < Rational(0)) throw std::invalid_argument("net radius must be non-negative");
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  Net net{delta, {}};
  for (Vertex v : ids) {
    bool covered = std::any_of(net.points.begin(), net.points.end(), [&](Vertex y) { return dm.at(v, y) <= delta; });
    if (!covered) net.points.push_back(v);
  }
  return net;
}

namespace {

// Multiplicity vectors for one chosen subset: each entry in [1, limit[i]], total at most budget.
template <class F>
bool for_each_multiplicity(const std::vector<int>& limit, int budget, F&& f) {
  const std::size_t m = limit.size();
  std::vector<int> d(m, 1);
  if (static_cast<int>(m) > budget) return false;
  for (std::size_t i = 0; i < m; ++i)
    if (limit[i] < 1) return false;
  int total = static_cast<int>(m);
  for (;;) {
    if (f(d)) return true;
    // Odometer, last position fastest, skipping vectors over budget.
    std::size_t pos = m;
    while (pos > 0) {
      --pos;
      if (d[pos] < limit[pos] && total < budget) {
        ++d[pos];
        ++total;
        break;
      }
      total -= d[pos] - 1;
      d[pos] = 1;
      if (pos == 0) return false;
    }
    if (m == 0) return false;
  }
}

}  // namespace

EpasDecision decide_epas_dd(const Instance& pruned, const DistanceMatrix& dm, const Rational& rho,
                            const Rational& eps, std::size_t net_size_cap) {
  if (eps <= Rational(0)) throw std::invalid_argument("eps must be positive");
  EpasDecision out;
  const Rational radius = eps * rho;
  const Rational stretched = (Rational(1) + Rational(2) * eps) * rho;
  Net net = greedy_net(pruned.suppliers, dm, radius);
  out.net_size = net.points.size();
  if (net.points.size() > net_size_cap) {
    out.net_too_large = true;
    return out;
  }

  // Cells: suppliers within radius of y and of no earlier net point.
  // Sorted by capacity (infinite first), then id.
  std::vector<std::vector<Vertex>> cell(net.points.size());
  std::vector<bool> taken(pruned.n, false);
  for (std::size_t i = 0; i < net.points.size(); ++i) {
    for (Vertex s : pruned.suppliers) {
      if (taken[s] || dm.at(s, net.points[i]) > radius) continue;
      taken[s] = true;
      cell[i].push_back(s);
    }
    std::stable_sort(cell[i].begin(), cell[i].end(), [&](Vertex a, Vertex b) {
      auto ca = pruned.capacity(a), cb = pruned.capacity(b);
      if (!ca || !cb) return !ca && cb;
      return *ca > *cb;
    });
  }

  const auto n_clients = static_cast<std::int64_t>(pruned.clients.size());
  std::vector<Vertex> index(net.points.size());
  for (std::size_t i = 0; i < index.size(); ++i) index[i] = static_cast<Vertex>(i);
  std::vector<Vertex> S;
  for_each_subset(index, pruned.k, [&](const std::vector<Vertex>& chosen) {
    std::vector<int> limit;
    for (Vertex i : chosen) limit.push_back(static_cast<int>(cell[i].size()));
    return for_each_multiplicity(limit, pruned.k, [&](const std::vector<int>& d) {
      ++out.configs_tried;
      S.clear();
      std::int64_t room = pruned.p;
      for (std::size_t j = 0; j < chosen.size(); ++j) {
        for (int t = 0; t < d[j]; ++t) {
          Vertex s = cell[chosen[j]][t];
          S.push_back(s);
          auto cap = pruned.capacity(s);
          room += cap ? std::min(*cap, n_clients) : n_clients;
        }
      }
      if (room < n_clients && !pruned.self_service) return false;
      if (auto a = feasible_assignment(pruned, dm, S, stretched)) {
        out.assignment = std::move(a);
        out.opened = S;
        std::sort(out.opened.begin(), out.opened.end());
        return true;
      }
      return false;
    });
  });
  return out;
}

EpasResult solve_epas_dd(const Instance& inst, const Rational& eps, std::size_t net_size_cap) {
  return solve_epas_dd(inst, shortest_paths(inst), eps, net_size_cap);
}

EpasResult solve_epas_dd(const Instance& inst, const DistanceMatrix& dm, const Rational& eps,
                         std::size_t net_size_cap) {
  if (eps <= Rational(0)) throw std::invalid_argument("eps must be positive");
  const Rational half = eps / Rational(2);
  std::vector<Rational> costs = candidate_costs(inst, dm);
  if (costs.empty() || costs.front() != Rational(0)) costs.insert(costs.begin(), Rational(0));
  EpasResult res;
  for (const Rational& rho : costs) {
    Instance pruned = prune_suppliers(inst, dm, rho);
    EpasDecision dec = decide_epas_dd(pruned, dm, rho, half, net_size_cap);
    res.configs_tried += dec.configs_tried;
    res.net_size = dec.net_size;
    res.net_cap_hit = res.net_cap_hit || dec.net_too_large;
    if (dec.assignment) {
      res.assignment = std::move(*dec.assignment);
      res.cost = assignment_cost(res.assignment, dm);
      res.rho = rho;
      return res;
    }
  }
  throw NoFeasibleSolution(res.net_cap_hit ? "no solution found; the net size cap rejected some costs"
                                           : "no feasible solution at any candidate cost");
}

}  // namespace ckswo
