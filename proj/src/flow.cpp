#include "ckswo/flow.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <stdexcept>

namespace ckswo {

FlowNetwork build_network(const Instance& inst, const DistanceMatrix& dm, const std::vector<Vertex>& S,
                          const Rational& rho) {
  FlowNetwork net;
  net.clients = inst.clients;
  net.suppliers = S;
  std::sort(net.suppliers.begin(), net.suppliers.end());
  net.suppliers.erase(std::unique(net.suppliers.begin(), net.suppliers.end()), net.suppliers.end());
  for (Vertex s : net.suppliers)
    if (!inst.is_supplier(s)) throw std::invalid_argument("vertex " + std::to_string(s) + " is not a supplier");
  net.outlier_node = 2 + static_cast<int>(net.clients.size() + net.suppliers.size());

  const auto n_clients = static_cast<std::int64_t>(net.clients.size());
  for (std::size_t i = 0; i < net.clients.size(); ++i) net.arcs.push_back({FlowNetwork::kSource, net.client_node(i), 1, 0});
  for (std::size_t i = 0; i < net.clients.size(); ++i) {
    Vertex c = net.clients[i];
    for (std::size_t j = 0; j < net.suppliers.size(); ++j)
      if (dm.at(c, net.suppliers[j]) <= rho) net.arcs.push_back({net.client_node(i), net.supplier_node(j), 1, 0});
    if (inst.self_service && std::binary_search(net.suppliers.begin(), net.suppliers.end(), c))
      net.arcs.push_back({net.client_node(i), FlowNetwork::kSink, 1, 0});
    net.arcs.push_back({net.client_node(i), net.outlier_node, 1, 0});
  }
  for (std::size_t j = 0; j < net.suppliers.size(); ++j) {
    auto cap = inst.capacity(net.suppliers[j]);
    std::int64_t c = cap ? std::min(*cap, n_clients) : n_clients;
    net.arcs.push_back({net.supplier_node(j), FlowNetwork::kSink, c, 0});
  }
  net.arcs.push_back({net.outlier_node, FlowNetwork::kSink, inst.p, 0});
  return net;
}

std::int64_t max_flow(FlowNetwork& net) {
  // Residual edge 2i is arc i forward, 2i+1 its reverse.
  const int nodes = net.node_count();
  std::vector<std::vector<int>> out(nodes);
  for (std::size_t i = 0; i < net.arcs.size(); ++i) {
    net.arcs[i].flow = 0;
    out[net.arcs[i].from].push_back(static_cast<int>(2 * i));
    out[net.arcs[i].to].push_back(static_cast<int>(2 * i + 1));
  }
  auto head = [&](int e) { return (e & 1) ? net.arcs[e >> 1].from : net.arcs[e >> 1].to; };
  auto residual = [&](int e) {
    const FlowArc& a = net.arcs[e >> 1];
    return (e & 1) ? a.flow : a.capacity - a.flow;
  };

  std::int64_t value = 0;
  std::vector<int> via(nodes);
  for (;;) {
    std::fill(via.begin(), via.end(), -1);
    std::queue<int> q;
    q.push(FlowNetwork::kSource);
    via[FlowNetwork::kSource] = -2;
    while (!q.empty() && via[FlowNetwork::kSink] == -1) {
      int u = q.front();
      q.pop();
      for (int e : out[u]) {
        int v = head(e);
        if (via[v] == -1 && residual(e) > 0) {
          via[v] = e;
          q.push(v);
        }
      }
    }
    if (via[FlowNetwork::kSink] == -1) break;
    std::int64_t push = std::numeric_limits<std::int64_t>::max();
    for (int v = FlowNetwork::kSink; v != FlowNetwork::kSource; v = net.arcs[via[v] >> 1].from ^ net.arcs[via[v] >> 1].to ^ v)
      push = std::min(push, residual(via[v]));
    for (int v = FlowNetwork::kSink; v != FlowNetwork::kSource;) {
      int e = via[v];
      FlowArc& a = net.arcs[e >> 1];
      a.flow += (e & 1) ? -push : push;
      v = (e & 1) ? a.to : a.from;
    }
    value += push;
  }
  return value;
}

std::optional<Assignment> feasible_assignment(const Instance& inst, const DistanceMatrix& dm,
                                              const std::vector<Vertex>& S, const Rational& rho) {
  FlowNetwork net = build_network(inst, dm, S, rho);
  if (max_flow(net) < static_cast<std::int64_t>(net.clients.size())) return std::nullopt;
  Assignment a;
  const int first_supplier = net.supplier_node(0);
  for (const FlowArc& arc : net.arcs) {
    if (arc.flow == 0 || arc.from < 2 || arc.from >= first_supplier) continue;
    Vertex c = net.clients[arc.from - 2];
    if (arc.to == net.outlier_node)
      a.phi[c] = kOutlier;
    else if (arc.to == FlowNetwork::kSink)
      a.phi[c] = c;
    else
      a.phi[c] = net.suppliers[arc.to - first_supplier];
  }
  return a;
}

}  // namespace ckswo
