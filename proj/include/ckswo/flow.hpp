#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ckswo/assignment.hpp"
#include "ckswo/instance.hpp"
#include "ckswo/metric.hpp"

namespace ckswo {

struct FlowArc {
  int from = 0;
  int to = 0;
  std::int64_t capacity = 0;
  std::int64_t flow = 0;
};

/// Assignment network for a fixed supplier set.
///
/// Node layout: source 0, sink 1, clients in ascending id order, the chosen
/// suppliers in ascending id order, then the outlier node.  Arcs are stored in
/// construction order, which is also the augmentation scan order.
struct FlowNetwork {
  static constexpr int kSource = 0;
  static constexpr int kSink = 1;
  int outlier_node = 2;
  std::vector<Vertex> clients;    // node 2 + i  <-> clients[i]
  std::vector<Vertex> suppliers;  // node 2 + |clients| + j  <-> suppliers[j]
  std::vector<FlowArc> arcs;

  [[nodiscard]] int node_count() const { return outlier_node + 1; }
  [[nodiscard]] int client_node(std::size_t i) const { return 2 + static_cast<int>(i); }
  [[nodiscard]] int supplier_node(std::size_t j) const { return 2 + static_cast<int>(clients.size() + j); }
};

/// Requires S to be a subset of the suppliers; duplicates are ignored.
FlowNetwork build_network(const Instance& inst, const DistanceMatrix& dm, const std::vector<Vertex>& S,
                          const Rational& rho);

/// Edmonds-Karp.  Writes integral arc flows into `net` and returns the value.
std::int64_t max_flow(FlowNetwork& net);

/// Assignment with image inside S, or nullopt if the max flow cannot route every client.
std::optional<Assignment> feasible_assignment(const Instance& inst, const DistanceMatrix& dm,
                                              const std::vector<Vertex>& S, const Rational& rho);

}  // namespace ckswo
