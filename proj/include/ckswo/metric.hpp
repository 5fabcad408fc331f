#pragma once

#include <vector>

#include "ckswo/instance.hpp"
#include "ckswo/rational.hpp"

namespace ckswo {

/// Shortest-path distances, either all rows or only the rows of chosen sources.
/// Lookups use symmetry, so at(u, v) works whenever u or v has a row.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;

  [[nodiscard]] int size() const { return n_; }
  [[nodiscard]] bool has_row(Vertex u) const { return row_of_[u] >= 0; }
  [[nodiscard]] bool complete() const { return rows_ == n_; }
  /// Throws std::out_of_range if neither endpoint has a row.
  [[nodiscard]] const Rational& at(Vertex u, Vertex v) const;

 private:
  friend DistanceMatrix shortest_paths_from(const Instance&, const std::vector<Vertex>&);
  int n_ = 0;
  int rows_ = 0;
  std::vector<int> row_of_;
  std::vector<Rational> data_;
};

/// Adjacency list with parallel edges collapsed to their minimum length.
struct Neighbor {
  Vertex to;
  Rational length;
};
std::vector<std::vector<Neighbor>> adjacency(const Instance& inst);

/// Dijkstra from every vertex.
DistanceMatrix shortest_paths(const Instance& inst);
/// Dijkstra from the given sources only.
DistanceMatrix shortest_paths_from(const Instance& inst, const std::vector<Vertex>& sources);

/// Sorted distinct finite client-supplier distances.
std::vector<Rational> candidate_costs(const Instance& inst, const DistanceMatrix& dm);

}  // namespace ckswo
