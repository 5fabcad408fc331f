#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ckswo/instance.hpp"
#include "ckswo/metric.hpp"

namespace ckswo {

struct TreeDecomposition {
  std::vector<std::vector<Vertex>> bags;
  std::vector<std::pair<int, int>> tree_edges;
  std::optional<int> root;

  [[nodiscard]] int width() const;
};

struct TdReport {
  std::vector<std::string> violations;
  int width = -1;
  [[nodiscard]] bool ok() const { return violations.empty(); }
};

/// Checks the bag tree is a tree and the three decomposition properties against
/// the instance graph.  Each violation names a witness.
TdReport validate_td(const Instance& inst, const TreeDecomposition& td);

enum class NiceKind { Leaf, Introduce, Forget, Join };

struct NiceNode {
  NiceKind kind = NiceKind::Leaf;
  std::vector<Vertex> bag;  // sorted
  Vertex vertex = -1;       // introduced or forgotten vertex
  int child = -1;
  int child2 = -1;  // Join only
};

/// Nodes are stored children-first; the root is the last node and has an empty bag.
struct NiceTreeDecomposition {
  std::vector<NiceNode> nodes;
  [[nodiscard]] int root() const { return static_cast<int>(nodes.size()) - 1; }
  [[nodiscard]] int width() const;
  [[nodiscard]] TreeDecomposition underlying() const;
};

/// Throws InputError if the bag graph is not a tree or some vertex's bags are disconnected.
NiceTreeDecomposition make_nice(const TreeDecomposition& td);

/// Shape violations: leaf bags non-empty, introduce/forget not a one-vertex step, join bags differ.
std::vector<std::string> check_nice(const NiceTreeDecomposition& ntd);

/// Leaves have height 1.
int height(const NiceTreeDecomposition& ntd);

/// Min-degree elimination ordering; one bag per eliminated vertex.
TreeDecomposition min_degree_decomposition(const Instance& inst);

/// Adds an edge of length dist(u, v) for each co-bagged pair that is not adjacent
/// and lies in the same component.
Instance bag_metric_closure(const Instance& inst, const DistanceMatrix& dm, const TreeDecomposition& td);

TreeDecomposition load_td(std::string_view text);
std::string dump_td(const TreeDecomposition& td);

}  // namespace ckswo
