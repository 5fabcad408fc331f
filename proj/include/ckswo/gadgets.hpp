#pragma once

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ckswo/instance.hpp"

namespace ckswo {

/// Multicolored Clique input.  Classes are independent sets of exactly N
/// vertices; every pair of classes is joined by exactly M edges.
struct MccInstance {
  int k = 0;
  int N = 0;
  std::vector<std::vector<int>> classes;
  std::vector<std::pair<int, int>> edges;

  /// Throws InputError naming the violated condition.
  void validate() const;
  /// Edges between each pair of classes (valid instances only).
  [[nodiscard]] int M() const;
};

MccInstance load_mcc(std::string_view text);
std::string dump_mcc(const MccInstance& mcc);

using ClassPair = std::pair<int, int>;  // 0-based class indices

/// The CkC instance built from an MccInstance, with handles on every gadget part.
/// Suppliers = clients = all vertices, k = kbar, p = 0, self-service on.
struct GadgetInstance {
  Instance instance;
  Rational lambda;
  int kbar = 0;

  std::vector<Vertex> marked;       // Z, in creation order
  std::vector<Vertex> big_sets;     // union of the S_i and S_ij
  std::vector<Vertex> subdivision;  // middle vertices of arrow paths
  std::map<Vertex, std::vector<Vertex>> private_of;  // marked vertex -> its kbar+1 pendants

  std::vector<Vertex> x_class;                     // x_i
  std::vector<std::vector<Vertex>> class_vertex;   // class_vertex[i][j] = bar u for the j-th vertex of V_i
  std::map<ClassPair, Vertex> x_pair;              // x_ij, i < j
  std::map<ClassPair, std::vector<Vertex>> edge_vertex;  // bar E_ij, i < j, ordered as edge_order
  std::map<ClassPair, std::vector<ClassPair>> edge_order;  // class positions (a in V_i, b in V_j)
  std::map<ClassPair, Vertex> y, z, p, q, r, s;    // ordered pairs i != j
};

/// lambda must be at least 8.
GadgetInstance gen_mcc_gadget(const MccInstance& mcc, const Rational& lambda = Rational(8));

/// D = Z + the class vertices of the clique + the edge vertices between them.
/// `clique` holds one MCC vertex id per class, in class order.  Throws
/// InputError naming a missing edge.
std::vector<Vertex> clique_to_solution(const MccInstance& mcc, const std::vector<int>& clique,
                                       const GadgetInstance& gi);

/// Structural invariants; empty result means all hold.
std::vector<std::string> check_gadget_structure(const GadgetInstance& gi, int k);

}  // namespace ckswo
