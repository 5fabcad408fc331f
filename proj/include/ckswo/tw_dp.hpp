#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "ckswo/assignment.hpp"
#include "ckswo/instance.hpp"
#include "ckswo/label_arith.hpp"
#include "ckswo/metric.hpp"
#include "ckswo/tree_decomposition.hpp"

namespace ckswo {

/// Per-vertex label codes (see label_arith.hpp) plus the scale they live on.
struct Labelling {
  LabelMode mode = LabelMode::Exact;
  std::int64_t rho = 0;
  Rational eps{0};  // approx only
  int height = 1;   // approx only
  std::vector<int> code;

  [[nodiscard]] LabelScale scale() const;
};

/// Which labels each vertex may take in the table.
///  Full:     every code of the scale.
///  Anchored: the codes reached by single-source label propagation from some
///            supplier.  Decides the same instances as Full: the pointwise
///            least labelling with a given zero set is the minimum of the
///            single-source ones, and it dominates every labelling with that zero set.
enum class LabelDomain { Anchored, Full };

struct DpStats {
  std::size_t max_node_entries = 0;
  std::size_t total_entries = 0;
  std::size_t max_domain = 0;
  bool within_bound = true;  // entries <= (|labels|+2)^|bag| * 2^|bag| * (k+1)(p+1) at every node
};

struct TwDecision {
  std::optional<Labelling> labelling;
  DpStats stats;
};

class InvalidLabelling : public std::runtime_error {
 public:
  InvalidLabelling(const std::string& what, Vertex witness) : std::runtime_error(what), witness(witness) {}
  Vertex witness;
};

/// Throws InputError unless lengths are integral, suppliers and clients are
/// disjoint and every capacity is infinite.
void require_tw_input(const Instance& inst);

TwDecision exact_tw_decide(const Instance& inst, const NiceTreeDecomposition& ntd, std::int64_t rho,
                           LabelDomain domain = LabelDomain::Anchored);

/// Expects `inst` to be closed over the bags of `ntd` (bag_metric_closure).
TwDecision approx_tw_decide(const Instance& inst, const NiceTreeDecomposition& ntd, std::int64_t rho,
                            const Rational& eps, LabelDomain domain = LabelDomain::Anchored);

/// Opens the label-0 vertices, sends each finite client to its nearest open
/// supplier (smaller id on ties) and drops infinite clients.  Throws
/// InvalidLabelling naming an unsatisfied vertex.
Assignment labelling_to_solution(const Instance& inst, const DistanceMatrix& dm, const Labelling& dl);

struct TwResult {
  Assignment assignment;
  Rational cost;
  std::int64_t rho = 0;
  Labelling labelling;
  int height = 0;
  Rational delta{0};
  bool bound_advertised = true;  // false when eps >= 1/4
};

/// Closes the instance over the bags, then sweeps 0 and the integer candidate
/// costs ascending.  `td` null means a min-degree heuristic decomposition.
/// `eps` null means the exact table.  Throws NoFeasibleSolution.
TwResult solve_tw(const Instance& inst, const TreeDecomposition* td, const std::optional<Rational>& eps,
                  LabelDomain domain = LabelDomain::Anchored);

}  // namespace ckswo
