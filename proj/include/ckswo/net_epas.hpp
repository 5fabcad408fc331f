#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "ckswo/assignment.hpp"
#include "ckswo/instance.hpp"
#include "ckswo/metric.hpp"

namespace ckswo {

/// Cover: every input point within `delta` of a net point.
/// Packing: distinct net points strictly farther apart than `delta`.
/// `points` is in insertion order, which fixes the order used to carve cells.
struct Net {
  Rational delta;
  std::vector<Vertex> points;
};

inline constexpr std::size_t kUnboundedNet = std::numeric_limits<std::size_t>::max();

/// Keeps the suppliers with some client within rho.  No validation: the result
/// may have fewer than k suppliers.
Instance prune_suppliers(const Instance& inst, const DistanceMatrix& dm, const Rational& rho);

/// Greedy scan in ascending id order.  delta must be non-negative.
Net greedy_net(std::vector<Vertex> ids, const DistanceMatrix& dm, const Rational& delta);

struct EpasDecision {
  std::optional<Assignment> assignment;
  std::vector<Vertex> opened;  // the replacement set S that succeeded
  std::size_t net_size = 0;
  std::uint64_t configs_tried = 0;
  bool net_too_large = false;
};

/// One decision at rho.  If a solution of cost rho exists and the net fits the
/// cap, returns an assignment valid at (1 + 2 eps) rho.
EpasDecision decide_epas_dd(const Instance& pruned, const DistanceMatrix& dm, const Rational& rho,
                            const Rational& eps, std::size_t net_size_cap = kUnboundedNet);

struct EpasResult {
  Assignment assignment;
  Rational cost;
  Rational rho;  // smallest swept cost that succeeded
  std::size_t net_size = 0;
  std::uint64_t configs_tried = 0;  // summed over the sweep
  bool net_cap_hit = false;         // some rho was rejected by the cap
};

/// Sweeps 0 and the candidate costs ascending with eps/2 per decision, so the
/// returned cost is at most (1 + eps) OPT.  Throws NoFeasibleSolution.
EpasResult solve_epas_dd(const Instance& inst, const Rational& eps, std::size_t net_size_cap = kUnboundedNet);
EpasResult solve_epas_dd(const Instance& inst, const DistanceMatrix& dm, const Rational& eps,
                         std::size_t net_size_cap = kUnboundedNet);

}  // namespace ckswo
