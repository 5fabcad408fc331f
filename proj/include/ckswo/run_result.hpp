#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

#include "ckswo/assignment.hpp"
#include "ckswo/instance.hpp"
#include "ckswo/net_epas.hpp"
#include "ckswo/tree_decomposition.hpp"

namespace ckswo {

enum class Algorithm { EpasDd, TwExact, TwApprox, Oracle };

Algorithm parse_algorithm(const std::string& name);
std::string algorithm_name(Algorithm a);

struct SolveOptions {
  Algorithm algorithm = Algorithm::Oracle;
  Rational eps{1, 10};
  std::optional<Rational> rho;  // decide at this cost instead of sweeping
  std::size_t net_cap = kUnboundedNet;
  std::optional<TreeDecomposition> td;  // tw algorithms; heuristic when absent
};

/// Machine-readable outcome.  `cost` and `assignment` are present exactly when
/// verdict == "solved".  Verdicts: solved, infeasible, no-solution-at-rho, net-too-large.
struct RunResult {
  std::string algorithm;
  std::string instance_digest;
  std::string verdict;
  std::optional<Rational> cost;
  std::optional<Assignment> assignment;
  std::optional<Rational> rho_star;
  std::optional<std::size_t> net_size;
  std::optional<std::uint64_t> configs_tried;
  std::optional<Rational> eps;
  std::optional<Rational> rho;
  std::optional<Rational> delta;
  std::optional<int> height;
  std::optional<bool> bound_advertised;
  double wall_seconds = 0;

  [[nodiscard]] bool solved() const { return verdict == "solved"; }
};

/// Runs one solver and re-validates any assignment it returns against the
/// instance; a failed re-validation throws std::logic_error.
RunResult run_solver(const Instance& inst, const SolveOptions& opt);

std::string to_json(const RunResult& r);
RunResult run_result_from_json(const std::string& text);

}  // namespace ckswo
