#pragma once

#include <map>
#include <string>
#include <vector>

#include "ckswo/instance.hpp"
#include "ckswo/metric.hpp"

namespace ckswo {

inline constexpr Vertex kOutlier = -1;

/// client -> supplier, or kOutlier.
struct Assignment {
  std::map<Vertex, Vertex> phi;

  /// Distinct suppliers that serve at least one client, ascending.
  [[nodiscard]] std::vector<Vertex> open_suppliers() const;
  [[nodiscard]] int outlier_count() const;
};

/// Max distance over served clients; 0 when every client is an outlier.
Rational assignment_cost(const Assignment& a, const DistanceMatrix& dm);

enum class ViolationKind { NotTotal, NotSupplier, Budget, Outliers, Capacity, Distance };

struct Violation {
  ViolationKind kind;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  [[nodiscard]] bool ok() const { return violations.empty(); }
  [[nodiscard]] std::string summary() const;
};

/// Every way `a` fails to be a feasible solution of cost at most rho.
ValidationReport validate_assignment(const Instance& inst, const DistanceMatrix& dm, const Assignment& a,
                                     const Rational& rho);

}  // namespace ckswo
