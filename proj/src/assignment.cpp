#include "ckswo/assignment.hpp"

#include <algorithm>
#include <set>

namespace ckswo {

std::vector<Vertex> Assignment::open_suppliers() const {
  std::set<Vertex> open;
  for (const auto& [c, s] : phi)
    if (s != kOutlier) open.insert(s);
  return {open.begin(), open.end()};
}

int Assignment::outlier_count() const {
  return static_cast<int>(std::count_if(phi.begin(), phi.end(), [](const auto& kv) { return kv.second == kOutlier; }));
}

Rational assignment_cost(const Assignment& a, const DistanceMatrix& dm) {
  Rational cost(0);
  for (const auto& [c, s] : a.phi)
    if (s != kOutlier) cost = std::max(cost, dm.at(c, s));
  return cost;
}

std::string ValidationReport::summary() const {
  std::string out;
  for (const Violation& v : violations) {
    if (!out.empty()) out += "; ";
    out += v.message;
  }
  return out;
}

ValidationReport validate_assignment(const Instance& inst, const DistanceMatrix& dm, const Assignment& a,
                                     const Rational& rho) {
  ValidationReport rep;
  auto add = [&](ViolationKind kind, std::string msg) { rep.violations.push_back({kind, std::move(msg)}); };

  for (Vertex c : inst.clients)
    if (!a.phi.count(c)) add(ViolationKind::NotTotal, "client " + std::to_string(c) + " unassigned");
  for (const auto& [c, s] : a.phi) {
    if (!inst.is_client(c)) add(ViolationKind::NotTotal, "vertex " + std::to_string(c) + " is not a client");
    if (s != kOutlier && !inst.is_supplier(s))
      add(ViolationKind::NotSupplier, "client " + std::to_string(c) + " assigned to non-supplier " + std::to_string(s));
  }

  std::map<Vertex, std::int64_t> load;
  for (const auto& [c, s] : a.phi) {
    if (s == kOutlier) continue;
    if (!(inst.self_service && c == s)) ++load[s];
    const Rational& d = dm.at(c, s);
    if (d > rho)
      add(ViolationKind::Distance, "client " + std::to_string(c) + " at distance " + d.to_string() + " > " +
                                       rho.to_string() + " from " + std::to_string(s));
  }
  // A self-served supplier is open even though its load is zero.
  auto open = a.open_suppliers();
  if (open.size() > static_cast<std::size_t>(inst.k))
    add(ViolationKind::Budget, std::to_string(open.size()) + " suppliers open, k = " + std::to_string(inst.k));
  if (int o = a.outlier_count(); o > inst.p)
    add(ViolationKind::Outliers, std::to_string(o) + " outliers, p = " + std::to_string(inst.p));
  for (const auto& [s, used] : load) {
    if (!inst.is_supplier(s)) continue;
    if (auto cap = inst.capacity(s); cap && used > *cap)
      add(ViolationKind::Capacity,
          "supplier " + std::to_string(s) + " serves " + std::to_string(used) + " > L = " + std::to_string(*cap));
  }
  return rep;
}

}  // namespace ckswo
