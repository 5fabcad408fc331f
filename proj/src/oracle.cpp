#include "ckswo/oracle.hpp"

#include <map>

#include "ckswo/errors.hpp"
#include "ckswo/flow.hpp"

namespace ckswo {
namespace {

std::uint64_t binomial_prefix(std::uint64_t n, std::uint64_t k) {
  std::uint64_t total = 0, term = 1;
  for (std::uint64_t i = 0; i <= std::min(n, k); ++i) {
    total += term;
    if (total > kOracleGuard) return kOracleGuard + 1;
    term = term * (n - i) / (i + 1);
  }
  return total;
}

std::vector<Rational> sweep_costs(const Instance& inst, const DistanceMatrix& dm) {
  std::vector<Rational> costs = candidate_costs(inst, dm);
  if (costs.empty() || costs.front() != Rational(0)) costs.insert(costs.begin(), Rational(0));
  return costs;
}

std::uint64_t checked_pow(std::uint64_t base, std::size_t exp) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    r *= base;
    if (r > kOracleGuard) return kOracleGuard + 1;
  }
  return r;
}

bool plain_feasible(const Instance& inst, const DistanceMatrix& dm, const std::vector<Vertex>& choice,
                    const Rational& rho) {
  int outliers = 0;
  std::map<Vertex, std::int64_t> load;
  for (std::size_t i = 0; i < inst.clients.size(); ++i) {
    Vertex c = inst.clients[i], s = choice[i];
    if (s == kOutlier) {
      ++outliers;
      continue;
    }
    if (dm.at(c, s) > rho) return false;
    if (!(inst.self_service && s == c)) ++load[s];
  }
  if (outliers > inst.p) return false;
  for (const auto& [s, used] : load)
    if (auto cap = inst.capacity(s); cap && used > *cap) return false;
  return true;
}

}  // namespace

std::optional<OracleResult> brute_force_opt(const Instance& inst, const DistanceMatrix& dm) {
  const std::vector<Rational> costs = sweep_costs(inst, dm);
  std::uint64_t subsets = binomial_prefix(inst.suppliers.size(), static_cast<std::uint64_t>(inst.k));
  if (subsets > kOracleGuard || subsets * costs.size() > kOracleGuard)
    throw GuardExceeded("oracle: too many supplier subsets for exhaustive search");

  for (const Rational& rho : costs) {
    std::optional<OracleResult> found;
    for_each_subset(inst.suppliers, inst.k, [&](const std::vector<Vertex>& S) {
      if (auto a = feasible_assignment(inst, dm, S, rho)) {
        found = OracleResult{assignment_cost(*a, dm), std::move(*a), S};
        return true;
      }
      return false;
    });
    if (found) return found;
  }
  return std::nullopt;
}

bool brute_force_assignment_check(const Instance& inst, const DistanceMatrix& dm, const std::vector<Vertex>& S,
                                  const Rational& rho) {
  if (checked_pow(S.size() + 1, inst.clients.size()) > kOracleGuard)
    throw GuardExceeded("assignment enumeration too large");
  std::vector<Vertex> options{kOutlier};
  options.insert(options.end(), S.begin(), S.end());
  std::vector<std::size_t> digit(inst.clients.size(), 0);
  std::vector<Vertex> choice(inst.clients.size(), kOutlier);
  for (;;) {
    for (std::size_t i = 0; i < digit.size(); ++i) choice[i] = options[digit[i]];
    if (plain_feasible(inst, dm, choice, rho)) return true;
    std::size_t pos = 0;
    while (pos < digit.size() && ++digit[pos] == options.size()) digit[pos++] = 0;
    if (pos == digit.size()) return false;
  }
}

std::optional<Rational> enumeration_opt(const Instance& inst, const DistanceMatrix& dm) {
  const std::vector<Rational> costs = sweep_costs(inst, dm);
  std::uint64_t per_subset = checked_pow(std::min<std::size_t>(inst.k, inst.suppliers.size()) + 1, inst.clients.size());
  std::uint64_t subsets = binomial_prefix(inst.suppliers.size(), static_cast<std::uint64_t>(inst.k));
  if (per_subset > kOracleGuard || subsets > kOracleGuard || per_subset * subsets > kOracleGuard)
    throw GuardExceeded("assignment enumeration too large");
  for (const Rational& rho : costs) {
    bool ok = for_each_subset(inst.suppliers, inst.k, [&](const std::vector<Vertex>& S) {
      return brute_force_assignment_check(inst, dm, S, rho);
    });
    if (ok) return rho;
  }
  return std::nullopt;
}

}  // namespace ckswo
