// Acceptance run: one PASS/FAIL line per criterion.  A criterion fails if any
// instance violates it or if it overruns its time limit.  Exit status is the
// number of failed criteria.

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "ckswo/assignment.hpp"
#include "ckswo/flow.hpp"
#include "ckswo/gadgets.hpp"
#include "ckswo/generators.hpp"
#include "ckswo/instance.hpp"
#include "ckswo/metric.hpp"
#include "ckswo/net_epas.hpp"
#include "ckswo/oracle.hpp"
#include "ckswo/tree_decomposition.hpp"
#include "ckswo/tw_dp.hpp"

using namespace ckswo;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;   // counts on success, first counterexample on failure
};

// Records the first failure only; later ones would just repeat the story.
struct Tally {
  Outcome out;
  void fail(const std::string& why) {
    if (out.ok) out.detail = why;
    out.ok = false;
  }
};

std::vector<Rational> sweep(const Instance& inst, const DistanceMatrix& dm) {
  std::vector<Rational> costs = candidate_costs(inst, dm);
  if (costs.empty() || costs.front() != Rational(0)) costs.insert(costs.begin(), Rational(0));
  return costs;
}

// Oracle decision at one cost: some subset of at most k suppliers routes every client.
bool oracle_decides(const Instance& inst, const DistanceMatrix& dm, const Rational& rho) {
  return for_each_subset(inst.suppliers, inst.k, [&](const std::vector<Vertex>& S) {
    return feasible_assignment(inst, dm, S, rho).has_value();
  });
}

std::string tag(std::uint64_t seed) { return "seed " + std::to_string(seed); }

// 1. Flow feasibility agrees with assignment enumeration.
Outcome flow_vs_enumeration() {
  Tally t;
  std::uint64_t checks = 0;
  const int instances = 500;
  for (std::uint64_t seed = 1; seed <= instances; ++seed) {
    Rng rng(seed * 7919);
    const int ns = static_cast<int>(rng.between(1, 3));
    const int nc = static_cast<int>(rng.between(1, 6));
    const int k = static_cast<int>(rng.between(0, ns));
    const int p = static_cast<int>(rng.between(0, std::min(nc, 2)));
    std::optional<CapacityRange> caps;
    if (rng.below(4) != 0) caps = CapacityRange{1, static_cast<std::int64_t>(rng.between(1, 4))};
    const Instance inst = gen_random_euclidean(ns, nc, static_cast<int>(rng.between(1, 3)), k, p, caps, seed);
    const DistanceMatrix dm = shortest_paths(inst);
    for (const Rational& rho : sweep(inst, dm))
      for_each_subset(inst.suppliers, inst.k, [&](const std::vector<Vertex>& S) {
        ++checks;
        const auto a = feasible_assignment(inst, dm, S, rho);
        if (a.has_value() != brute_force_assignment_check(inst, dm, S, rho))
          t.fail(tag(seed) + " rho " + rho.to_string() + ": flow and enumeration disagree");
        if (a && !validate_assignment(inst, dm, *a, rho).ok())
          t.fail(tag(seed) + ": flow assignment does not validate");
        return false;
      });
  }
  if (t.out.ok) t.out.detail = std::to_string(instances) + " instances, " + std::to_string(checks) + " (S, rho) pairs";
  return t.out;
}

// 2. EPAS cost within (1 + eps) OPT.
Outcome epas_guarantee() {
  Tally t;
  const Rational epsilons[] = {Rational(1, 2), Rational(1, 4), Rational(1, 10)};
  int solved = 0, skipped = 0;
  std::uint64_t configs = 0;
  Rational worst(1);
  for (std::uint64_t seed = 1; solved < 200; ++seed) {
    Rng rng(seed * 104729);
    const int ns = static_cast<int>(rng.between(2, 8));
    const int nc = static_cast<int>(rng.between(2, 20 - ns));
    const int k = static_cast<int>(rng.between(1, std::min(3, ns)));
    const int p = static_cast<int>(rng.between(0, 2));
    std::optional<CapacityRange> caps;
    if (rng.coin()) caps = CapacityRange{1, static_cast<std::int64_t>(rng.between(2, 8))};
    const Instance inst = gen_random_euclidean(ns, nc, static_cast<int>(rng.between(1, 3)), k, p, caps, seed);
    const DistanceMatrix dm = shortest_paths(inst);
    const auto opt = brute_force_opt(inst, dm);
    if (!opt) {
      ++skipped;
      continue;
    }
    ++solved;
    for (const Rational& eps : epsilons) {
      try {
        const EpasResult res = solve_epas_dd(inst, dm, eps);
        configs += res.configs_tried;
        if (!validate_assignment(inst, dm, res.assignment, res.cost).ok())
          t.fail(tag(seed) + " eps " + eps.to_string() + ": assignment does not validate");
        if (res.cost > (Rational(1) + eps) * opt->cost)
          t.fail(tag(seed) + " eps " + eps.to_string() + ": cost " + res.cost.to_string() + " vs OPT " +
                 opt->cost.to_string());
        if (opt->cost > Rational(0)) worst = std::max(worst, res.cost / opt->cost);
      } catch (const std::exception& ex) {
        t.fail(tag(seed) + " eps " + eps.to_string() + ": " + ex.what());
      }
    }
  }
  if (t.out.ok)
    t.out.detail = std::to_string(solved) + " solved instances (" + std::to_string(skipped) +
                   " infeasible skipped), worst ratio " + worst.to_string() + ", " + std::to_string(configs) +
                   " configurations";
  return t.out;
}

// 3. Greedy nets cover and pack.
Outcome net_invariants() {
  Tally t;
  const int sets = 1000;
  for (std::uint64_t seed = 1; seed <= sets; ++seed) {
    Rng rng(seed * 31337);
    const int n = static_cast<int>(rng.between(1, 25));
    const int dims = static_cast<int>(rng.between(1, 3));
    std::vector<std::array<std::int64_t, 3>> pts(n);
    for (auto& pt : pts)
      for (int d = 0; d < dims; ++d) pt[d] = rng.between(0, 1000);
    // Complete graph; lengths are grid distances rounded up and become a metric after shortest paths.
    Instance inst;
    inst.n = n;
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v) {
        std::int64_t sq = 0;
        for (int d = 0; d < dims; ++d) sq += (pts[u][d] - pts[v][d]) * (pts[u][d] - pts[v][d]);
        std::int64_t len = 0;
        while (len * len < sq) ++len;
        inst.edges.push_back({u, v, Rational(std::max<std::int64_t>(len, 1), 1000)});
      }
    for (int v = 0; v < n; ++v) inst.suppliers.push_back(v);
    const DistanceMatrix dm = shortest_paths(inst);
    const Rational delta(rng.between(0, 1200), 1000);
    const Net net = greedy_net(inst.suppliers, dm, delta);
    for (Vertex v : inst.suppliers) {
      bool covered = false;
      for (Vertex y : net.points) covered |= dm.at(v, y) <= delta;
      if (!covered) t.fail(tag(seed) + ": vertex " + std::to_string(v) + " uncovered");
    }
    for (std::size_t i = 0; i < net.points.size(); ++i)
      for (std::size_t j = i + 1; j < net.points.size(); ++j)
        if (dm.at(net.points[i], net.points[j]) <= delta) t.fail(tag(seed) + ": packing violated");
  }
  if (t.out.ok) t.out.detail = std::to_string(sets) + " point sets";
  return t.out;
}

struct TwCase {
  std::uint64_t seed;
  Instance inst;
  TreeDecomposition td;
};

std::vector<TwCase> tw_corpus() {
  std::vector<TwCase> out;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    Rng rng(seed * 6151);
    const int n = static_cast<int>(rng.between(4, 14));
    const int tw = static_cast<int>(rng.between(1, 3));
    const int k = static_cast<int>(rng.between(1, 3));
    const int p = static_cast<int>(rng.between(0, 2));
    auto [inst, td] = gen_random_bounded_tw(n, tw, k, p, seed);
    out.push_back({seed, std::move(inst), std::move(td)});
  }
  return out;
}

// 4. Exact table decides like the oracle at every candidate cost.
Outcome exact_tw_vs_oracle(const std::vector<TwCase>& corpus) {
  Tally t;
  int decisions = 0, yes = 0;
  for (const TwCase& c : corpus) {
    const DistanceMatrix dm = shortest_paths(c.inst);
    const NiceTreeDecomposition ntd = make_nice(c.td);
    for (const Rational& rho : sweep(c.inst, dm)) {
      const TwDecision dec = exact_tw_decide(c.inst, ntd, rho.to_integer());
      const bool oracle = oracle_decides(c.inst, dm, rho);
      ++decisions;
      yes += oracle;
      if (dec.labelling.has_value() != oracle)
        t.fail(tag(c.seed) + " rho " + rho.to_string() + ": table says " + (oracle ? "no" : "yes"));
      if (!dec.stats.within_bound) t.fail(tag(c.seed) + ": table exceeds its size bound");
    }
  }
  if (t.out.ok)
    t.out.detail = std::to_string(corpus.size()) + " instances, " + std::to_string(decisions) + " decisions (" +
                   std::to_string(yes) + " yes)";
  return t.out;
}

// 5. Rounded table: complete against the exact one, sound at (1 + eps)^2 rho.
Outcome approx_tw(const std::vector<TwCase>& corpus) {
  Tally t;
  int decisions = 0;
  for (const TwCase& c : corpus) {
    const DistanceMatrix dm = shortest_paths(c.inst);
    const Instance closed = bag_metric_closure(c.inst, dm, c.td);
    const NiceTreeDecomposition ntd = make_nice(c.td);
    for (const Rational& rho : sweep(c.inst, dm)) {
      const std::int64_t r = rho.to_integer();
      const bool exact_yes = exact_tw_decide(c.inst, ntd, r).labelling.has_value();
      for (const Rational eps : {Rational(1, 5), Rational(1, 10)}) {
        ++decisions;
        const TwDecision dec = approx_tw_decide(closed, ntd, r, eps);
        if (exact_yes && !dec.labelling)
          t.fail(tag(c.seed) + " rho " + rho.to_string() + " eps " + eps.to_string() + ": exact yes, rounded no");
        if (!dec.labelling) continue;
        try {
          const Assignment a = labelling_to_solution(closed, dm, *dec.labelling);
          const Rational bound = (Rational(1) + eps) * (Rational(1) + eps) * rho;
          if (!validate_assignment(c.inst, dm, a, bound).ok())
            t.fail(tag(c.seed) + " rho " + rho.to_string() + ": rounded solution above (1+eps)^2 rho");
        } catch (const std::exception& ex) {
          t.fail(tag(c.seed) + " rho " + rho.to_string() + ": " + ex.what());
        }
      }
    }
  }
  if (t.out.ok) t.out.detail = std::to_string(decisions) + " rounded decisions";
  return t.out;
}

// 6. Closing bags over shortest paths leaves the optimum alone.
Outcome closure_neutral() {
  Tally t;
  const int fixtures = 50;
  for (std::uint64_t seed = 1; seed <= fixtures; ++seed) {
    Rng rng(seed * 2903);
    auto [inst, td] = gen_random_bounded_tw(static_cast<int>(rng.between(5, 12)), static_cast<int>(rng.between(1, 3)),
                                            static_cast<int>(rng.between(1, 3)), static_cast<int>(rng.between(0, 2)),
                                            seed + 5000);
    if (seed % 2 == 0)
      for (Vertex s : inst.suppliers) inst.capacities[s] = rng.between(1, 3);
    if (seed % 3 == 0) td = min_degree_decomposition(inst);
    const DistanceMatrix dm = shortest_paths(inst);
    const Instance closed = bag_metric_closure(inst, dm, td);
    const auto before = brute_force_opt(inst, dm);
    const auto after = brute_force_opt(closed, shortest_paths(closed));
    if (before.has_value() != after.has_value() || (before && before->cost != after->cost))
      t.fail(tag(seed) + ": optimum changed by closure");
  }
  if (t.out.ok) t.out.detail = std::to_string(fixtures) + " fixtures";
  return t.out;
}

// 7. Structural invariants of the reduction.
Outcome gadget_structure() {
  Tally t;
  std::ostringstream sizes;
  for (int k : {2, 3})
    for (int N : {2, 3}) {
      const MccInstance mcc = gen_planted_mcc(k, N, N, 40 + k * 10 + N);
      const GadgetInstance gi = gen_mcc_gadget(mcc);
      const std::string name = "k=" + std::to_string(k) + " N=" + std::to_string(N);
      if (gi.kbar != 7 * k * (k - 1) + 2 * k) t.fail(name + ": kbar");
      if (2 * static_cast<int>(gi.marked.size()) != 13 * k * k - 11 * k) t.fail(name + ": |Z|");
      for (const std::string& v : check_gadget_structure(gi, k)) t.fail(name + ": " + v);
      sizes << ' ' << name << " n=" << gi.instance.n;
    }
  if (t.out.ok) t.out.detail = "4 gadgets," + sizes.str();
  return t.out;
}

// 8. A planted clique yields a flow-feasible solution of cost lambda and size kbar.
Outcome clique_solution() {
  Tally t;
  for (int N : {2, 3}) {
    const MccInstance mcc = gen_planted_mcc(2, N, N, 90 + N);
    const GadgetInstance gi = gen_mcc_gadget(mcc);
    std::vector<int> clique;
    for (const auto& cls : mcc.classes) clique.push_back(cls.front());
    const std::vector<Vertex> D = clique_to_solution(mcc, clique, gi);
    const std::string name = "N=" + std::to_string(N);
    if (static_cast<int>(D.size()) != gi.kbar) t.fail(name + ": |D| != kbar");
    const DistanceMatrix dm = shortest_paths_from(gi.instance, D);
    const auto a = feasible_assignment(gi.instance, dm, D, gi.lambda);
    if (!a) t.fail(name + ": D is not flow-feasible at lambda");
    else if (!validate_assignment(gi.instance, dm, *a, gi.lambda).ok()) t.fail(name + ": assignment does not validate");
  }
  if (t.out.ok) t.out.detail = "k=2 with N=2 and N=3";
  return t.out;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit_seconds;
    std::function<Outcome()> run;
  };
  const std::vector<TwCase> corpus = tw_corpus();
  const std::vector<Criterion> criteria = {
      {1, "flow feasibility equals assignment enumeration", 60, flow_vs_enumeration},
      {2, "epas-dd cost within (1+eps) OPT", 600, epas_guarantee},
      {3, "greedy net cover and packing", 60, net_invariants},
      {4, "exact tw table equals oracle decisions", 600, [&] { return exact_tw_vs_oracle(corpus); }},
      {5, "rounded tw table complete and sound", 600, [&] { return approx_tw(corpus); }},
      {6, "bag metric closure keeps the optimum", 120, closure_neutral},
      {7, "gadget structural suite", 120, gadget_structure},
      {8, "planted clique gives a solution of cost lambda", 120, clique_solution},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& ex) {
      out = {false, std::string("exception: ") + ex.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > c.limit_seconds) {
      out.ok = false;
      out.detail += "; over the time limit";
    }
    failed += !out.ok;
    std::printf("%s criterion %d: %s [%s] (%.2fs, limit %.0fs)\n", out.ok ? "PASS" : "FAIL", c.id, c.name,
                out.detail.c_str(), secs, c.limit_seconds);
    std::fflush(stdout);
  }
  return failed;
}
