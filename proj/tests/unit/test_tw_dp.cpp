#include <doctest.h>

#include "ckswo/assignment.hpp"
#include "ckswo/errors.hpp"
#include "ckswo/generators.hpp"
#include "ckswo/instance.hpp"
#include "ckswo/label_arith.hpp"
#include "ckswo/metric.hpp"
#include "ckswo/oracle.hpp"
#include "ckswo/tree_decomposition.hpp"
#include "ckswo/tw_dp.hpp"
#include "test_support.hpp"

using namespace ckswo;

namespace {

NiceTreeDecomposition nice_for(const Instance& inst) { return make_nice(min_degree_decomposition(inst)); }

Instance star() { return load_instance_file(testing::fixture("star.json")); }

}  // namespace

TEST_CASE("label scales") {
  const LabelScale ex = LabelScale::exact(5);
  CHECK(ex.max_code() == 5);
  CHECK(ex.threshold(kZeroCode, 2) == 2);
  CHECK(ex.threshold(3, 2) == 5);
  CHECK(ex.threshold(4, 2) == kInfCode);
  CHECK(ex.satisfies(2, kZeroCode, 2));
  CHECK_FALSE(ex.satisfies(1, kZeroCode, 2));
  CHECK_FALSE(ex.satisfies(kInfCode, kZeroCode, 0));

  // delta = 1/2 / (2 * 1) = 1/4; codes are (5/4)^(c-1) up to (3/2) * 4 = 6.
  const LabelScale ap = LabelScale::approx(4, Rational(1, 2), 1);
  CHECK(ap.delta() == Rational(1, 4));
  // (5/4)^8 ~ 5.96 <= 6 < (5/4)^9 ~ 7.45, so the largest code is 9.
  CHECK(ap.max_code() == 9);
  // d / (1 + eps) = 3 / (3/2) = 2 against the zero label: least (5/4)^i >= 2 is i = 4.
  CHECK(ap.threshold(kZeroCode, 3) == 5);
}

TEST_CASE("exact decision on the star") {
  const Instance inst = star();
  const NiceTreeDecomposition ntd = nice_for(inst);
  const TwDecision yes = exact_tw_decide(inst, ntd, 2);
  REQUIRE(yes.labelling.has_value());
  CHECK(yes.labelling->code[0] == kZeroCode);
  CHECK(yes.stats.within_bound);
  CHECK_FALSE(exact_tw_decide(inst, ntd, 1).labelling.has_value());
  const Assignment a = labelling_to_solution(inst, shortest_paths(inst), *yes.labelling);
  CHECK(validate_assignment(inst, shortest_paths(inst), a, Rational(2)).ok());
}

TEST_CASE("all outliers when k = 0 and p = |V_C|") {
  Instance inst = star();
  inst.k = 0;
  inst.p = 3;
  const NiceTreeDecomposition ntd = nice_for(inst);
  for (const bool approx : {false, true}) {
    const TwDecision dec = approx ? approx_tw_decide(inst, ntd, 0, Rational(1, 5)) : exact_tw_decide(inst, ntd, 0);
    REQUIRE(dec.labelling.has_value());
    for (Vertex c : inst.clients) CHECK(dec.labelling->code[c] == kInfCode);
    const Assignment a = labelling_to_solution(inst, shortest_paths(inst), *dec.labelling);
    CHECK(a.outlier_count() == 3);
    CHECK(assignment_cost(a, shortest_paths(inst)) == Rational(0));
  }
}

TEST_CASE("a lone client with no budget is never served") {
  const Instance inst = load_instance(
      R"({"version":1,"n":2,"edges":[[0,1,1]],"suppliers":[0],"clients":[1],"k":0,"p":0})");
  const NiceTreeDecomposition ntd = nice_for(inst);
  for (std::int64_t rho = 0; rho <= 3; ++rho) {
    CHECK_FALSE(exact_tw_decide(inst, ntd, rho).labelling.has_value());
    CHECK_FALSE(exact_tw_decide(inst, ntd, rho, LabelDomain::Full).labelling.has_value());
    CHECK_FALSE(approx_tw_decide(inst, ntd, rho, Rational(1, 10)).labelling.has_value());
  }
}

TEST_CASE("approx decision on the star") {
  const Instance inst = star();
  const DistanceMatrix dm = shortest_paths(inst);
  const TreeDecomposition td = min_degree_decomposition(inst);
  const Instance closed = bag_metric_closure(inst, dm, td);
  const TwDecision dec = approx_tw_decide(closed, make_nice(td), 2, Rational(1, 2));
  REQUIRE(dec.labelling.has_value());
  const Assignment a = labelling_to_solution(closed, dm, *dec.labelling);
  CHECK(validate_assignment(inst, dm, a, Rational(9, 2)).ok());
  CHECK(assignment_cost(a, dm) == Rational(2));
}

TEST_CASE("labelling to solution") {
  const Instance inst = star();
  const DistanceMatrix dm = shortest_paths(inst);
  Labelling dl;
  dl.rho = 2;
  dl.code = {kZeroCode, 2, 2, 2};
  const Assignment a = labelling_to_solution(inst, dm, dl);
  CHECK(a.phi == std::map<Vertex, Vertex>{{1, 0}, {2, 0}, {3, 0}});

  Labelling inf = dl;
  inf.code = {kInfCode, kInfCode, kInfCode, kInfCode};
  CHECK(labelling_to_solution(inst, dm, inf).outlier_count() == 3);

  Labelling bad = dl;
  bad.code = {kZeroCode, 1, 2, 2};  // client 1 claims distance 1 over a length-2 edge
  try {
    labelling_to_solution(inst, dm, bad);
    FAIL("expected InvalidLabelling");
  } catch (const InvalidLabelling& ex) {
    CHECK(ex.witness == 1);
  }

  Labelling zero_client = dl;
  zero_client.code = {kZeroCode, kZeroCode, 2, 2};
  CHECK_THROWS_AS(labelling_to_solution(inst, dm, zero_client), InvalidLabelling);
}

TEST_CASE("unsupported inputs are rejected") {
  SUBCASE("finite capacity") {
    Instance inst = star();
    inst.capacities[0] = 2;
    CHECK_THROWS_AS(exact_tw_decide(inst, nice_for(inst), 2), InputError);
  }
  SUBCASE("overlapping suppliers and clients") {
    const Instance inst = load_instance(
        R"({"version":1,"n":2,"edges":[[0,1,1]],"suppliers":[0,1],"clients":[1],"k":1,"p":0})");
    CHECK_THROWS_AS(exact_tw_decide(inst, nice_for(inst), 1), InputError);
  }
  SUBCASE("fractional length") {
    const Instance inst = load_instance(
        R"({"version":1,"n":2,"edges":[[0,1,"1.5"]],"suppliers":[0],"clients":[1],"k":1,"p":0})");
    CHECK_THROWS_AS(exact_tw_decide(inst, nice_for(inst), 2), InputError);
  }
}

TEST_CASE("anchored and full label domains agree") {
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    const auto [inst, td] = gen_random_bounded_tw(7, 2, 2, 1, seed);
    const NiceTreeDecomposition ntd = make_nice(td);
    const DistanceMatrix dm = shortest_paths(inst);
    for (const Rational& rho : candidate_costs(inst, dm)) {
      const auto r = rho.to_integer();
      const TwDecision anchored = exact_tw_decide(inst, ntd, r);
      const TwDecision full = exact_tw_decide(inst, ntd, r, LabelDomain::Full);
      CHECK(anchored.labelling.has_value() == full.labelling.has_value());
      CHECK(full.stats.within_bound);
      CHECK(anchored.stats.max_domain <= full.stats.max_domain);
    }
  }
}

TEST_CASE("exact decisions match the test oracle on small tw instances") {
  for (std::uint64_t seed = 100; seed < 130; ++seed) {
    const auto [inst, td] = gen_random_bounded_tw(9, 2, 2, 1, seed);
    const NiceTreeDecomposition ntd = make_nice(td);
    const auto fw = testing::floyd_warshall(inst);
    std::vector<Rational> costs = testing::pair_scan_costs(inst, fw);
    costs.insert(costs.begin(), Rational(0));
    for (const Rational& rho : costs) {
      const TwDecision dec = exact_tw_decide(inst, ntd, rho.to_integer());
      CHECK(dec.labelling.has_value() == testing::naive_feasible(inst, fw, rho));
      if (dec.labelling) {
        const DistanceMatrix dm = shortest_paths(inst);
        const Assignment a = labelling_to_solution(inst, dm, *dec.labelling);
        CHECK(validate_assignment(inst, dm, a, rho).ok());
      }
    }
  }
}

TEST_CASE("solve_tw against the oracle") {
  for (std::uint64_t seed = 200; seed < 215; ++seed) {
    const auto [inst, td] = gen_random_bounded_tw(10, 3, 2, 2, seed);
    const DistanceMatrix dm = shortest_paths(inst);
    const auto opt = brute_force_opt(inst, dm);
    REQUIRE(opt.has_value());
    const TwResult ex = solve_tw(inst, &td, std::nullopt);
    CHECK(ex.cost == opt->cost);
    const Rational eps(1, 10);
    const TwResult ap = solve_tw(inst, &td, eps);
    CHECK(ap.cost <= (Rational(1) + eps) * (Rational(1) + eps) * opt->cost);
    CHECK(ap.bound_advertised);
    CHECK(validate_assignment(inst, dm, ap.assignment, ap.cost).ok());
  }
}

TEST_CASE("large eps is flagged") {
  const TwResult res = solve_tw(star(), nullptr, Rational(1, 2));
  CHECK_FALSE(res.bound_advertised);
  CHECK(res.cost == Rational(2));
}
