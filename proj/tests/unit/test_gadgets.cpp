#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "ckswo/errors.hpp"
#include "ckswo/flow.hpp"
#include "ckswo/gadgets.hpp"
#include "ckswo/generators.hpp"
#include "ckswo/instance.hpp"
#include "ckswo/metric.hpp"
#include "ckswo/tree_decomposition.hpp"
#include "test_support.hpp"

using namespace ckswo;

namespace {

// Classes {0,1} and {2,3}; edges 0-2 and 1-3, so M = 2.
MccInstance two_by_two() {
  return load_mcc(R"({"k":2,"N":2,"classes":[[0,1],[2,3]],"edges":[[0,2],[1,3]]})");
}

// Vertex count from the gadget recipe: a marked vertex brings kbar+1 pendants,
// an S set has kbar+1 vertices, an (A,B)-arrow adds A subdivision vertices and
// B pendants, and every arrow in the recipe has A + B = 2N^3.
std::int64_t recipe_vertex_count(std::int64_t k, std::int64_t N, std::int64_t M) {
  const std::int64_t kbar = 7 * k * (k - 1) + 2 * k;
  const std::int64_t marked = 1 + kbar + 1;
  const std::int64_t big = kbar + 1;
  const std::int64_t arrow = 2 * N * N * N;
  const std::int64_t pairs = k * (k - 1) / 2;
  const std::int64_t per_class = N + marked + big + 2 * (k - 1) * marked + N * (k - 1) * 2 * arrow;
  const std::int64_t per_pair = M + marked + big + 4 * marked + M * 4 * arrow;
  const std::int64_t per_ordered_pair = 2 * marked + 4 * arrow;
  return k * per_class + pairs * per_pair + 2 * pairs * per_ordered_pair;
}

std::int64_t degree(const Instance& inst, Vertex v) {
  std::int64_t d = 0;
  for (const Edge& e : inst.edges) d += (e.u == v) + (e.v == v);
  return d;
}

}  // namespace

TEST_CASE("gadget counts for k = 2") {
  const MccInstance mcc = two_by_two();
  CHECK(mcc.M() == 2);
  const GadgetInstance gi = gen_mcc_gadget(mcc);
  CHECK(gi.kbar == 18);
  CHECK(gi.marked.size() == 15);
  CHECK(gi.instance.k == 18);
  CHECK(gi.instance.p == 0);
  CHECK(gi.instance.self_service);
  CHECK(gi.lambda == Rational(8));
  CHECK(gi.instance.n == recipe_vertex_count(2, 2, 2));
  CHECK(gi.instance.n == 747);
  for (Vertex x : gi.marked) CHECK(gi.private_of.at(x).size() == 19);
  CHECK(check_gadget_structure(gi, 2).empty());
}

TEST_CASE("arrow numbers and degrees") {
  // u-up for the j = 1 vertex with N = 2 is 1 * 2 * 4 = 8 and u-down = 2 * 8 - 8 = 8,
  // so both arrows of a class vertex towards y and z carry 8 + 8 edges of length 1.
  const GadgetInstance gi = gen_mcc_gadget(two_by_two());
  const Instance& inst = gi.instance;
  const Vertex u = gi.class_vertex[0][0];
  // x_i, the 19 vertices of S_i, then the up- and down-tails towards y and z.
  CHECK(degree(inst, u) == 1 + 19 + 8 + 8);
  std::int64_t unit = 0;
  for (const Edge& e : inst.edges) unit += (e.u == u || e.v == u) && e.length == Rational(1);
  CHECK(unit == 16);
  // y: its 19 pendants, from each class vertex 2N^3 = 16 arrow ends, 16 paths to r.
  const Vertex y = gi.y.at({0, 1});
  CHECK(degree(inst, y) == 19 + 2 * 16 + 16);
  CHECK(inst.capacity(y) == 2 * 16 + 19);
  CHECK(inst.capacity(gi.x_class[0]) == 2 - 1 + 19);
  CHECK(inst.capacity(gi.x_pair.at({0, 1})) == 2 - 1 + 19);
  CHECK(inst.capacity(gi.p.at({0, 1})) == 2 * 16 + 19);
  CHECK(inst.capacity(gi.r.at({0, 1})) == 16 + 19);
  CHECK(inst.capacity(gi.subdivision.front()) == 2);
}

TEST_CASE("gadget recipe count on larger inputs") {
  for (const auto& [k, N] : {std::pair{2, 3}, std::pair{3, 2}}) {
    const MccInstance mcc = gen_planted_mcc(k, N, 3, 7);
    const GadgetInstance gi = gen_mcc_gadget(mcc);
    CHECK(gi.instance.n == recipe_vertex_count(k, N, 3));
    CHECK(static_cast<int>(gi.marked.size()) == (13 * k * k - 11 * k) / 2);
    CHECK(check_gadget_structure(gi, k).empty());
  }
}

TEST_CASE("lambda below 8 is refused") {
  CHECK_THROWS_AS(gen_mcc_gadget(two_by_two(), Rational(7)), InputError);
}

TEST_CASE("malformed MCC inputs") {
  CHECK_THROWS_AS(load_mcc(R"({"k":2,"N":2,"classes":[[0,1],[2,3]],"edges":[[0,1]]})"), InputError);
  CHECK_THROWS_AS(load_mcc(R"({"k":2,"N":2,"classes":[[0,1],[2]],"edges":[]})"), InputError);
}

TEST_CASE("clique to solution") {
  const MccInstance mcc = two_by_two();
  const GadgetInstance gi = gen_mcc_gadget(mcc);
  const std::vector<Vertex> D = clique_to_solution(mcc, {0, 2}, gi);
  CHECK(D.size() == 18);
  const std::set<Vertex> d(D.begin(), D.end());
  for (Vertex x : gi.marked) CHECK(d.count(x) == 1);
  CHECK(d.count(gi.class_vertex[0][0]) == 1);
  CHECK(d.count(gi.class_vertex[1][0]) == 1);
  CHECK(d.count(gi.edge_vertex.at({0, 1})[0]) == 1);
  CHECK(D.size() - gi.marked.size() == 2 + 1);  // k + C(k, 2)

  const DistanceMatrix dm = shortest_paths_from(gi.instance, D);
  const auto a = feasible_assignment(gi.instance, dm, D, gi.lambda);
  CHECK(a.has_value());

  CHECK_THROWS_AS(clique_to_solution(mcc, {0, 3}, gi), InputError);
  CHECK_THROWS_AS(clique_to_solution(mcc, {0}, gi), InputError);
}

TEST_CASE("planted MCC") {
  const MccInstance mcc = gen_planted_mcc(3, 3, 4, 11);
  CHECK_NOTHROW(mcc.validate());
  CHECK(mcc.M() == 4);
  std::set<std::pair<int, int>> e;
  for (auto [u, v] : mcc.edges) e.insert({std::min(u, v), std::max(u, v)});
  CHECK(e.count({0, 3}) == 1);
  CHECK(e.count({0, 6}) == 1);
  CHECK(e.count({3, 6}) == 1);
  CHECK(dump_mcc(load_mcc(dump_mcc(mcc))) == dump_mcc(mcc));
}

TEST_CASE("euclidean generator") {
  SUBCASE("one dimension, two points") {
    const Instance a = gen_random_euclidean(1, 1, 1, 1, 0, std::nullopt, 5);
    CHECK(a.n == 2);
    REQUIRE(a.edges.size() == 1);
    CHECK(a.suppliers == std::vector<Vertex>{0});
    CHECK(a.clients == std::vector<Vertex>{1});
    CHECK(a.edges[0].length > Rational(0));
    CHECK(a.edges[0].length <= Rational(1));
    CHECK((a.edges[0].length * Rational(1000)).is_integer());
  }
  SUBCASE("same seed, same instance") {
    const Instance a = gen_random_euclidean(4, 6, 2, 2, 1, CapacityRange{1, 4}, 99);
    const Instance b = gen_random_euclidean(4, 6, 2, 2, 1, CapacityRange{1, 4}, 99);
    CHECK(dump_instance(a) == dump_instance(b));
    const Instance c = gen_random_euclidean(4, 6, 2, 2, 1, CapacityRange{1, 4}, 100);
    CHECK(dump_instance(a) != dump_instance(c));
  }
}

TEST_CASE("euclidean corpus summary matches the recorded golden") {
  std::ostringstream summary;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const Instance inst = gen_random_euclidean(5, 8, 1 + static_cast<int>(seed % 3), 2, 1, CapacityRange{1, 5}, seed);
    Rational total(0);
    for (const Edge& e : inst.edges) total += e.length;
    summary << seed << ' ' << instance_digest(inst) << ' ' << total << '\n';
  }
  const std::string path = testing::fixture("golden/euclid_summary.txt");
  if (std::getenv("CKSWO_WRITE_GOLDEN")) {
    write_file(path, summary.str());
    return;
  }
  CHECK(read_file(path) == summary.str());
}

TEST_CASE("bounded treewidth generator") {
  SUBCASE("width 1 gives a tree") {
    const auto [inst, td] = gen_random_bounded_tw(12, 1, 2, 1, 3);
    CHECK(inst.edges.size() == 11);
    const DistanceMatrix dm = shortest_paths(inst);
    for (Vertex v = 0; v < inst.n; ++v) CHECK(dm.at(0, v).is_finite());
  }
  SUBCASE("valid decomposition within the bound") {
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
      const int bound = 1 + static_cast<int>(seed % 3);
      const auto [inst, td] = gen_random_bounded_tw(14, bound, 3, 2, seed);
      CHECK(validate_td(inst, td).ok());
      CHECK(td.width() <= bound);
      for (const Edge& e : inst.edges) {
        CHECK(e.length.is_integer());
        CHECK(e.length >= Rational(1));
        CHECK(e.length <= Rational(10));
      }
      CHECK(inst.uncapacitated());
    }
  }
}

TEST_CASE("structure check catches broken gadgets") {
  const MccInstance mcc = two_by_two();
  SUBCASE("length outside {1, lambda}") {
    GadgetInstance gi = gen_mcc_gadget(mcc);
    gi.instance.edges.front().length = Rational(2);
    CHECK_FALSE(check_gadget_structure(gi, 2).empty());
  }
  SUBCASE("lambda edge missing the hitting set") {
    GadgetInstance gi = gen_mcc_gadget(mcc);
    gi.instance.edges.push_back({gi.subdivision[0], gi.subdivision[1], gi.lambda});
    CHECK_FALSE(check_gadget_structure(gi, 2).empty());
  }
  SUBCASE("cycle outside the hitting set") {
    GadgetInstance gi = gen_mcc_gadget(mcc);
    // Joining two tails of one class vertex closes a triangle away from S and Z.
    const Vertex u = gi.class_vertex[0][0];
    std::vector<Vertex> tails;
    for (const Edge& e : gi.instance.edges)
      if (e.length == Rational(1) && (e.u == u || e.v == u)) tails.push_back(e.u == u ? e.v : e.u);
    REQUIRE(tails.size() >= 2);
    gi.instance.edges.push_back({tails[0], tails[1], Rational(1)});
    CHECK_FALSE(check_gadget_structure(gi, 2).empty());
  }
  SUBCASE("long unit path") {
    GadgetInstance gi = gen_mcc_gadget(mcc);
    const Vertex a = gi.class_vertex[0][0], b = gi.class_vertex[1][0];
    Vertex ta = -1, tb = -1;
    for (const Edge& e : gi.instance.edges) {
      if (e.length != Rational(1)) continue;
      if (e.u == a || e.v == a) ta = e.u == a ? e.v : e.u;
      if (e.u == b || e.v == b) tb = e.u == b ? e.v : e.u;
    }
    // tail(a) - a ... joined to tail(b) - b by one more unit edge: a unit path of length 3.
    gi.instance.edges.push_back({ta, tb, Rational(1)});
    CHECK_FALSE(check_gadget_structure(gi, 2).empty());
  }
  SUBCASE("wrong number of private neighbours") {
    GadgetInstance gi = gen_mcc_gadget(mcc);
    gi.private_of.begin()->second.pop_back();
    CHECK_FALSE(check_gadget_structure(gi, 2).empty());
  }
}
