#include "ckswo/gadgets.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <set>

#include <json.hpp>

#include "ckswo/errors.hpp"

namespace ckswo {

void MccInstance::validate() const {
  auto fail = [](const std::string& what) { throw InputError("invalid multicolored clique instance: " + what); };
  if (k < 1 || N < 1) fail("k and N must be positive");
  if (classes.size() != static_cast<std::size_t>(k)) fail("expected " + std::to_string(k) + " classes");
  std::map<int, int> color;
  for (int i = 0; i < k; ++i) {
    if (classes[i].size() != static_cast<std::size_t>(N))
      fail("class " + std::to_string(i) + " does not have N = " + std::to_string(N) + " vertices");
    for (int v : classes[i])
      if (!color.emplace(v, i).second) fail("vertex " + std::to_string(v) + " appears twice");
  }
  std::set<std::pair<int, int>> seen;
  std::map<ClassPair, int> per_pair;
  for (auto [a, b] : edges) {
    if (!color.count(a) || !color.count(b)) fail("edge endpoint outside every class");
    if (color[a] == color[b]) fail("edge (" + std::to_string(a) + ", " + std::to_string(b) + ") inside a class");
    if (!seen.insert(std::minmax(a, b)).second) fail("duplicate edge");
    ++per_pair[std::minmax(color[a], color[b])];
  }
  int m = -1;
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) {
      int c = per_pair.count({i, j}) ? per_pair[{i, j}] : 0;
      if (m >= 0 && c != m) fail("class pairs have different edge counts");
      m = c;
    }
}

int MccInstance::M() const {
  if (k < 2) return 0;
  std::set<int> first(classes[0].begin(), classes[0].end()), second(classes[1].begin(), classes[1].end());
  return static_cast<int>(std::count_if(edges.begin(), edges.end(), [&](const auto& e) {
    return (first.count(e.first) && second.count(e.second)) || (first.count(e.second) && second.count(e.first));
  }));
}

MccInstance load_mcc(std::string_view text) {
  using nlohmann::json;
  MccInstance mcc;
  try {
    json doc = json::parse(text.begin(), text.end());
    mcc.k = doc.at("k").get<int>();
    mcc.N = doc.at("N").get<int>();
    mcc.classes = doc.at("classes").get<std::vector<std::vector<int>>>();
    for (const auto& e : doc.at("edges")) {
      if (!e.is_array() || e.size() != 2) throw InputError("edges entries must be [u, v]");
      mcc.edges.emplace_back(e[0].get<int>(), e[1].get<int>());
    }
  } catch (const json::exception& ex) {
    throw InputError(std::string("clique instance parse error: ") + ex.what());
  }
  mcc.validate();
  return mcc;
}

std::string dump_mcc(const MccInstance& mcc) {
  nlohmann::ordered_json doc;
  doc["k"] = mcc.k;
  doc["N"] = mcc.N;
  doc["classes"] = mcc.classes;
  auto edges = nlohmann::ordered_json::array();
  for (auto [a, b] : mcc.edges) edges.push_back({a, b});
  doc["edges"] = edges;
  return doc.dump() + "\n";
}

namespace {

class Builder {
 public:
  Builder(GadgetInstance& gi) : gi_(gi) {}

  Vertex add() { return gi_.instance.n++; }

  void edge(Vertex u, Vertex v, const Rational& len) { gi_.instance.edges.push_back({u, v, len}); }

  Vertex marked() {
    Vertex x = add();
    gi_.marked.push_back(x);
    auto& priv = gi_.private_of[x];
    for (int t = 0; t <= gi_.kbar; ++t) {
      Vertex leaf = add();
      edge(x, leaf, gi_.lambda);
      priv.push_back(leaf);
    }
    return x;
  }

  // A paths u - w - v and B pendants at v.  `unit_tail` gives the u - w edges length 1.
  void arrow(Vertex u, Vertex v, std::int64_t a, std::int64_t b, bool unit_tail) {
    for (std::int64_t t = 0; t < a; ++t) {
      Vertex w = add();
      gi_.subdivision.push_back(w);
      edge(u, w, unit_tail ? Rational(1) : gi_.lambda);
      edge(w, v, gi_.lambda);
    }
    for (std::int64_t t = 0; t < b; ++t) edge(v, add(), gi_.lambda);
  }

  std::vector<Vertex> big_set(const std::vector<Vertex>& targets) {
    std::vector<Vertex> out;
    for (int t = 0; t <= gi_.kbar; ++t) {
      Vertex x = add();
      out.push_back(x);
      gi_.big_sets.push_back(x);
      for (Vertex v : targets) edge(x, v, gi_.lambda);
    }
    return out;
  }

 private:
  GadgetInstance& gi_;
};

}  // namespace

GadgetInstance gen_mcc_gadget(const MccInstance& mcc, const Rational& lambda) {
  mcc.validate();
  if (lambda < Rational(8)) throw InputError("lambda must be at least 8");
  const int k = mcc.k;
  const std::int64_t N = mcc.N, M = mcc.M();
  const std::int64_t N3 = 2 * N * N * N;  // 2N^3
  auto up = [&](std::size_t pos) { return static_cast<std::int64_t>(pos + 1) * 2 * N * N; };
  auto down = [&](std::size_t pos) { return N3 - up(pos); };

  GadgetInstance gi;
  gi.lambda = lambda;
  gi.kbar = 7 * k * (k - 1) + 2 * k;
  Builder b(gi);

  std::map<int, std::pair<int, std::size_t>> where;  // MCC vertex -> (class, position)
  for (int i = 0; i < k; ++i)
    for (std::size_t a = 0; a < mcc.classes[i].size(); ++a) where[mcc.classes[i][a]] = {i, a};

  // Color class gadgets.
  gi.class_vertex.resize(k);
  for (int i = 0; i < k; ++i) {
    for (int t = 0; t < N; ++t) gi.class_vertex[i].push_back(b.add());
    Vertex x = b.marked();
    gi.x_class.push_back(x);
    for (Vertex u : gi.class_vertex[i]) b.edge(x, u, lambda);
    b.big_set(gi.class_vertex[i]);
    for (int j = 0; j < k; ++j) {
      if (j == i) continue;
      gi.y[{i, j}] = b.marked();
      gi.z[{i, j}] = b.marked();
    }
    for (std::size_t a = 0; a < gi.class_vertex[i].size(); ++a)
      for (int j = 0; j < k; ++j) {
        if (j == i) continue;
        b.arrow(gi.class_vertex[i][a], gi.y[{i, j}], up(a), down(a), true);
        b.arrow(gi.class_vertex[i][a], gi.z[{i, j}], down(a), up(a), true);
      }
  }

  // Edge set gadgets.
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) {
      std::vector<ClassPair> order;
      for (auto [s, t] : mcc.edges) {
        auto ws = where.at(s), wt = where.at(t);
        if (ws.first == j && wt.first == i) std::swap(ws, wt);
        if (ws.first == i && wt.first == j)
          order.emplace_back(static_cast<int>(ws.second), static_cast<int>(wt.second));
      }
      std::sort(order.begin(), order.end());
      auto& ev = gi.edge_vertex[{i, j}];
      for (std::size_t e = 0; e < order.size(); ++e) ev.push_back(b.add());
      gi.edge_order[{i, j}] = order;
      Vertex x = b.marked();
      gi.x_pair[{i, j}] = x;
      for (Vertex e : ev) b.edge(x, e, lambda);
      b.big_set(ev);
      gi.p[{i, j}] = b.marked();
      gi.p[{j, i}] = b.marked();
      gi.q[{i, j}] = b.marked();
      gi.q[{j, i}] = b.marked();
      for (std::size_t e = 0; e < order.size(); ++e) {
        const auto u = static_cast<std::size_t>(order[e].first), v = static_cast<std::size_t>(order[e].second);
        b.arrow(ev[e], gi.p[{i, j}], down(u), up(u), true);
        b.arrow(ev[e], gi.q[{i, j}], up(u), down(u), true);
        b.arrow(ev[e], gi.p[{j, i}], down(v), up(v), true);
        b.arrow(ev[e], gi.q[{j, i}], up(v), down(v), true);
      }
    }

  // Adjacency gadgets.
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      if (i == j) continue;
      Vertex r = gi.r[{i, j}] = b.marked();
      Vertex s = gi.s[{i, j}] = b.marked();
      b.arrow(gi.y[{i, j}], r, N3, 0, false);
      b.arrow(gi.p[{i, j}], r, N3, 0, false);
      b.arrow(gi.z[{i, j}], s, N3, 0, false);
      b.arrow(gi.q[{i, j}], s, N3, 0, false);
    }

  Instance& inst = gi.instance;
  std::vector<std::int64_t> degree(inst.n, 0);
  for (const Edge& e : inst.edges) ++degree[e.u], ++degree[e.v];
  for (Vertex v = 0; v < inst.n; ++v) inst.capacities[v] = degree[v];
  const std::int64_t extra = gi.kbar + 1;
  for (Vertex x : gi.x_class) inst.capacities[x] = N - 1 + extra;
  for (const auto& [ij, x] : gi.x_pair) inst.capacities[x] = M - 1 + extra;
  for (const auto* m : {&gi.y, &gi.z})
    for (const auto& [ij, v] : *m) inst.capacities[v] = 2 * N * N * N * N + extra;
  for (const auto* m : {&gi.p, &gi.q})
    for (const auto& [ij, v] : *m) inst.capacities[v] = M * N3 + extra;
  for (const auto* m : {&gi.r, &gi.s})
    for (const auto& [ij, v] : *m) inst.capacities[v] = N3 + extra;

  inst.suppliers.resize(inst.n);
  std::iota(inst.suppliers.begin(), inst.suppliers.end(), 0);
  inst.clients = inst.suppliers;
  inst.k = gi.kbar;
  inst.p = 0;
  inst.self_service = true;
  inst.validate();
  return gi;
}

std::vector<Vertex> clique_to_solution(const MccInstance& mcc, const std::vector<int>& clique,
                                       const GadgetInstance& gi) {
  if (clique.size() != static_cast<std::size_t>(mcc.k)) throw InputError("clique must pick one vertex per class");
  std::vector<std::size_t> pos(mcc.k);
  for (int i = 0; i < mcc.k; ++i) {
    auto it = std::find(mcc.classes[i].begin(), mcc.classes[i].end(), clique[i]);
    if (it == mcc.classes[i].end())
      throw InputError("vertex " + std::to_string(clique[i]) + " is not in class " + std::to_string(i));
    pos[i] = static_cast<std::size_t>(it - mcc.classes[i].begin());
  }
  std::vector<Vertex> D = gi.marked;
  for (int i = 0; i < mcc.k; ++i) D.push_back(gi.class_vertex[i][pos[i]]);
  for (int i = 0; i < mcc.k; ++i)
    for (int j = i + 1; j < mcc.k; ++j) {
      const auto& order = gi.edge_order.at({i, j});
      ClassPair want{static_cast<int>(pos[i]), static_cast<int>(pos[j])};
      auto it = std::lower_bound(order.begin(), order.end(), want);
      if (it == order.end() || *it != want)
        throw InputError("clique vertices " + std::to_string(clique[i]) + " and " + std::to_string(clique[j]) +
                         " are not adjacent");
      D.push_back(gi.edge_vertex.at({i, j})[static_cast<std::size_t>(it - order.begin())]);
    }
  std::sort(D.begin(), D.end());
  return D;
}

std::vector<std::string> check_gadget_structure(const GadgetInstance& gi, int k) {
  std::vector<std::string> bad;
  const Instance& inst = gi.instance;
  if (gi.kbar != 7 * k * (k - 1) + 2 * k) bad.push_back("kbar differs from 7k(k-1)+2k");
  if (2 * static_cast<int>(gi.marked.size()) != 13 * k * k - 11 * k)
    bad.push_back("|Z| = " + std::to_string(gi.marked.size()) + " differs from (13k^2-11k)/2");
  if (gi.lambda < Rational(8)) bad.push_back("lambda below 8");

  std::vector<char> hub(inst.n, 0);
  for (Vertex v : gi.marked) hub[v] = 1;
  for (Vertex v : gi.big_sets) hub[v] = 1;

  std::vector<std::vector<Vertex>> unit(inst.n), all(inst.n);
  std::vector<Vertex> parent(inst.n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](Vertex v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  bool cycle = false;
  for (const Edge& e : inst.edges) {
    all[e.u].push_back(e.v);
    all[e.v].push_back(e.u);
    if (e.length == Rational(1)) {
      unit[e.u].push_back(e.v);
      unit[e.v].push_back(e.u);
    } else if (e.length == gi.lambda) {
      if (!hub[e.u] && !hub[e.v])
        bad.push_back("lambda edge (" + std::to_string(e.u) + ", " + std::to_string(e.v) + ") misses S and Z");
    } else {
      bad.push_back("edge length " + e.length.to_string() + " is neither 1 nor lambda");
    }
    if (hub[e.u] || hub[e.v]) continue;
    Vertex a = find(e.u), c = find(e.v);
    if (a == c) cycle = true;
    parent[a] = c;
  }
  if (cycle) bad.push_back("removing S and Z leaves a cycle");

  // Unit-length paths: every component of the unit subgraph has diameter at most 2.
  std::vector<int> dist(inst.n, -1);
  for (Vertex s = 0; s < inst.n && bad.size() < 20; ++s) {
    if (unit[s].empty()) continue;
    std::vector<Vertex> touched{s};
    std::queue<Vertex> q;
    dist[s] = 0;
    q.push(s);
    while (!q.empty()) {
      Vertex u = q.front();
      q.pop();
      for (Vertex v : unit[u])
        if (dist[v] < 0) {
          dist[v] = dist[u] + 1;
          touched.push_back(v);
          q.push(v);
        }
    }
    for (Vertex v : touched) {
      if (dist[v] > 2) {
        bad.push_back("unit-length path of length " + std::to_string(dist[v]) + " from " + std::to_string(s));
        break;
      }
    }
    for (Vertex v : touched) dist[v] = -1;
  }

  for (Vertex x : gi.marked) {
    auto it = gi.private_of.find(x);
    if (it == gi.private_of.end() || it->second.size() != static_cast<std::size_t>(gi.kbar + 1)) {
      bad.push_back("marked vertex " + std::to_string(x) + " lacks kbar+1 private neighbours");
      continue;
    }
    for (Vertex leaf : it->second)
      if (all[leaf].size() != 1 || all[leaf].front() != x)
        bad.push_back("private neighbour " + std::to_string(leaf) + " of " + std::to_string(x) + " is not a pendant");
  }
  return bad;
}

}  // namespace ckswo
