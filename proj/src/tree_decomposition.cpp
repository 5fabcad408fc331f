#include "ckswo/tree_decomposition.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <queue>
#include <set>

#include <json.hpp>

#include "ckswo/errors.hpp"

namespace ckswo {

int TreeDecomposition::width() const {
  std::size_t w = 0;
  for (const auto& b : bags) {
    std::set<Vertex> distinct(b.begin(), b.end());
    w = std::max(w, distinct.size());
  }
  return static_cast<int>(w) - 1;
}

namespace {

// Tree check shared by validation and nicification.  Returns adjacency or an error text.
std::optional<std::string> tree_shape_error(const TreeDecomposition& td, std::vector<std::vector<int>>& adj) {
  const int m = static_cast<int>(td.bags.size());
  adj.assign(m, {});
  for (auto [a, b] : td.tree_edges) {
    if (a < 0 || b < 0 || a >= m || b >= m || a == b)
      return "tree edge (" + std::to_string(a) + ", " + std::to_string(b) + ") is invalid";
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  if (m == 0) return std::nullopt;
  if (td.tree_edges.size() != static_cast<std::size_t>(m - 1))
    return "bag graph has " + std::to_string(td.tree_edges.size()) + " edges for " + std::to_string(m) + " bags";
  if (td.root && (*td.root < 0 || *td.root >= m)) return "root " + std::to_string(*td.root) + " out of range";
  std::vector<bool> seen(m, false);
  std::vector<int> stack{0};
  seen[0] = true;
  int count = 0;
  while (!stack.empty()) {
    int t = stack.back();
    stack.pop_back();
    ++count;
    for (int u : adj[t])
      if (!seen[u]) seen[u] = true, stack.push_back(u);
  }
  if (count != m) return "bag graph is disconnected";
  return std::nullopt;
}

// First vertex whose bags do not induce a connected subtree.
std::optional<Vertex> disconnected_vertex(const TreeDecomposition& td, const std::vector<std::vector<int>>& adj) {
  std::map<Vertex, std::vector<int>> holders;
  for (int t = 0; t < static_cast<int>(td.bags.size()); ++t)
    for (Vertex v : std::set<Vertex>(td.bags[t].begin(), td.bags[t].end())) holders[v].push_back(t);
  for (const auto& [v, nodes] : holders) {
    std::set<int> in(nodes.begin(), nodes.end()), seen{nodes.front()};
    std::vector<int> stack{nodes.front()};
    while (!stack.empty()) {
      int t = stack.back();
      stack.pop_back();
      for (int u : adj[t])
        if (in.count(u) && seen.insert(u).second) stack.push_back(u);
    }
    if (seen.size() != in.size()) return v;
  }
  return std::nullopt;
}

}  // namespace

TdReport validate_td(const Instance& inst, const TreeDecomposition& td) {
  TdReport rep;
  rep.width = td.width();
  std::vector<std::vector<int>> adj;
  if (auto err = tree_shape_error(td, adj)) {
    rep.violations.push_back(*err);
    return rep;
  }
  std::vector<std::set<int>> where(inst.n);
  for (int t = 0; t < static_cast<int>(td.bags.size()); ++t)
    for (Vertex v : td.bags[t]) {
      if (v < 0 || v >= inst.n) {
        rep.violations.push_back("bag " + std::to_string(t) + " holds unknown vertex " + std::to_string(v));
        continue;
      }
      where[v].insert(t);
    }
  for (Vertex v = 0; v < inst.n; ++v)
    if (where[v].empty()) rep.violations.push_back("property 1: vertex " + std::to_string(v) + " is in no bag");
  for (const Edge& e : inst.edges) {
    bool shared = std::any_of(where[e.u].begin(), where[e.u].end(), [&](int t) { return where[e.v].count(t) > 0; });
    if (!shared)
      rep.violations.push_back("property 2: edge (" + std::to_string(e.u) + ", " + std::to_string(e.v) +
                               ") is in no bag");
  }
  if (rep.violations.empty())
    if (auto v = disconnected_vertex(td, adj))
      rep.violations.push_back("property 3: bags holding vertex " + std::to_string(*v) + " are disconnected");
  return rep;
}

int NiceTreeDecomposition::width() const {
  std::size_t w = 0;
  for (const auto& node : nodes) w = std::max(w, node.bag.size());
  return static_cast<int>(w) - 1;
}

TreeDecomposition NiceTreeDecomposition::underlying() const {
  TreeDecomposition td;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    td.bags.push_back(nodes[i].bag);
    if (nodes[i].child >= 0) td.tree_edges.emplace_back(static_cast<int>(i), nodes[i].child);
    if (nodes[i].child2 >= 0) td.tree_edges.emplace_back(static_cast<int>(i), nodes[i].child2);
  }
  if (!nodes.empty()) td.root = root();
  return td;
}

NiceTreeDecomposition make_nice(const TreeDecomposition& td) {
  std::vector<std::vector<int>> adj;
  if (auto err = tree_shape_error(td, adj)) throw InputError("invalid tree decomposition: " + *err);
  if (auto v = disconnected_vertex(td, adj))
    throw InputError("invalid tree decomposition: bags holding vertex " + std::to_string(*v) + " are disconnected");

  NiceTreeDecomposition ntd;
  auto push = [&](NiceNode node) {
    ntd.nodes.push_back(std::move(node));
    return static_cast<int>(ntd.nodes.size()) - 1;
  };
  if (td.bags.empty()) {
    push({NiceKind::Leaf, {}, -1, -1, -1});
    return ntd;
  }

  std::vector<std::vector<Vertex>> bag(td.bags.size());
  for (std::size_t t = 0; t < bag.size(); ++t) {
    bag[t] = td.bags[t];
    std::sort(bag[t].begin(), bag[t].end());
    bag[t].erase(std::unique(bag[t].begin(), bag[t].end()), bag[t].end());
  }

  // Walk from node `from` to bag `want`: forgets first, then introduces.
  auto morph = [&](int from, const std::vector<Vertex>& want) {
    std::vector<Vertex> cur = ntd.nodes[from].bag;
    for (Vertex v : std::vector<Vertex>(cur)) {
      if (std::binary_search(want.begin(), want.end(), v)) continue;
      cur.erase(std::find(cur.begin(), cur.end(), v));
      from = push({NiceKind::Forget, cur, v, from, -1});
    }
    for (Vertex v : want) {
      if (std::binary_search(cur.begin(), cur.end(), v)) continue;
      cur.insert(std::upper_bound(cur.begin(), cur.end(), v), v);
      from = push({NiceKind::Introduce, cur, v, from, -1});
    }
    return from;
  };

  std::function<int(int, int)> build = [&](int t, int parent) -> int {
    std::vector<int> tops;
    for (int c : adj[t]) {
      if (c == parent) continue;
      tops.push_back(morph(build(c, t), bag[t]));
    }
    if (tops.empty()) return morph(push({NiceKind::Leaf, {}, -1, -1, -1}), bag[t]);
    // Balanced pairing of equal-bag subtrees.
    while (tops.size() > 1) {
      std::vector<int> next;
      for (std::size_t i = 0; i + 1 < tops.size(); i += 2)
        next.push_back(push({NiceKind::Join, bag[t], -1, tops[i], tops[i + 1]}));
      if (tops.size() % 2) next.push_back(tops.back());
      tops.swap(next);
    }
    return tops.front();
  };

  int root = td.root.value_or(0);
  morph(build(root, -1), {});
  return ntd;
}

std::vector<std::string> check_nice(const NiceTreeDecomposition& ntd) {
  std::vector<std::string> out;
  auto at = [](std::size_t i) { return "node " + std::to_string(i) + ": "; };
  if (ntd.nodes.empty()) return {"no nodes"};
  if (!ntd.nodes.back().bag.empty()) out.push_back("root bag is not empty");
  for (std::size_t i = 0; i < ntd.nodes.size(); ++i) {
    const NiceNode& n = ntd.nodes[i];
    if (!std::is_sorted(n.bag.begin(), n.bag.end())) out.push_back(at(i) + "bag not sorted");
    auto child_ok = [&](int c) { return c >= 0 && static_cast<std::size_t>(c) < i; };
    switch (n.kind) {
      case NiceKind::Leaf:
        if (!n.bag.empty()) out.push_back(at(i) + "leaf with non-empty bag");
        break;
      case NiceKind::Introduce:
      case NiceKind::Forget: {
        if (!child_ok(n.child)) {
          out.push_back(at(i) + "bad child");
          break;
        }
        std::vector<Vertex> expect = ntd.nodes[n.child].bag;
        bool intro = n.kind == NiceKind::Introduce;
        bool has = std::binary_search(expect.begin(), expect.end(), n.vertex);
        if (intro == has) {
          out.push_back(at(i) + (intro ? "introduces a present vertex" : "forgets an absent vertex"));
          break;
        }
        if (intro)
          expect.insert(std::upper_bound(expect.begin(), expect.end(), n.vertex), n.vertex);
        else
          expect.erase(std::find(expect.begin(), expect.end(), n.vertex));
        if (expect != n.bag) out.push_back(at(i) + "bag is not a one-vertex step from its child");
        break;
      }
      case NiceKind::Join:
        if (!child_ok(n.child) || !child_ok(n.child2)) {
          out.push_back(at(i) + "bad child");
          break;
        }
        if (ntd.nodes[n.child].bag != n.bag || ntd.nodes[n.child2].bag != n.bag)
          out.push_back(at(i) + "join children bags differ");
        break;
    }
  }
  return out;
}

int height(const NiceTreeDecomposition& ntd) {
  std::vector<int> h(ntd.nodes.size(), 1);
  for (std::size_t i = 0; i < ntd.nodes.size(); ++i) {
    const NiceNode& n = ntd.nodes[i];
    if (n.child >= 0) h[i] = std::max(h[i], h[n.child] + 1);
    if (n.child2 >= 0) h[i] = std::max(h[i], h[n.child2] + 1);
  }
  return h.empty() ? 0 : h.back();
}

TreeDecomposition min_degree_decomposition(const Instance& inst) {
  TreeDecomposition td;
  const int n = inst.n;
  if (n == 0) return td;
  std::vector<std::set<Vertex>> g(n);
  for (const Edge& e : inst.edges) {
    g[e.u].insert(e.v);
    g[e.v].insert(e.u);
  }
  std::vector<bool> gone(n, false);
  std::vector<int> position(n, -1);
  std::vector<Vertex> order;
  std::vector<std::vector<Vertex>> nbrs;
  for (int step = 0; step < n; ++step) {
    Vertex best = -1;
    for (Vertex v = 0; v < n; ++v)
      if (!gone[v] && (best < 0 || g[v].size() < g[best].size())) best = v;
    std::vector<Vertex> nb(g[best].begin(), g[best].end());
    std::vector<Vertex> b = nb;
    b.insert(std::upper_bound(b.begin(), b.end(), best), best);
    td.bags.push_back(b);
    for (Vertex a : nb) {
      g[a].erase(best);
      for (Vertex c : nb)
        if (a != c) g[a].insert(c);
    }
    g[best].clear();
    gone[best] = true;
    position[best] = step;
    order.push_back(best);
    nbrs.push_back(std::move(nb));
  }
  for (int step = 0; step + 1 < n; ++step) {
    int parent = n - 1;
    for (Vertex a : nbrs[step]) parent = std::min(parent, position[a]);
    if (nbrs[step].empty()) parent = step + 1;
    td.tree_edges.emplace_back(step, parent);
  }
  td.root = n - 1;
  return td;
}

Instance bag_metric_closure(const Instance& inst, const DistanceMatrix& dm, const TreeDecomposition& td) {
  Instance out = inst;
  std::set<std::pair<Vertex, Vertex>> present;
  for (const Edge& e : inst.edges) present.insert(std::minmax(e.u, e.v));
  for (const auto& raw : td.bags) {
    std::vector<Vertex> b(raw);
    std::sort(b.begin(), b.end());
    b.erase(std::unique(b.begin(), b.end()), b.end());
    for (std::size_t i = 0; i < b.size(); ++i)
      for (std::size_t j = i + 1; j < b.size(); ++j) {
        const Rational& d = dm.at(b[i], b[j]);
        if (d.is_infinite() || !present.insert({b[i], b[j]}).second) continue;
        out.edges.push_back({b[i], b[j], d});
      }
  }
  return out;
}

TreeDecomposition load_td(std::string_view text) {
  using nlohmann::json;
  try {
    json doc = json::parse(text.begin(), text.end());
    TreeDecomposition td;
    for (const auto& b : doc.at("bags")) td.bags.push_back(b.get<std::vector<Vertex>>());
    for (const auto& e : doc.at("tree_edges")) {
      if (!e.is_array() || e.size() != 2) throw InputError("tree_edges entries must be [i, j]");
      td.tree_edges.emplace_back(e[0].get<int>(), e[1].get<int>());
    }
    if (auto it = doc.find("root"); it != doc.end() && !it->is_null()) td.root = it->get<int>();
    const int nodes = static_cast<int>(td.bags.size());
    auto node_ok = [&](int t) { return t >= 0 && t < nodes; };
    for (auto [a, b] : td.tree_edges)
      if (!node_ok(a) || !node_ok(b))
        throw InputError("tree edge (" + std::to_string(a) + ", " + std::to_string(b) + ") names a missing bag");
    if (td.root && !node_ok(*td.root)) throw InputError("root names a missing bag");
    return td;
  } catch (const json::exception& ex) {
    throw InputError(std::string("decomposition parse error: ") + ex.what());
  }
}

std::string dump_td(const TreeDecomposition& td) {
  nlohmann::ordered_json doc;
  doc["bags"] = td.bags;
  auto edges = nlohmann::ordered_json::array();
  for (auto [a, b] : td.tree_edges) edges.push_back({a, b});
  doc["tree_edges"] = edges;
  doc["root"] = td.root ? nlohmann::ordered_json(*td.root) : nlohmann::ordered_json(nullptr);
  return doc.dump() + "\n";
}

}  // namespace ckswo
