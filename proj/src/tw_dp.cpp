#include "ckswo/tw_dp.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <set>
#include <string>
#include <unordered_map>

#include "ckswo/errors.hpp"

namespace ckswo {

LabelScale Labelling::scale() const {
  return mode == LabelMode::Exact ? LabelScale::exact(rho) : LabelScale::approx(rho, eps, height);
}

void require_tw_input(const Instance& inst) {
  if (!inst.all_lengths_integral()) throw InputError("tree-decomposition solver needs integral edge lengths");
  if (!inst.uncapacitated()) throw InputError("tree-decomposition solver needs infinite capacities");
  for (Vertex c : inst.clients)
    if (inst.is_supplier(c))
      throw InputError("tree-decomposition solver needs disjoint suppliers and clients (vertex " + std::to_string(c) +
                       " is both)");
}

namespace {

struct Entry {
  std::uint32_t sat;  // bit j: bag vertex j has a witnessing neighbour; only set for finite nonzero labels
  std::uint16_t k;
  std::uint16_t p;
  std::int32_t g1, e1, g2, e2;  // backpointers into child tables
};

struct Table {
  std::vector<std::u16string> keys;  // per bag position: index into that vertex's domain
  std::vector<std::vector<Entry>> entries;
  std::unordered_map<std::u16string, int> index;

  int group(const std::u16string& key) {
    auto [it, fresh] = index.try_emplace(key, static_cast<int>(keys.size()));
    if (fresh) {
      keys.push_back(key);
      entries.emplace_back();
    }
    return it->second;
  }

  // Drops groups that ended up empty and rebuilds the index.
  void compact() {
    std::vector<std::u16string> k2;
    std::vector<std::vector<Entry>> e2;
    for (std::size_t g = 0; g < keys.size(); ++g) {
      if (entries[g].empty()) continue;
      k2.push_back(std::move(keys[g]));
      e2.push_back(std::move(entries[g]));
    }
    keys.swap(k2);
    entries.swap(e2);
    index.clear();
    for (std::size_t g = 0; g < keys.size(); ++g) index.emplace(keys[g], static_cast<int>(g));
  }

  [[nodiscard]] std::size_t size() const {
    std::size_t n = 0;
    for (const auto& list : entries) n += list.size();
    return n;
  }
};

bool dominates(const Entry& a, const Entry& b) { return (a.sat & b.sat) == b.sat && a.k <= b.k && a.p <= b.p; }

// Keeps each group an antichain under (sat superset, k, p).
void add_entry(std::vector<Entry>& list, const Entry& e) {
  for (const Entry& x : list)
    if (dominates(x, e)) return;
  list.erase(std::remove_if(list.begin(), list.end(), [&](const Entry& x) { return dominates(e, x); }), list.end());
  list.push_back(e);
}

std::uint32_t insert_bit(std::uint32_t mask, std::size_t pos, bool bit) {
  std::uint32_t low = mask & ((1u << pos) - 1);
  return low | (static_cast<std::uint32_t>(bit) << pos) | ((mask >> pos) << (pos + 1));
}

std::uint32_t remove_bit(std::uint32_t mask, std::size_t pos) {
  std::uint32_t low = mask & ((1u << pos) - 1);
  return low | ((mask >> (pos + 1)) << pos);
}

class Solver {
 public:
  Solver(const Instance& inst, const NiceTreeDecomposition& ntd, LabelScale scale, LabelDomain domain)
      : inst_(inst), ntd_(ntd), scale_(std::move(scale)), n_(inst.n) {
    require_tw_input(inst);
    if (auto bad = check_nice(ntd); !bad.empty()) throw InputError("not a nice decomposition: " + bad.front());
    if (auto rep = validate_td(inst, ntd.underlying()); !rep.ok())
      throw InputError("decomposition does not fit the instance: " + rep.violations.front());
    if (ntd.width() + 1 > 31) throw InputError("bags wider than 31 vertices are not supported");
    if (inst.k > 65535 || inst.p > 65535) throw InputError("budgets too large");

    client_.assign(n_, 0);
    supplier_.assign(n_, 0);
    for (Vertex c : inst.clients) client_[c] = 1;
    for (Vertex s : inst.suppliers) supplier_[s] = 1;
    len_.assign(static_cast<std::size_t>(n_) * n_, 0);
    const auto adj = adjacency(inst);
    for (Vertex u = 0; u < n_; ++u)
      for (const Neighbor& nb : adj[u]) len_[static_cast<std::size_t>(u) * n_ + nb.to] = nb.length.to_integer();
    build_domains(domain);
  }

  TwDecision run() {
    TwDecision out;
    tables_.resize(ntd_.nodes.size());
    for (std::size_t i = 0; i < ntd_.nodes.size(); ++i) {
      const NiceNode& node = ntd_.nodes[i];
      Table& t = tables_[i];
      switch (node.kind) {
        case NiceKind::Leaf:
          t.entries[t.group(std::u16string())].push_back({0, 0, 0, -1, -1, -1, -1});
          break;
        case NiceKind::Introduce:
          introduce(node, t);
          break;
        case NiceKind::Forget:
          forget(node, t);
          break;
        case NiceKind::Join:
          join(node, t);
          break;
      }
      t.compact();
      std::size_t sz = t.size();
      out.stats.total_entries += sz;
      out.stats.max_node_entries = std::max(out.stats.max_node_entries, sz);
      long double bound = std::pow(2.0L + scale_.max_code(), node.bag.size()) * std::pow(2.0L, node.bag.size()) *
                          (inst_.k + 1.0L) * (inst_.p + 1.0L);
      if (static_cast<long double>(sz) > bound) out.stats.within_bound = false;
    }
    for (const auto& d : domain_) out.stats.max_domain = std::max(out.stats.max_domain, d.size());
    const Table& root = tables_.back();
    if (!root.entries.empty()) out.labelling = extract();
    return out;
  }

 private:
  std::int64_t len(Vertex u, Vertex v) const { return len_[static_cast<std::size_t>(u) * n_ + v]; }

  void build_domains(LabelDomain kind) {
    domain_.assign(n_, {});
    if (kind == LabelDomain::Full) {
      for (Vertex v = 0; v < n_; ++v) {
        if (supplier_[v]) domain_[v].push_back(kZeroCode);
        for (int c = 1; c <= scale_.max_code(); ++c) domain_[v].push_back(c);
        domain_[v].push_back(kInfCode);
      }
    } else {
      const auto adj = adjacency(inst_);
      std::vector<std::set<int>> reach(n_);
      using Item = std::pair<int, Vertex>;
      for (Vertex s : inst_.suppliers) {
        std::vector<int> x(n_, kInfCode);
        std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
        x[s] = kZeroCode;
        pq.push({kZeroCode, s});
        while (!pq.empty()) {
          auto [c, u] = pq.top();
          pq.pop();
          if (c > x[u]) continue;
          reach[u].insert(c);
          for (const Neighbor& nb : adj[u]) {
            int t = scale_.threshold(c, nb.length.to_integer());
            if (t < x[nb.to]) {
              x[nb.to] = t;
              pq.push({t, nb.to});
            }
          }
        }
      }
      for (Vertex v = 0; v < n_; ++v) {
        domain_[v].assign(reach[v].begin(), reach[v].end());
        domain_[v].push_back(kInfCode);
      }
    }
    for (const auto& d : domain_)
      if (d.size() > 65535) throw InputError("label domain too large for the table encoding");
  }

  int code_at(const NiceNode& node, const std::u16string& key, std::size_t j) const {
    return domain_[node.bag[j]][key[j]];
  }

  void introduce(const NiceNode& node, Table& t) {
    const NiceNode& child = ntd_.nodes[node.child];
    const Table& ct = tables_[node.child];
    const Vertex w = node.vertex;
    const std::size_t pos = std::lower_bound(node.bag.begin(), node.bag.end(), w) - node.bag.begin();
    std::vector<int> codes(child.bag.size());
    for (std::size_t g = 0; g < ct.keys.size(); ++g) {
      const std::u16string& key = ct.keys[g];
      for (std::size_t j = 0; j < key.size(); ++j) codes[j] = code_at(child, key, j);
      for (std::size_t li = 0; li < domain_[w].size(); ++li) {
        const int cw = domain_[w][li];
        bool wsat = false;
        std::uint32_t ubits = 0;
        for (std::size_t j = 0; j < codes.size(); ++j) {
          const std::int64_t d = len(child.bag[j], w);
          if (d == 0) continue;
          if (scale_.satisfies(cw, codes[j], d)) wsat = true;
          if (scale_.satisfies(codes[j], cw, d)) ubits |= 1u << (j < pos ? j : j + 1);
        }
        const int dk = cw == kZeroCode;
        const int dp = cw == kInfCode && client_[w];
        std::u16string nkey = key;
        nkey.insert(nkey.begin() + static_cast<std::ptrdiff_t>(pos), static_cast<char16_t>(li));
        const int ng = t.group(nkey);
        for (std::size_t e = 0; e < ct.entries[g].size(); ++e) {
          const Entry& ce = ct.entries[g][e];
          const int k = ce.k + dk, p = ce.p + dp;
          if (k > inst_.k || p > inst_.p) continue;
          add_entry(t.entries[ng], {insert_bit(ce.sat, pos, wsat) | ubits, static_cast<std::uint16_t>(k),
                                    static_cast<std::uint16_t>(p), static_cast<std::int32_t>(g),
                                    static_cast<std::int32_t>(e), -1, -1});
        }
      }
    }
  }

  void forget(const NiceNode& node, Table& t) {
    const NiceNode& child = ntd_.nodes[node.child];
    const Table& ct = tables_[node.child];
    const Vertex w = node.vertex;
    const std::size_t pos = std::lower_bound(child.bag.begin(), child.bag.end(), w) - child.bag.begin();
    for (std::size_t g = 0; g < ct.keys.size(); ++g) {
      const std::u16string& key = ct.keys[g];
      const bool needs_witness = finite_nonzero(code_at(child, key, pos));
      std::u16string nkey = key;
      nkey.erase(pos, 1);
      int ng = -1;
      for (std::size_t e = 0; e < ct.entries[g].size(); ++e) {
        const Entry& ce = ct.entries[g][e];
        if (needs_witness && !((ce.sat >> pos) & 1u)) continue;
        if (ng < 0) ng = t.group(nkey);
        add_entry(t.entries[ng], {remove_bit(ce.sat, pos), ce.k, ce.p, static_cast<std::int32_t>(g),
                                  static_cast<std::int32_t>(e), -1, -1});
      }
    }
  }

  void join(const NiceNode& node, Table& t) {
    const Table& a = tables_[node.child];
    const Table& b = tables_[node.child2];
    for (std::size_t g = 0; g < a.keys.size(); ++g) {
      auto it = b.index.find(a.keys[g]);
      if (it == b.index.end()) continue;
      const int h = it->second;
      int zeros = 0, inf_clients = 0;
      for (std::size_t j = 0; j < node.bag.size(); ++j) {
        int c = code_at(node, a.keys[g], j);
        zeros += c == kZeroCode;
        inf_clients += c == kInfCode && client_[node.bag[j]];
      }
      int ng = -1;
      for (std::size_t e = 0; e < a.entries[g].size(); ++e)
        for (std::size_t f = 0; f < b.entries[h].size(); ++f) {
          const Entry& x = a.entries[g][e];
          const Entry& y = b.entries[h][f];
          const int k = x.k + y.k - zeros, p = x.p + y.p - inf_clients;
          if (k > inst_.k || p > inst_.p) continue;
          if (ng < 0) ng = t.group(a.keys[g]);
          add_entry(t.entries[ng], {x.sat | y.sat, static_cast<std::uint16_t>(k), static_cast<std::uint16_t>(p),
                                    static_cast<std::int32_t>(g), static_cast<std::int32_t>(e), h,
                                    static_cast<std::int32_t>(f)});
        }
    }
  }

  Labelling extract() const {
    Labelling dl;
    dl.mode = scale_.mode();
    dl.rho = scale_.rho();
    dl.eps = scale_.eps();
    dl.height = scale_.height();
    dl.code.assign(n_, kInfCode);
    struct Frame {
      int node, g, e;
    };
    std::vector<Frame> stack{{static_cast<int>(ntd_.nodes.size()) - 1, 0, 0}};
    while (!stack.empty()) {
      Frame f = stack.back();
      stack.pop_back();
      const NiceNode& node = ntd_.nodes[f.node];
      const std::u16string& key = tables_[f.node].keys[f.g];
      for (std::size_t j = 0; j < node.bag.size(); ++j) dl.code[node.bag[j]] = code_at(node, key, j);
      const Entry& e = tables_[f.node].entries[f.g][f.e];
      if (node.child >= 0) stack.push_back({node.child, e.g1, e.e1});
      if (node.child2 >= 0) stack.push_back({node.child2, e.g2, e.e2});
    }
    return dl;
  }

  const Instance& inst_;
  const NiceTreeDecomposition& ntd_;
  LabelScale scale_;
  int n_;
  std::vector<char> client_, supplier_;
  std::vector<std::int64_t> len_;
  std::vector<std::vector<int>> domain_;
  std::vector<Table> tables_;
};

}  // namespace

TwDecision exact_tw_decide(const Instance& inst, const NiceTreeDecomposition& ntd, std::int64_t rho,
                           LabelDomain domain) {
  return Solver(inst, ntd, LabelScale::exact(rho), domain).run();
}

TwDecision approx_tw_decide(const Instance& inst, const NiceTreeDecomposition& ntd, std::int64_t rho,
                            const Rational& eps, LabelDomain domain) {
  return Solver(inst, ntd, LabelScale::approx(rho, eps, height(ntd)), domain).run();
}

Assignment labelling_to_solution(const Instance& inst, const DistanceMatrix& dm, const Labelling& dl) {
  if (dl.code.size() != static_cast<std::size_t>(inst.n)) throw InvalidLabelling("labelling size mismatch", -1);
  const LabelScale scale = dl.scale();
  const auto adj = adjacency(inst);
  std::vector<Vertex> open;
  for (Vertex u = 0; u < inst.n; ++u) {
    const int c = dl.code[u];
    if (c == kZeroCode) {
      if (!inst.is_supplier(u)) throw InvalidLabelling("non-supplier " + std::to_string(u) + " labelled 0", u);
      open.push_back(u);
      continue;
    }
    if (c == kInfCode) continue;
    if (c < 0 || c > scale.max_code())
      throw InvalidLabelling("vertex " + std::to_string(u) + " has a label outside the scale", u);
    bool ok = std::any_of(adj[u].begin(), adj[u].end(), [&](const Neighbor& nb) {
      return nb.length.is_integer() && scale.satisfies(c, dl.code[nb.to], nb.length.to_integer());
    });
    if (!ok) throw InvalidLabelling("vertex " + std::to_string(u) + " is not satisfied", u);
  }
  Assignment a;
  for (Vertex c : inst.clients) {
    if (dl.code[c] == kInfCode) {
      a.phi[c] = kOutlier;
      continue;
    }
    Vertex best = kOutlier;
    for (Vertex s : open)
      if (best == kOutlier || dm.at(c, s) < dm.at(c, best)) best = s;
    if (best == kOutlier) throw InvalidLabelling("client " + std::to_string(c) + " is finite but nothing is open", c);
    a.phi[c] = best;
  }
  return a;
}

TwResult solve_tw(const Instance& inst, const TreeDecomposition* td, const std::optional<Rational>& eps,
                  LabelDomain domain) {
  require_tw_input(inst);
  const DistanceMatrix dm = shortest_paths(inst);
  const TreeDecomposition decomposition = td ? *td : min_degree_decomposition(inst);
  if (auto rep = validate_td(inst, decomposition); !rep.ok())
    throw InputError("decomposition does not fit the instance: " + rep.violations.front());
  const Instance closed = bag_metric_closure(inst, dm, decomposition);
  const NiceTreeDecomposition ntd = make_nice(decomposition);
  const int h = height(ntd);

  std::vector<Rational> costs = candidate_costs(inst, dm);
  if (costs.empty() || costs.front() != Rational(0)) costs.insert(costs.begin(), Rational(0));
  for (const Rational& r : costs) {
    const std::int64_t rho = r.to_integer();
    TwDecision dec = eps ? approx_tw_decide(closed, ntd, rho, *eps, domain) : exact_tw_decide(closed, ntd, rho, domain);
    if (!dec.labelling) continue;
    TwResult res;
    res.assignment = labelling_to_solution(closed, dm, *dec.labelling);
    res.cost = assignment_cost(res.assignment, dm);
    res.rho = rho;
    res.labelling = std::move(*dec.labelling);
    res.height = h;
    if (eps) {
      res.delta = *eps / Rational(2 * static_cast<std::int64_t>(h));
      res.bound_advertised = *eps < Rational(1, 4);
    }
    return res;
  }
  throw NoFeasibleSolution("no labelling fits any candidate cost");
}

}  // namespace ckswo
