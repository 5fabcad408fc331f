// Command-line front end.  Exit codes: 0 solved / valid / feasible,
// 1 infeasible / invalid, 2 usage or input error.

#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ckswo/compare.hpp"
#include "ckswo/errors.hpp"
#include "ckswo/flow.hpp"
#include "ckswo/gadgets.hpp"
#include "ckswo/generators.hpp"
#include "ckswo/instance.hpp"
#include "ckswo/metric.hpp"
#include "ckswo/run_result.hpp"
#include "ckswo/tree_decomposition.hpp"

using namespace ckswo;
using ojson = nlohmann::ordered_json;

namespace {

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty())
    std::cout << text;
  else
    write_file(out_path, text);
}

Rational parse_rational_flag(const std::string& text, const char* flag) {
  try {
    return Rational::parse(text);
  } catch (const std::exception&) {
    throw InputError(std::string("--") + flag + ": '" + text + "' is not a rational number");
  }
}

std::vector<Vertex> parse_id_list(const std::string& text) {
  std::vector<Vertex> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(std::stoi(item));
  return out;
}

const char* kind_name(NiceKind k) {
  switch (k) {
    case NiceKind::Leaf:
      return "leaf";
    case NiceKind::Introduce:
      return "introduce";
    case NiceKind::Forget:
      return "forget";
    case NiceKind::Join:
      return "join";
  }
  return "?";
}

struct SolveFlags {
  std::string in, algo = "oracle", eps = "1/10", rho, td, out;
  std::size_t net_cap = kUnboundedNet;
};

int do_solve(const SolveFlags& f) {
  const Instance inst = load_instance_file(f.in);
  SolveOptions opt;
  opt.algorithm = parse_algorithm(f.algo);
  opt.eps = parse_rational_flag(f.eps, "eps");
  if (opt.eps <= Rational(0)) throw InputError("--eps must be positive");
  if (!f.rho.empty()) opt.rho = parse_rational_flag(f.rho, "rho");
  opt.net_cap = f.net_cap;
  if (!f.td.empty()) opt.td = load_td(read_file(f.td));
  RunResult r = run_solver(inst, opt);
  emit(to_json(r), f.out);
  return r.solved() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Capacitated k-supplier with outliers: solvers, generators and checks"};
  app.require_subcommand(1);

  // solve / oracle
  SolveFlags solve_flags;
  auto* solve = app.add_subcommand("solve", "Solve an instance and print a run result as JSON");
  solve->add_option("--in", solve_flags.in, "Instance JSON file")->required();
  solve->add_option("--algo", solve_flags.algo, "epas-dd | tw-exact | tw-approx | oracle")
      ->check(CLI::IsMember({"epas-dd", "tw-exact", "tw-approx", "oracle"}));
  solve->add_option("--eps", solve_flags.eps, "Accuracy parameter, e.g. 0.1 or 1/10");
  solve->add_option("--rho", solve_flags.rho, "Decide at this cost instead of sweeping candidate costs");
  solve->add_option("--net-cap", solve_flags.net_cap, "Reject costs whose net exceeds this size (epas-dd)");
  solve->add_option("--td", solve_flags.td, "Tree decomposition JSON (tw-*); min-degree heuristic otherwise");
  solve->add_option("--out", solve_flags.out, "Write JSON here instead of stdout");

  SolveFlags oracle_flags;
  auto* oracle = app.add_subcommand("oracle", "Exhaustive optimum for small instances");
  oracle->add_option("--in", oracle_flags.in, "Instance JSON file")->required();
  oracle->add_option("--out", oracle_flags.out, "Write JSON here instead of stdout");

  // gen
  auto* gen = app.add_subcommand("gen", "Generate instances");
  gen->require_subcommand(1);
  std::string gen_out, td_out;
  std::uint64_t seed = 1;
  int n_sup = 5, n_cli = 10, dims = 2, gk = 2, gp = 1;
  std::int64_t cap_lo = 0, cap_hi = 0;
  auto* euclid = gen->add_subcommand("euclid", "Random points in the unit cube, complete bipartite graph");
  euclid->add_option("--suppliers", n_sup)->check(CLI::NonNegativeNumber);
  euclid->add_option("--clients", n_cli)->check(CLI::NonNegativeNumber);
  euclid->add_option("--dims", dims)->check(CLI::Range(1, 3));
  euclid->add_option("--k", gk);
  euclid->add_option("--p", gp);
  euclid->add_option("--cap-lo", cap_lo, "Capacity range low end (omit both for uncapacitated)");
  euclid->add_option("--cap-hi", cap_hi, "Capacity range high end");
  euclid->add_option("--seed", seed);
  euclid->add_option("--out", gen_out);

  int kt_n = 12, kt_tw = 2;
  auto* ktree = gen->add_subcommand("ktree", "Random graph of bounded treewidth with its decomposition");
  ktree->add_option("--n", kt_n)->check(CLI::Range(2, 100000));
  ktree->add_option("--tw", kt_tw)->check(CLI::Range(1, 30));
  ktree->add_option("--k", gk);
  ktree->add_option("--p", gp);
  ktree->add_option("--seed", seed);
  ktree->add_option("--out", gen_out, "Instance output (stdout if omitted)");
  ktree->add_option("--td-out", td_out, "Decomposition output");

  std::string mcc_file, lambda_text = "8", meta_out;
  auto* gadget = gen->add_subcommand("mcc-gadget", "Capacitated k-center instance from a multicolored clique instance");
  gadget->add_option("--mcc", mcc_file, "Multicolored clique JSON")->required();
  gadget->add_option("--lambda", lambda_text, "Long edge length, at least 8");
  gadget->add_option("--out", gen_out);
  gadget->add_option("--meta-out", meta_out, "Write marked vertices and budget here");

  int mcc_k = 2, mcc_n = 2, mcc_m = 2;
  auto* planted = gen->add_subcommand("mcc", "Multicolored clique instance with a planted clique");
  planted->add_option("--k", mcc_k)->check(CLI::Range(2, 50));
  planted->add_option("--N", mcc_n)->check(CLI::Range(1, 1000));
  planted->add_option("--m", mcc_m, "Edges between each pair of classes");
  planted->add_option("--seed", seed);
  planted->add_option("--out", gen_out);

  // td
  auto* td = app.add_subcommand("td", "Tree decomposition utilities");
  td->require_subcommand(1);
  std::string td_in, td_file, td_write;
  auto* tdv = td->add_subcommand("validate", "Check the three decomposition properties");
  tdv->add_option("--in", td_in, "Instance JSON")->required();
  tdv->add_option("--td", td_file, "Decomposition JSON")->required();
  auto* tdn = td->add_subcommand("nicify", "Convert to a nice decomposition");
  tdn->add_option("--td", td_file, "Decomposition JSON")->required();
  tdn->add_option("--out", td_write);
  auto* tdc = td->add_subcommand("closure", "Add bag-internal shortest-path edges");
  tdc->add_option("--in", td_in, "Instance JSON")->required();
  tdc->add_option("--td", td_file, "Decomposition JSON (min-degree heuristic if omitted)");
  tdc->add_option("--out", td_write);

  // check-feasible
  std::string cf_in, cf_set, cf_rho;
  auto* cf = app.add_subcommand("check-feasible", "Flow test for a fixed supplier set and cost");
  cf->add_option("--in", cf_in, "Instance JSON")->required();
  cf->add_option("--suppliers", cf_set, "Comma-separated supplier ids")->required();
  cf->add_option("--rho", cf_rho, "Cost bound")->required();

  // compare
  std::string corpus, algos_text = "epas-dd", cmp_eps = "1/10", cmp_out;
  int jobs = 1;
  auto* cmp = app.add_subcommand("compare", "Ratio of solver cost to the oracle optimum over a corpus");
  cmp->add_option("--corpus", corpus, "Directory of instance JSON files")->required();
  cmp->add_option("--algos", algos_text, "Comma-separated algorithms");
  cmp->add_option("--eps", cmp_eps);
  cmp->add_option("--jobs", jobs)->check(CLI::Range(1, 256));
  cmp->add_option("--out", cmp_out, "CSV output (stdout if omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*solve) return do_solve(solve_flags);
    if (*oracle) {
      oracle_flags.algo = "oracle";
      return do_solve(oracle_flags);
    }
    if (*euclid) {
      std::optional<CapacityRange> caps;
      if (cap_lo > 0 || cap_hi > 0) caps = CapacityRange{cap_lo, cap_hi};
      emit(dump_instance(gen_random_euclidean(n_sup, n_cli, dims, gk, gp, caps, seed)), gen_out);
      return 0;
    }
    if (*ktree) {
      auto [inst, dec] = gen_random_bounded_tw(kt_n, kt_tw, gk, gp, seed);
      emit(dump_instance(inst), gen_out);
      if (!td_out.empty()) write_file(td_out, dump_td(dec));
      return 0;
    }
    if (*gadget) {
      const MccInstance mcc = load_mcc(read_file(mcc_file));
      const GadgetInstance gi = gen_mcc_gadget(mcc, parse_rational_flag(lambda_text, "lambda"));
      emit(dump_instance(gi.instance), gen_out);
      if (!meta_out.empty()) {
        ojson meta;
        meta["kbar"] = gi.kbar;
        meta["lambda"] = gi.lambda.to_string();
        meta["marked"] = gi.marked;
        meta["big_sets"] = gi.big_sets;
        meta["class_vertices"] = gi.class_vertex;
        write_file(meta_out, meta.dump() + "\n");
      }
      return 0;
    }
    if (*planted) {
      emit(dump_mcc(gen_planted_mcc(mcc_k, mcc_n, mcc_m, seed)), gen_out);
      return 0;
    }
    if (*tdv) {
      const Instance inst = load_instance_file(td_in);
      TdReport rep = validate_td(inst, load_td(read_file(td_file)));
      ojson doc;
      doc["valid"] = rep.ok();
      doc["width"] = rep.width;
      doc["violations"] = rep.violations;
      std::cout << doc.dump(2) << "\n";
      return rep.ok() ? 0 : 1;
    }
    if (*tdn) {
      const NiceTreeDecomposition ntd = make_nice(load_td(read_file(td_file)));
      ojson doc;
      ojson nodes = ojson::array();
      for (const NiceNode& node : ntd.nodes) {
        ojson j;
        j["kind"] = kind_name(node.kind);
        j["bag"] = node.bag;
        if (node.vertex >= 0) j["vertex"] = node.vertex;
        ojson kids = ojson::array();
        if (node.child >= 0) kids.push_back(node.child);
        if (node.child2 >= 0) kids.push_back(node.child2);
        j["children"] = kids;
        nodes.push_back(j);
      }
      doc["nodes"] = nodes;
      doc["root"] = ntd.root();
      doc["width"] = ntd.width();
      doc["height"] = height(ntd);
      emit(doc.dump() + "\n", td_write);
      return 0;
    }
    if (*tdc) {
      const Instance inst = load_instance_file(td_in);
      const TreeDecomposition dec = td_file.empty() ? min_degree_decomposition(inst) : load_td(read_file(td_file));
      if (auto rep = validate_td(inst, dec); !rep.ok()) throw InputError(rep.violations.front());
      emit(dump_instance(bag_metric_closure(inst, shortest_paths(inst), dec)), td_write);
      return 0;
    }
    if (*cf) {
      const Instance inst = load_instance_file(cf_in);
      const std::vector<Vertex> S = parse_id_list(cf_set);
      for (Vertex s : S)
        if (!inst.is_supplier(s)) throw InputError("vertex " + std::to_string(s) + " is not a supplier");
      if (S.size() > static_cast<std::size_t>(inst.k)) throw InputError("more suppliers than k");
      const Rational rho = parse_rational_flag(cf_rho, "rho");
      const DistanceMatrix dm = shortest_paths(inst);
      auto a = feasible_assignment(inst, dm, S, rho);
      ojson doc;
      doc["feasible"] = a.has_value();
      if (a) {
        ValidationReport rep = validate_assignment(inst, dm, *a, rho);
        if (!rep.ok()) throw std::logic_error("flow assignment failed validation: " + rep.summary());
        ojson phi = ojson::object();
        for (const auto& [c, s] : a->phi) phi[std::to_string(c)] = s == kOutlier ? ojson(nullptr) : ojson(s);
        doc["assignment"] = phi;
        doc["cost"] = assignment_cost(*a, dm).to_string();
      }
      std::cout << doc.dump(2) << "\n";
      return a ? 0 : 1;
    }
    if (*cmp) {
      std::vector<Algorithm> algos;
      std::stringstream ss(algos_text);
      std::string name;
      while (std::getline(ss, name, ','))
        if (!name.empty()) algos.push_back(parse_algorithm(name));
      CompareReport rep = run_compare(corpus, algos, parse_rational_flag(cmp_eps, "eps"), jobs);
      emit(compare_csv(rep), cmp_out);
      std::cerr << "max ratio: " << (rep.max_ratio ? rep.max_ratio->to_string() : std::string("n/a")) << "\n";
      return 0;
    }
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
