#include "ckswo/run_result.hpp"

#include <chrono>
#include <stdexcept>

#include <json.hpp>

#include "ckswo/errors.hpp"
#include "ckswo/metric.hpp"
#include "ckswo/oracle.hpp"
#include "ckswo/tw_dp.hpp"

namespace ckswo {

Algorithm parse_algorithm(const std::string& name) {
  if (name == "epas-dd") return Algorithm::EpasDd;
  if (name == "tw-exact") return Algorithm::TwExact;
  if (name == "tw-approx") return Algorithm::TwApprox;
  if (name == "oracle") return Algorithm::Oracle;
  throw InputError("unknown algorithm '" + name + "'");
}

std::string algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::EpasDd:
      return "epas-dd";
    case Algorithm::TwExact:
      return "tw-exact";
    case Algorithm::TwApprox:
      return "tw-approx";
    case Algorithm::Oracle:
      return "oracle";
  }
  return "?";
}

namespace {

void attach(RunResult& r, const Instance& inst, const DistanceMatrix& dm, Assignment a, const Rational& bound) {
  const Rational cost = assignment_cost(a, dm);
  ValidationReport rep = validate_assignment(inst, dm, a, cost);
  if (!rep.ok()) throw std::logic_error(r.algorithm + " returned an invalid assignment: " + rep.summary());
  if (cost > bound)
    throw std::logic_error(r.algorithm + " returned cost " + cost.to_string() + " above its bound " + bound.to_string());
  r.verdict = "solved";
  r.cost = cost;
  r.assignment = std::move(a);
}

void run_tw(RunResult& r, const Instance& inst, const DistanceMatrix& dm, const SolveOptions& opt) {
  const bool approx = opt.algorithm == Algorithm::TwApprox;
  std::optional<Rational> eps;
  if (approx) {
    eps = opt.eps;
    r.eps = opt.eps;
  }
  if (!opt.rho) {
    try {
      TwResult res = solve_tw(inst, opt.td ? &*opt.td : nullptr, eps);
      r.rho_star = Rational(res.rho);
      r.height = res.height;
      if (approx) {
        r.delta = res.delta;
        r.bound_advertised = res.bound_advertised;
      }
      const Rational factor = approx ? (Rational(1) + opt.eps) * (Rational(1) + opt.eps) : Rational(1);
      attach(r, inst, dm, std::move(res.assignment), factor * Rational(res.rho));
    } catch (const NoFeasibleSolution&) {
      r.verdict = "infeasible";
    }
    return;
  }
  if (!opt.rho->is_integer()) throw InputError("--rho must be an integer for the tree-decomposition solvers");
  const std::int64_t rho = opt.rho->to_integer();
  r.rho = *opt.rho;
  require_tw_input(inst);
  const TreeDecomposition td = opt.td ? *opt.td : min_degree_decomposition(inst);
  if (auto rep = validate_td(inst, td); !rep.ok())
    throw InputError("decomposition does not fit the instance: " + rep.violations.front());
  const Instance closed = bag_metric_closure(inst, dm, td);
  const NiceTreeDecomposition ntd = make_nice(td);
  r.height = height(ntd);
  TwDecision dec = approx ? approx_tw_decide(closed, ntd, rho, opt.eps) : exact_tw_decide(closed, ntd, rho);
  if (approx) {
    r.delta = opt.eps / Rational(2 * static_cast<std::int64_t>(*r.height));
    r.bound_advertised = opt.eps < Rational(1, 4);
  }
  if (!dec.labelling) {
    r.verdict = "no-solution-at-rho";
    return;
  }
  const Rational factor = approx ? (Rational(1) + opt.eps) * (Rational(1) + opt.eps) : Rational(1);
  attach(r, inst, dm, labelling_to_solution(closed, dm, *dec.labelling), factor * *opt.rho);
}

}  // namespace

RunResult run_solver(const Instance& inst, const SolveOptions& opt) {
  const auto start = std::chrono::steady_clock::now();
  RunResult r;
  r.algorithm = algorithm_name(opt.algorithm);
  r.instance_digest = instance_digest(inst);
  const DistanceMatrix dm = shortest_paths(inst);

  switch (opt.algorithm) {
    case Algorithm::Oracle: {
      if (opt.rho) throw InputError("the oracle does not take --rho");
      if (auto res = brute_force_opt(inst, dm)) {
        r.rho_star = res->cost;
        attach(r, inst, dm, std::move(res->assignment), res->cost);
      } else {
        r.verdict = "infeasible";
      }
      break;
    }
    case Algorithm::EpasDd: {
      r.eps = opt.eps;
      if (opt.rho) {
        r.rho = *opt.rho;
        EpasDecision dec = decide_epas_dd(prune_suppliers(inst, dm, *opt.rho), dm, *opt.rho, opt.eps, opt.net_cap);
        r.net_size = dec.net_size;
        r.configs_tried = dec.configs_tried;
        if (dec.assignment)
          attach(r, inst, dm, std::move(*dec.assignment), (Rational(1) + Rational(2) * opt.eps) * *opt.rho);
        else
          r.verdict = dec.net_too_large ? "net-too-large" : "no-solution-at-rho";
        break;
      }
      try {
        EpasResult res = solve_epas_dd(inst, dm, opt.eps, opt.net_cap);
        r.rho_star = res.rho;
        r.net_size = res.net_size;
        r.configs_tried = res.configs_tried;
        attach(r, inst, dm, std::move(res.assignment), (Rational(1) + opt.eps) * res.rho);
      } catch (const NoFeasibleSolution&) {
        r.verdict = "infeasible";
      }
      break;
    }
    case Algorithm::TwExact:
    case Algorithm::TwApprox:
      run_tw(r, inst, dm, opt);
      break;
  }
  r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::string to_json(const RunResult& r) {
  nlohmann::ordered_json doc;
  doc["algorithm"] = r.algorithm;
  doc["instance_digest"] = r.instance_digest;
  doc["verdict"] = r.verdict;
  if (r.cost) doc["cost"] = r.cost->to_string();
  if (r.assignment) {
    nlohmann::ordered_json phi = nlohmann::ordered_json::object();
    for (const auto& [c, s] : r.assignment->phi)
      phi[std::to_string(c)] = s == kOutlier ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(s);
    doc["assignment"] = phi;
  }
  if (r.rho_star) doc["rho_star"] = r.rho_star->to_string();
  if (r.net_size) doc["net_size"] = *r.net_size;
  if (r.configs_tried) doc["configs_tried"] = *r.configs_tried;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  if (r.eps) params["eps"] = r.eps->to_string();
  if (r.rho) params["rho"] = r.rho->to_string();
  if (r.delta) params["delta"] = r.delta->to_string();
  if (r.height) params["height"] = *r.height;
  if (r.bound_advertised) params["bound_advertised"] = *r.bound_advertised;
  doc["parameters"] = params;
  doc["wall_seconds"] = r.wall_seconds;
  return doc.dump(2) + "\n";
}

RunResult run_result_from_json(const std::string& text) {
  using nlohmann::json;
  try {
    json doc = json::parse(text);
    RunResult r;
    r.algorithm = doc.at("algorithm").get<std::string>();
    r.instance_digest = doc.at("instance_digest").get<std::string>();
    r.verdict = doc.at("verdict").get<std::string>();
    auto rational = [&](const json& obj, const char* key) -> std::optional<Rational> {
      if (auto it = obj.find(key); it != obj.end()) return Rational::parse(it->get<std::string>());
      return std::nullopt;
    };
    r.cost = rational(doc, "cost");
    if (auto it = doc.find("assignment"); it != doc.end()) {
      Assignment a;
      for (const auto& [c, s] : it->items()) a.phi[std::stoi(c)] = s.is_null() ? kOutlier : s.get<Vertex>();
      r.assignment = std::move(a);
    }
    r.rho_star = rational(doc, "rho_star");
    if (auto it = doc.find("net_size"); it != doc.end()) r.net_size = it->get<std::size_t>();
    if (auto it = doc.find("configs_tried"); it != doc.end()) r.configs_tried = it->get<std::uint64_t>();
    const json& params = doc.at("parameters");
    r.eps = rational(params, "eps");
    r.rho = rational(params, "rho");
    r.delta = rational(params, "delta");
    if (auto it = params.find("height"); it != params.end()) r.height = it->get<int>();
    if (auto it = params.find("bound_advertised"); it != params.end()) r.bound_advertised = it->get<bool>();
    r.wall_seconds = doc.at("wall_seconds").get<double>();
    if (r.cost.has_value() != r.solved()) throw InputError("cost must be present exactly when solved");
    return r;
  } catch (const json::exception& ex) {
    throw InputError(std::string("run result parse error: ") + ex.what());
  }
}

}  // namespace ckswo
