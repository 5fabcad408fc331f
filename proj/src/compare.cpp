#include "ckswo/compare.hpp"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <sstream>
#include <thread>

#include "ckswo/errors.hpp"

namespace ckswo {

std::optional<Rational> cost_ratio(const Rational& cost, const Rational& opt) {
  if (opt == Rational(0)) return cost == Rational(0) ? std::optional<Rational>(Rational(1)) : std::nullopt;
  return cost / opt;
}

CompareReport run_compare(const std::string& corpus_dir, const std::vector<Algorithm>& algos, const Rational& eps,
                          int jobs) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(corpus_dir)) throw InputError("corpus directory '" + corpus_dir + "' not found");
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(corpus_dir))
    if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
  std::sort(files.begin(), files.end(), [](const fs::path& a, const fs::path& b) { return a.filename() < b.filename(); });

  std::vector<std::vector<CompareRow>> per_file(files.size());
  std::vector<std::string> failure(files.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < files.size(); i = next++) {
      const std::string name = files[i].filename().string();
      try {
        const Instance inst = load_instance_file(files[i].string());
        SolveOptions base;
        base.algorithm = Algorithm::Oracle;
        RunResult oracle = run_solver(inst, base);
        if (!oracle.solved()) throw InputError("missing oracle result for " + name);
        for (Algorithm a : algos) {
          CompareRow row{name, *oracle.cost, algorithm_name(a), std::nullopt, ""};
          SolveOptions opt;
          opt.algorithm = a;
          opt.eps = eps;
          try {
            RunResult res = run_solver(inst, opt);
            if (res.solved())
              row.cost = res.cost;
            else
              row.note = res.verdict;
          } catch (const InputError& ex) {
            row.note = ex.what();
          }
          per_file[i].push_back(std::move(row));
        }
      } catch (const std::exception& ex) {
        failure[i] = name + ": " + ex.what();
      }
    }
  };
  const int threads = std::max(1, std::min<int>(jobs, static_cast<int>(files.size())));
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  CompareReport report;
  for (std::size_t i = 0; i < files.size(); ++i) {
    if (!failure[i].empty()) throw InputError(failure[i]);
    for (CompareRow& row : per_file[i]) {
      if (row.cost)
        if (auto r = cost_ratio(*row.cost, row.opt); r && row.opt > Rational(0))
          report.max_ratio = report.max_ratio ? std::max(*report.max_ratio, *r) : *r;
      report.rows.push_back(std::move(row));
    }
  }
  return report;
}

std::string compare_csv(const CompareReport& report) {
  std::ostringstream out;
  out << "instance,opt,algo,cost,ratio\n";
  for (const CompareRow& row : report.rows) {
    out << row.instance << ',' << row.opt << ',' << row.algo << ',';
    if (!row.cost) {
      out << "NA,NA\n";
      continue;
    }
    out << *row.cost << ',';
    if (auto r = cost_ratio(*row.cost, row.opt))
      out << r->to_string() << '\n';
    else
      out << "inf\n";
  }
  return out.str();
}

}  // namespace ckswo
