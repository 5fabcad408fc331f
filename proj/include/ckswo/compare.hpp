#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ckswo/rational.hpp"
#include "ckswo/run_result.hpp"

namespace ckswo {

struct CompareRow {
  std::string instance;  // file name
  Rational opt;
  std::string algo;
  std::optional<Rational> cost;  // absent when the solver rejected the instance
  std::string note;
};

struct CompareReport {
  std::vector<CompareRow> rows;
  std::optional<Rational> max_ratio;  // over rows with a cost and positive opt
};

/// Runs the oracle and each algorithm on every *.json under `corpus_dir`
/// (sorted by name) using up to `jobs` threads.  Throws InputError when the
/// oracle has no result for an instance.
CompareReport run_compare(const std::string& corpus_dir, const std::vector<Algorithm>& algos, const Rational& eps,
                          int jobs);

/// Header `instance,opt,algo,cost,ratio`, one line per row.
std::string compare_csv(const CompareReport& report);

/// cost / opt, with 0/0 read as 1.  nullopt for a positive cost over opt 0.
std::optional<Rational> cost_ratio(const Rational& cost, const Rational& opt);

}  // namespace ckswo
