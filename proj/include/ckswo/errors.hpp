#pragma once

#include <stdexcept>
#include <string>

namespace ckswo {

// Malformed or invariant-violating input (files, flags, decompositions).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A solver swept every candidate cost without success.
class NoFeasibleSolution : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An exhaustive routine refused to run because its enumeration would be too large.
class GuardExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ckswo
