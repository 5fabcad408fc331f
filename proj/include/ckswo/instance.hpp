#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ckswo/rational.hpp"

namespace ckswo {

using Vertex = int;

struct Edge {
  Vertex u = 0;
  Vertex v = 0;
  Rational length;
};

/// A CkSwO instance.  Vertex ids are dense in [0, n).
///
/// `suppliers` and `clients` are kept sorted and duplicate-free.  A supplier
/// missing from `capacities` is uncapacitated.  With `self_service` set, a
/// selected supplier that is also a client may serve itself without using
/// capacity.
struct Instance {
  int n = 0;
  std::vector<Edge> edges;
  std::vector<Vertex> suppliers;
  std::vector<Vertex> clients;
  std::map<Vertex, std::int64_t> capacities;
  int k = 0;
  int p = 0;
  bool self_service = false;

  [[nodiscard]] bool is_supplier(Vertex v) const;
  [[nodiscard]] bool is_client(Vertex v) const;
  /// nullopt means infinite.
  [[nodiscard]] std::optional<std::int64_t> capacity(Vertex s) const;
  [[nodiscard]] bool uncapacitated() const { return capacities.empty(); }
  [[nodiscard]] bool all_lengths_integral() const;

  /// Throws InputError naming the first violated invariant.
  void validate() const;
};

Instance load_instance(std::string_view text);
Instance load_instance_file(const std::string& path);

/// Canonical JSON text (fixed key order, sorted ids).  Round-trips through load_instance.
std::string dump_instance(const Instance& inst);

/// FNV-1a over dump_instance, as 16 hex digits.
std::string instance_digest(const Instance& inst);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

}  // namespace ckswo
