#include "ckswo/instance.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ckswo/errors.hpp"

namespace ckswo {

using nlohmann::json;

bool Instance::is_supplier(Vertex v) const { return std::binary_search(suppliers.begin(), suppliers.end(), v); }

bool Instance::is_client(Vertex v) const { return std::binary_search(clients.begin(), clients.end(), v); }

std::optional<std::int64_t> Instance::capacity(Vertex s) const {
  auto it = capacities.find(s);
  if (it == capacities.end()) return std::nullopt;
  return it->second;
}

bool Instance::all_lengths_integral() const {
  return std::all_of(edges.begin(), edges.end(), [](const Edge& e) { return e.length.is_integer(); });
}

void Instance::validate() const {
  auto fail = [](const std::string& what) { throw InputError("invalid instance: " + what); };
  if (n < 0) fail("negative vertex count");
  auto in_range = [&](Vertex v) { return v >= 0 && v < n; };
  for (const Edge& e : edges) {
    if (!in_range(e.u) || !in_range(e.v))
      fail("edge endpoint out of range (" + std::to_string(e.u) + ", " + std::to_string(e.v) + ")");
    if (e.u == e.v) fail("self-loop at vertex " + std::to_string(e.u));
    if (e.length.is_infinite() || e.length <= Rational(0))
      fail("non-positive edge length on (" + std::to_string(e.u) + ", " + std::to_string(e.v) + ")");
  }
  for (const auto* set : {&suppliers, &clients}) {
    if (!std::is_sorted(set->begin(), set->end()) ||
        std::adjacent_find(set->begin(), set->end()) != set->end())
      fail("vertex sets must be sorted and duplicate-free");
    for (Vertex v : *set)
      if (!in_range(v)) fail("vertex id " + std::to_string(v) + " out of range");
  }
  for (const auto& [s, cap] : capacities) {
    if (!is_supplier(s)) fail("capacity given for non-supplier " + std::to_string(s));
    if (cap <= 0) fail("non-positive capacity at supplier " + std::to_string(s));
  }
  if (k < 0 || p < 0) fail("negative budget");
  if (static_cast<std::size_t>(k) > suppliers.size()) fail("k exceeds the number of suppliers");
  if (static_cast<std::size_t>(p) > clients.size()) fail("p exceeds the number of clients");
}

namespace {

Rational parse_length(const json& j, std::size_t index) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (j.is_string()) {
    try {
      return Rational::parse(j.get<std::string>());
    } catch (const std::exception& ex) {
      throw InputError("edges[" + std::to_string(index) + "]: " + ex.what());
    }
  }
  throw InputError("edges[" + std::to_string(index) + "]: length must be an integer or a decimal string");
}

std::vector<Vertex> sorted_ids(const json& j, const char* field) {
  if (!j.is_array()) throw InputError(std::string("field '") + field + "' must be an array");
  std::vector<Vertex> out;
  for (const auto& x : j) {
    if (!x.is_number_integer()) throw InputError(std::string("field '") + field + "' must hold integer ids");
    out.push_back(x.get<Vertex>());
  }
  std::sort(out.begin(), out.end());
  if (std::adjacent_find(out.begin(), out.end()) != out.end())
    throw InputError(std::string("field '") + field + "' lists a vertex twice");
  return out;
}

const json& require(const json& obj, const char* field) {
  auto it = obj.find(field);
  if (it == obj.end()) throw InputError(std::string("missing field '") + field + "'");
  return *it;
}

}  // namespace

Instance load_instance(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& ex) {
    throw InputError(std::string("instance parse error: ") + ex.what());
  }
  if (!doc.is_object()) throw InputError("instance must be a JSON object");
  try {
    if (require(doc, "version").get<int>() != 1) throw InputError("unsupported instance version");
    Instance inst;
    inst.n = require(doc, "n").get<int>();
    const json& edges = require(doc, "edges");
    if (!edges.is_array()) throw InputError("field 'edges' must be an array");
    for (std::size_t i = 0; i < edges.size(); ++i) {
      const json& e = edges[i];
      if (!e.is_array() || e.size() != 3) throw InputError("edges[" + std::to_string(i) + "] must be [u, v, length]");
      inst.edges.push_back({e[0].get<Vertex>(), e[1].get<Vertex>(), parse_length(e[2], i)});
    }
    inst.suppliers = sorted_ids(require(doc, "suppliers"), "suppliers");
    inst.clients = sorted_ids(require(doc, "clients"), "clients");
    if (auto it = doc.find("capacities"); it != doc.end()) {
      if (!it->is_object()) throw InputError("field 'capacities' must be an object");
      for (const auto& [key, value] : it->items()) {
        Vertex s = 0;
        try {
          std::size_t used = 0;
          s = std::stoi(key, &used);
          if (used != key.size()) throw std::invalid_argument(key);
        } catch (const std::exception&) {
          throw InputError("capacities: key '" + key + "' is not a vertex id");
        }
        if (value.is_string() && value.get<std::string>() == "inf") continue;
        if (!value.is_number_integer()) throw InputError("capacities[" + key + "] must be an integer");
        inst.capacities[s] = value.get<std::int64_t>();
      }
    }
    inst.k = require(doc, "k").get<int>();
    inst.p = require(doc, "p").get<int>();
    if (auto it = doc.find("self_service"); it != doc.end()) inst.self_service = it->get<bool>();
    inst.validate();
    return inst;
  } catch (const json::exception& ex) {
    throw InputError(std::string("instance field error: ") + ex.what());
  }
}

Instance load_instance_file(const std::string& path) { return load_instance(read_file(path)); }

std::string dump_instance(const Instance& inst) {
  // Hand-assembled so key order is fixed regardless of the json object type.
  std::ostringstream out;
  out << "{\"version\":1,\"n\":" << inst.n << ",\"edges\":[";
  for (std::size_t i = 0; i < inst.edges.size(); ++i) {
    const Edge& e = inst.edges[i];
    if (i) out << ',';
    out << '[' << e.u << ',' << e.v << ',';
    if (e.length.is_integer())
      out << e.length.num();
    else
      out << '"' << e.length.to_string() << '"';
    out << ']';
  }
  auto ids = [&](const std::vector<Vertex>& v) {
    out << '[';
    for (std::size_t i = 0; i < v.size(); ++i) out << (i ? "," : "") << v[i];
    out << ']';
  };
  out << "],\"suppliers\":";
  ids(inst.suppliers);
  out << ",\"clients\":";
  ids(inst.clients);
  out << ",\"capacities\":{";
  bool first = true;
  for (const auto& [s, cap] : inst.capacities) {
    out << (first ? "" : ",") << '"' << s << "\":" << cap;
    first = false;
  }
  out << "},\"k\":" << inst.k << ",\"p\":" << inst.p;
  if (inst.self_service) out << ",\"self_service\":true";
  out << "}\n";
  return out.str();
}

std::string instance_digest(const Instance& inst) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : dump_instance(inst)) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << text;
}

}  // namespace ckswo
