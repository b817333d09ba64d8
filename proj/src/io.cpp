#include "rgather/io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace rgather {

namespace {

using nlohmann::json;

long long int_field(const json& node, const std::string& where) {
  try {
    if (node.is_string()) {
      const std::string& s = node.get_ref<const std::string&>();
      size_t pos = 0;
      long long v = std::stoll(s, &pos);
      if (pos != s.size()) throw std::invalid_argument(s);
      return v;
    }
    if (node.is_number_integer()) return node.get<long long>();
  } catch (const std::exception&) {
    fail(Errc::ParseError, where + ": expected a decimal integer, got " + node.dump());
  }
  fail(Errc::ParseError, where + ": expected a decimal integer, got " + node.dump());
}

std::string dec(long long v) { return std::to_string(v); }

json parse_json(const std::string& text) {
  json doc = json::parse(text, nullptr, false);
  if (doc.is_discarded()) fail(Errc::ParseError, "input is not valid JSON");
  return doc;
}

const json& need(const json& doc, const std::string& key) {
  auto it = doc.find(key);
  if (it == doc.end()) fail(Errc::ParseError, "missing field '" + key + "'");
  return *it;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::ParseError, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

InstanceFile parse_instance_text(const std::string& text) {
  json doc = parse_json(text);
  if (!doc.is_object()) fail(Errc::ParseError, "top level must be an object");

  long long version = int_field(need(doc, "schema_version"), "schema_version");
  if (version != 1) {
    fail(Errc::ParseError, "unsupported schema_version " + std::to_string(version));
  }
  long long r = int_field(need(doc, "r"), "r");
  if (r < 1) fail(Errc::ValidationError, "r must be >= 1, got " + std::to_string(r));
  long long root = int_field(need(doc, "root"), "root");

  const json& edges_node = need(doc, "edges");
  if (!edges_node.is_array()) fail(Errc::ParseError, "edges: expected an array");
  std::vector<EdgeInput> edges;
  edges.reserve(edges_node.size());
  for (size_t i = 0; i < edges_node.size(); ++i) {
    const json& e = edges_node[i];
    std::string where = "edges[" + std::to_string(i) + "]";
    if (!e.is_array() || e.size() != 3) fail(Errc::ParseError, where + ": expected [u, v, length]");
    edges.push_back({static_cast<VertexId>(int_field(e[0], where + ".u")),
                     static_cast<VertexId>(int_field(e[1], where + ".v")),
                     int_field(e[2], where + ".length")});
  }

  const json& users_node = need(doc, "users");
  if (!users_node.is_array()) fail(Errc::ParseError, "users: expected an array");
  std::vector<VertexId> users;
  users.reserve(users_node.size());
  for (size_t i = 0; i < users_node.size(); ++i) {
    users.push_back(
        static_cast<VertexId>(int_field(users_node[i], "users[" + std::to_string(i) + "]")));
  }

  const json& fac_node = need(doc, "facilities");
  if (!fac_node.is_array()) fail(Errc::ParseError, "facilities: expected an array");
  std::vector<FacilitySpot> facilities;
  facilities.reserve(fac_node.size());
  for (size_t i = 0; i < fac_node.size(); ++i) {
    const json& f = fac_node[i];
    std::string where = "facilities[" + std::to_string(i) + "]";
    if (!f.is_object()) fail(Errc::ParseError, where + ": expected an object");
    long long cost = f.contains("open_cost") ? int_field(f["open_cost"], where + ".open_cost") : 0;
    facilities.push_back({static_cast<VertexId>(int_field(need(f, "vertex"), where + ".vertex")),
                          cost});
  }

  WeightedTree tree = [&] {
    try {
      return WeightedTree::build(edges, static_cast<VertexId>(root));
    } catch (const Error& e) {
      fail(Errc::ValidationError, std::string("edges: ") + e.what());
    }
  }();

  InstanceFile out{Instance(std::move(tree), std::move(users), std::move(facilities),
                            static_cast<int>(r)),
                   {}, {}};
  if (doc.contains("variant")) {
    const json& variant = doc["variant"];
    if (!variant.is_object()) fail(Errc::ParseError, "variant: expected an object");
    if (variant.contains("outlier_fraction")) {
      if (!variant["outlier_fraction"].is_string()) {
        fail(Errc::ParseError, "variant.outlier_fraction: expected a p/q string");
      }
      out.outlier_fraction = Rational::parse(variant["outlier_fraction"].get<std::string>());
    }
    if (variant.contains("max_open")) {
      out.max_open = static_cast<int>(int_field(variant["max_open"], "variant.max_open"));
    }
  }
  return out;
}

InstanceFile parse_instance_file(const std::string& path) {
  return parse_instance_text(read_file(path));
}

std::string serialize_instance(const Instance& instance,
                               const std::optional<Rational>& outlier_fraction,
                               const std::optional<int>& max_open) {
  json doc;
  doc["schema_version"] = "1";
  doc["r"] = dec(instance.r());
  doc["root"] = dec(instance.tree().root());
  json edges = json::array();
  for (VertexId v = 0; v < instance.tree().vertex_count(); ++v) {
    VertexId p = instance.tree().parent(v);
    if (p < 0) continue;
    edges.push_back({dec(p), dec(v), dec(instance.tree().edge_length_to_parent(v))});
  }
  doc["edges"] = std::move(edges);
  json users = json::array();
  for (VertexId v : instance.user_vertices()) users.push_back(dec(v));
  doc["users"] = std::move(users);
  json facilities = json::array();
  for (const FacilitySpot& f : instance.facilities()) {
    facilities.push_back({{"vertex", dec(f.vertex)}, {"open_cost", dec(f.open_cost)}});
  }
  doc["facilities"] = std::move(facilities);
  if (outlier_fraction || max_open) {
    json variant;
    if (outlier_fraction) variant["outlier_fraction"] = outlier_fraction->str();
    if (max_open) variant["max_open"] = dec(*max_open);
    doc["variant"] = std::move(variant);
  }
  return doc.dump(2) + "\n";
}

Solution parse_solution_text(const std::string& text) {
  json doc = parse_json(text);
  if (!doc.is_object()) fail(Errc::ParseError, "top level must be an object");
  Solution sol;
  const json& open = need(doc, "open");
  if (!open.is_array()) fail(Errc::ParseError, "open: expected an array");
  for (size_t i = 0; i < open.size(); ++i) {
    sol.open_facilities.push_back(
        static_cast<FacilityId>(int_field(open[i], "open[" + std::to_string(i) + "]")));
  }
  const json& assignment = need(doc, "assignment");
  if (!assignment.is_array()) fail(Errc::ParseError, "assignment: expected an array");
  for (size_t i = 0; i < assignment.size(); ++i) {
    sol.assignment.push_back(static_cast<int32_t>(
        int_field(assignment[i], "assignment[" + std::to_string(i) + "]")));
  }
  return sol;
}

Solution parse_solution_file(const std::string& path) {
  return parse_solution_text(read_file(path));
}

std::string serialize_solution(const Solution& solution) {
  json doc;
  doc["schema_version"] = "1";
  json open = json::array();
  for (FacilityId f : solution.open_facilities) open.push_back(dec(f));
  doc["open"] = std::move(open);
  json assignment = json::array();
  for (int32_t a : solution.assignment) assignment.push_back(dec(a));
  doc["assignment"] = std::move(assignment);
  return doc.dump(2) + "\n";
}

std::string serialize_report(const RunReport& report) {
  json doc;
  doc["solver"] = report.solver;
  if (!report.instance_path.empty()) doc["instance"] = report.instance_path;
  if (!report.parameters.empty()) doc["parameters"] = report.parameters;
  if (report.cost) doc["cost"] = dec(*report.cost);
  if (report.minsum_cost) doc["minsum_cost"] = dec(*report.minsum_cost);
  doc["verdict"] = report.verdict;
  doc["wall_ms"] = report.wall_ms;
  if (report.seed) doc["seed"] = dec(static_cast<long long>(*report.seed));
  return doc.dump() + "\n";
}

}  // namespace rgather
