#include "ume/io.hpp"

#include <fstream>
#include <sstream>

#include "ume/errors.hpp"

namespace ume {

using nlohmann::json;

namespace {

NodeId parse_node_key(const std::string& key) {
  std::size_t pos = 0;
  int value = 0;
  try {
    value = std::stoi(key, &pos);
  } catch (const std::exception&) {
    throw DataError("bad node key '" + key + "' in source map");
  }
  if (pos != key.size()) {
    throw DataError("bad node key '" + key + "' in source map");
  }
  return value;
}

json evader_to_json(const EvaderSpec& ev, const TransitionMatrix& m) {
  json a = json::object();
  for (const auto& [node, mass] : ev.source) a[std::to_string(node)] = mass;
  json out;
  out["w"] = ev.weight;
  out["a"] = std::move(a);
  out["t"] = ev.target;
  if (ev.model_lambda.has_value()) {
    out["model"] = json{{"lambda", *ev.model_lambda}};
  } else {
    json triplets = json::array();
    for (NodeId i = 0; i < m.node_count(); ++i) {
      for (const auto& e : m.row(i)) {
        triplets.push_back(json::array({i, e.head, e.prob}));
      }
    }
    out["M"] = std::move(triplets);
  }
  return out;
}

EvaderSpec evader_from_json(const json& j, const Graph& g) {
  EvaderSpec ev;
  if (!j.is_object() || !j.contains("w") || !j.contains("a") ||
      !j.contains("t")) {
    throw DataError("evader must be an object with w, a, t");
  }
  ev.weight = j.at("w").get<double>();
  ev.target = j.at("t").get<NodeId>();
  if (!j.at("a").is_object()) throw DataError("evader a must be a map");
  for (const auto& [key, mass] : j.at("a").items()) {
    ev.source.emplace_back(parse_node_key(key), mass.get<double>());
  }
  const bool has_model = j.contains("model");
  const bool has_matrix = j.contains("M");
  if (has_model == has_matrix) {
    throw DataError("evader needs exactly one of model or M");
  }
  if (has_model) {
    const double lambda = j.at("model").at("lambda").get<double>();
    ev.model_lambda = lambda;
    ev.matrix = build_evader_transition(g, ev.target, lambda);
  } else {
    std::vector<double> probs(g.edge_count(), 0.0);
    for (const json& t : j.at("M")) {
      if (!t.is_array() || t.size() != 3) {
        throw DataError("M entries must be [tail, head, prob] triplets");
      }
      const NodeId tail = t[0].get<NodeId>();
      const NodeId head = t[1].get<NodeId>();
      const double prob = t[2].get<double>();
      const auto edge = g.find_edge(tail, head);
      if (!edge.has_value()) {
        throw DataError("M entry (" + std::to_string(tail) + "," +
                        std::to_string(head) + ") is not on a graph edge");
      }
      probs[*edge] = prob;
    }
    ev.matrix = TransitionMatrix(g, probs);
  }
  return ev;
}

Graph graph_from_json(const json& j, bool with_efficiency) {
  if (!j.contains("nodes") || !j.contains("edges")) {
    throw DataError("instance must contain nodes and edges");
  }
  const NodeId n = j.at("nodes").get<NodeId>();
  std::vector<Edge> edges;
  for (const json& e : j.at("edges")) {
    const std::size_t want = with_efficiency ? 5 : 4;
    if (!e.is_array() || e.size() != want) {
      throw DataError(with_efficiency
                          ? "edges must be [id, tail, head, cost, d] tuples"
                          : "edges must be [id, tail, head, cost] tuples");
    }
    Edge edge;
    edge.id = e[0].get<EdgeId>();
    edge.tail = e[1].get<NodeId>();
    edge.head = e[2].get<NodeId>();
    edge.cost = e[3].get<double>();
    edge.efficiency = with_efficiency ? e[4].get<double>() : 0.0;
    edges.push_back(edge);
  }
  return Graph(n, std::move(edges));
}

json run_json(const json& j, const char* what) {
  if (!j.is_object()) {
    throw DataError(std::string(what) + " must be a JSON object");
  }
  return j;
}

}  // namespace

json instance_to_json(const ProblemInstance& p) {
  json j;
  j["nodes"] = p.graph.node_count();
  json edges = json::array();
  for (const Edge& e : p.graph.edges()) {
    edges.push_back(json::array({e.id, e.tail, e.head, e.cost, e.efficiency}));
  }
  j["edges"] = std::move(edges);
  json evaders = json::array();
  for (const EvaderSpec& ev : p.evaders) {
    evaders.push_back(evader_to_json(ev, ev.matrix));
  }
  j["evaders"] = std::move(evaders);
  j["budget"] = p.budget;
  j["tolerance"] = p.tolerance;
  return j;
}

ProblemInstance instance_from_json(const json& j) {
  try {
    run_json(j, "instance");
    ProblemInstance p;
    p.graph = graph_from_json(j, /*with_efficiency=*/true);
    if (!j.contains("evaders") || !j.at("evaders").is_array()) {
      throw DataError("instance must contain an evaders array");
    }
    for (const json& e : j.at("evaders")) {
      p.evaders.push_back(evader_from_json(e, p.graph));
    }
    if (!j.contains("budget")) throw DataError("instance must contain budget");
    p.budget = j.at("budget").get<std::int32_t>();
    p.tolerance = j.value("tolerance", 1e-9);
    p.validate();
    return p;
  } catch (const json::exception& e) {
    throw DataError(std::string("instance schema error: ") + e.what());
  }
}

ProblemInstance read_instance(const std::string& path) {
  json j;
  try {
    j = json::parse(read_text_file(path));
  } catch (const json::exception& e) {
    throw DataError(path + ": " + e.what());
  }
  try {
    return instance_from_json(j);
  } catch (const DataError& e) {
    throw DataError(path + ": " + e.what());
  }
}

void write_instance(const ProblemInstance& p, const std::string& path) {
  write_text_file(path, instance_to_json(p).dump(1) + "\n");
}

json solution_to_json(const Solution& s, const json& config_echo) {
  json j;
  j["solver"] = s.solver;
  j["selected"] = s.selected;
  j["gains"] = s.gains;
  j["objective"] = s.objective;
  j["eval_count"] = s.eval_count;
  j["wall_time"] = s.wall_time;
  j["config"] = config_echo;
  return j;
}

void write_solution(const Solution& s, const json& config_echo,
                    const std::string& path) {
  write_text_file(path, solution_to_json(s, config_echo).dump(1) + "\n");
}

json node_problem_to_json(const NodeProblem& p) {
  json j;
  j["nodes"] = p.graph.node_count();
  json edges = json::array();
  for (const Edge& e : p.graph.edges()) {
    edges.push_back(json::array({e.id, e.tail, e.head, e.cost}));
  }
  j["edges"] = std::move(edges);
  j["node_d"] = p.node_efficiency;
  json evaders = json::array();
  for (const EvaderSpec& ev : p.evaders) {
    evaders.push_back(evader_to_json(ev, ev.matrix));
  }
  j["evaders"] = std::move(evaders);
  j["budget"] = p.budget;
  j["tolerance"] = p.tolerance;
  return j;
}

NodeProblem node_problem_from_json(const json& j) {
  try {
    run_json(j, "node problem");
    NodeProblem p;
    p.graph = graph_from_json(j, /*with_efficiency=*/false);
    if (!j.contains("node_d")) {
      throw DataError("node problem must contain node_d");
    }
    p.node_efficiency = j.at("node_d").get<std::vector<double>>();
    if (static_cast<NodeId>(p.node_efficiency.size()) !=
        p.graph.node_count()) {
      throw DataError("node_d size does not match node count");
    }
    for (const json& e : j.at("evaders")) {
      p.evaders.push_back(evader_from_json(e, p.graph));
    }
    if (!j.contains("budget")) {
      throw DataError("node problem must contain budget");
    }
    p.budget = j.at("budget").get<std::int32_t>();
    p.tolerance = j.value("tolerance", 1e-9);
    p.validate();
    return p;
  } catch (const json::exception& e) {
    throw DataError(std::string("node problem schema error: ") + e.what());
  }
}

NodeProblem read_node_problem(const std::string& path) {
  json j;
  try {
    j = json::parse(read_text_file(path));
  } catch (const json::exception& e) {
    throw DataError(path + ": " + e.what());
  }
  try {
    return node_problem_from_json(j);
  } catch (const DataError& e) {
    throw DataError(path + ": " + e.what());
  }
}

void write_node_problem(const NodeProblem& p, const std::string& path) {
  write_text_file(path, node_problem_to_json(p).dump(1) + "\n");
}

json transform_map_to_json(const TransformMap& m) {
  json j;
  j["direction"] = m.direction == TransformMap::Direction::kEdgeToNode
                       ? "edge_to_node"
                       : "node_to_edge";
  j["forward"] = m.forward;
  j["inverse"] = m.inverse;
  return j;
}

TransformMap transform_map_from_json(const json& j) {
  try {
    TransformMap m;
    const std::string direction = j.at("direction").get<std::string>();
    if (direction == "edge_to_node") {
      m.direction = TransformMap::Direction::kEdgeToNode;
    } else if (direction == "node_to_edge") {
      m.direction = TransformMap::Direction::kNodeToEdge;
    } else {
      throw DataError("unknown transform direction '" + direction + "'");
    }
    m.forward = j.at("forward").get<std::vector<std::int32_t>>();
    m.inverse = j.at("inverse").get<std::vector<std::int32_t>>();
    return m;
  } catch (const json::exception& e) {
    throw DataError(std::string("transform map schema error: ") + e.what());
  }
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path);
  out << text;
  if (!out) throw DataError("write failed for " + path);
}

}  // namespace ume
