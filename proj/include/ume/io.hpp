#pragma once

#include <string>

#include <json.hpp>

#include "ume/instance.hpp"
#include "ume/solvers.hpp"
#include "ume/transforms.hpp"

namespace ume {

// Instance JSON: nodes, edges [(id, tail, head, cost, d)], evaders
// [(w, a sparse map, t, M triplets or model:{lambda})], budget, tolerance.
// Round-trips bit-exactly (integers exact, reals as shortest exact decimals).
nlohmann::json instance_to_json(const ProblemInstance& p);
ProblemInstance instance_from_json(const nlohmann::json& j);
ProblemInstance read_instance(const std::string& path);
void write_instance(const ProblemInstance& p, const std::string& path);

nlohmann::json solution_to_json(const Solution& s, const nlohmann::json& config_echo);
void write_solution(const Solution& s, const nlohmann::json& config_echo,
                    const std::string& path);

// Node-interdiction problem: as instance JSON but per-node "node_d" and
// cost-only edges.
nlohmann::json node_problem_to_json(const NodeProblem& p);
NodeProblem node_problem_from_json(const nlohmann::json& j);
NodeProblem read_node_problem(const std::string& path);
void write_node_problem(const NodeProblem& p, const std::string& path);

nlohmann::json transform_map_to_json(const TransformMap& m);
TransformMap transform_map_from_json(const nlohmann::json& j);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace ume
